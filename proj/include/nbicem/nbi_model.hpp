#pragma once

#include <vector>

#include "nbicem/signal_model.hpp"
#include "nbicem/system_config.hpp"
#include "nbicem/types.hpp"

namespace nbicem {

/// Ground truth for one narrowband-interference realization.
///
/// `tone_values` holds the K tone coefficients on `tone_support` (unitary
/// frequency domain). `block_sparse` is the same signal after the fractional
/// frequency offset spreads each tone across neighboring bins; `shifted` is
/// its value one block later (a pure phase rotation, Delta l = N samples),
/// and `differential` = block_sparse - shifted is what the differential
/// measurement exposes.
struct NbiGroundTruth {
  std::vector<int> tone_support;  // ascending, size K
  VecXc tone_values;              // length N, nonzero exactly on tone_support
  VecXc block_sparse;             // e_B
  VecXc shifted;                  // e_BX = exp(j*2*pi*alpha) * e_B
  VecXc differential;             // e_B - e_BX = (1 - exp(j*2*pi*alpha)) * e_B
  double freq_offset = 0.0;
  int block_distance = 0;         // samples between the two observation windows
};

/// K tone positions uniform without replacement, coefficients
/// CN(0, cfg.tone_variance()). Returns (support ascending, length-N vector).
std::pair<std::vector<int>, VecXc> generate_tones(const SystemConfig& cfg,
                                                  Rng& rng);

/// F_N^H * diag{exp(j*2*pi*alpha*n/N)} * F_N applied to `tones`, computed as
/// transform -> pointwise phase -> inverse transform (never a dense product).
/// alpha == 0 returns the input unchanged. Energy is preserved exactly.
VecXc apply_frequency_offset(const VecXc& tones, double alpha);

/// Last g rows of the unitary IDFT applied to a frequency-domain vector: the
/// time samples the IBI-free measurement window sees. Pass the CP-aligned
/// vector for the prefix window and the shifted vector for the block tail.
VecXc nbi_time_domain(const VecXc& freq_vec, int g);

/// Full ground-truth assembly for one frame at distance N between windows.
NbiGroundTruth make_ground_truth(const SystemConfig& cfg, Rng& rng);

/// Same, but with the support and coefficient vector supplied (used for
/// matched instances across antennas and for noiseless tests that set tone
/// power directly).
NbiGroundTruth make_ground_truth_from(std::vector<int> support, VecXc tones,
                                      double freq_offset, int n_subcarriers);

/// Time-domain NBI across a whole frame, consistent with the ground truth:
/// the CP samples come from e_B (last V IDFT rows), the block samples from
/// e_BX (all N IDFT rows), so the DFT of the block NBI is exactly e_BX.
NbiTimeSamples nbi_frame_samples(const NbiGroundTruth& gt,
                                 const SystemConfig& cfg);

}  // namespace nbicem
