#pragma once

#include <cmath>

namespace nbicem {

/// Dimensions and noise/interference levels of one CP-OFDM link.
///
/// Geometry: a length-N OFDM block is preceded by a cyclic prefix of V
/// samples (the last V samples of the block). A length-L multipath channel
/// smears the previous block's tail into the first L-1 CP samples only, so
/// the last G = V - L + 1 CP samples are inter-block-interference free.
struct SystemConfig {
  int n_subcarriers = 600;     // N, block length
  int cp_len = 144;            // V, cyclic prefix length
  int channel_len = 77;        // L, channel impulse response length
  int ibi_free_len = 68;       // G = V - L + 1
  int sparsity = 13;           // K, number of interfering tones
  double freq_offset = 0.20;   // alpha, in subcarrier spacings, (-1/2, 1/2]
  double noise_var = 1e-6;     // total variance of one complex AWGN sample
  double inr_db = 15.0;        // per-tone interference-to-noise ratio, dB
  double subcarrier_spacing_hz = 15e3;

  double inr_linear() const { return std::pow(10.0, inr_db / 10.0); }

  /// Per-tone coefficient variance sigma_e^2 = gamma * sigma_w^2: the INR is
  /// the ratio of one tone's frequency-domain coefficient variance to the
  /// per-sample noise variance.
  double tone_variance() const { return inr_linear() * noise_var; }

  /// Throws std::invalid_argument when any structural invariant is violated.
  void validate() const;

  /// Copy with the IBI-free length changed to g; the CP shrinks or grows so
  /// that G = V - L + 1 keeps holding.
  SystemConfig with_ibi_free_len(int g) const;

  /// Copy with a different tone count.
  SystemConfig with_sparsity(int k) const;
};

}  // namespace nbicem
