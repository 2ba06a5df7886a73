#include "nbicem/nbi_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nbicem/fft.hpp"
#include "nbicem/random.hpp"

namespace nbicem {

std::pair<std::vector<int>, VecXc> generate_tones(const SystemConfig& cfg,
                                                  Rng& rng) {
  cfg.validate();
  const int n = cfg.n_subcarriers;
  std::vector<int> support = sample_without_replacement(rng, n, cfg.sparsity);
  VecXc tones = VecXc::Zero(n);
  const double var = cfg.tone_variance();
  for (int idx : support) tones[idx] = complex_gaussian(rng, var);
  return {std::move(support), std::move(tones)};
}

VecXc apply_frequency_offset(const VecXc& tones, double alpha) {
  if (!(alpha > -0.5 && alpha <= 0.5))
    throw std::invalid_argument("apply_frequency_offset: alpha outside (-1/2, 1/2]");
  if (alpha == 0.0) return tones;
  const int n = static_cast<int>(tones.size());
  UnitaryFft fft(n);
  VecXc time = fft.idft(tones);
  for (int t = 0; t < n; ++t) {
    const double phase = 2.0 * std::numbers::pi * alpha * t / n;
    time[t] *= cxd(std::cos(phase), std::sin(phase));
  }
  return fft.dft(time);
}

VecXc nbi_time_domain(const VecXc& freq_vec, int g) {
  const int n = static_cast<int>(freq_vec.size());
  if (g < 0 || g > n)
    throw std::invalid_argument("nbi_time_domain: window must satisfy 0 <= g <= N");
  return UnitaryFft(n).idft(freq_vec).tail(g);
}

NbiGroundTruth make_ground_truth_from(std::vector<int> support, VecXc tones,
                                      double freq_offset, int n_subcarriers) {
  if (tones.size() != n_subcarriers)
    throw std::invalid_argument("make_ground_truth_from: tone vector length mismatch");
  NbiGroundTruth gt;
  gt.tone_support = std::move(support);
  gt.tone_values = std::move(tones);
  gt.freq_offset = freq_offset;
  gt.block_distance = n_subcarriers;
  gt.block_sparse = apply_frequency_offset(gt.tone_values, freq_offset);
  // One block later every tone has advanced by exp(j*2*pi*(k+alpha)) and the
  // integer part is invisible, leaving a common rotation by alpha.
  const double phase = 2.0 * std::numbers::pi * freq_offset;
  const cxd rot(std::cos(phase), std::sin(phase));
  gt.shifted = rot * gt.block_sparse;
  gt.differential = (cxd(1.0, 0.0) - rot) * gt.block_sparse;
  return gt;
}

NbiGroundTruth make_ground_truth(const SystemConfig& cfg, Rng& rng) {
  auto [support, tones] = generate_tones(cfg, rng);
  return make_ground_truth_from(std::move(support), std::move(tones),
                                cfg.freq_offset, cfg.n_subcarriers);
}

NbiTimeSamples nbi_frame_samples(const NbiGroundTruth& gt,
                                 const SystemConfig& cfg) {
  if (gt.tone_values.size() != cfg.n_subcarriers)
    throw std::invalid_argument("nbi_frame_samples: ground truth/config mismatch");
  UnitaryFft fft(cfg.n_subcarriers);
  NbiTimeSamples s;
  s.cp = fft.idft(gt.block_sparse).tail(cfg.cp_len);
  s.block = fft.idft(gt.shifted);
  return s;
}

}  // namespace nbicem
