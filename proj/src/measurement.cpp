#include "nbicem/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace nbicem {

ObservationMatrix::ObservationMatrix(int n_subcarriers, int ibi_free_len) {
  const int n = n_subcarriers;
  const int g = ibi_free_len;
  if (n < 1 || g < 1 || g > n)
    throw std::invalid_argument("ObservationMatrix: need 1 <= G <= N");
  m_.resize(g, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int row = 0; row < g; ++row) {
    const int t = n - g + row;  // absolute time index within the block
    for (int col = 0; col < n; ++col) {
      const double phase = 2.0 * std::numbers::pi *
                           static_cast<double>(t) * static_cast<double>(col) /
                           static_cast<double>(n);
      m_(row, col) = cxd(std::cos(phase), std::sin(phase)) * scale;
    }
  }
}

MatXc ObservationMatrix::columns(std::span<const int> support) const {
  MatXc sub(g(), static_cast<Eigen::Index>(support.size()));
  for (size_t j = 0; j < support.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = m_.col(support[j]);
  return sub;
}

ObservationMatrix build_observation_matrix(const SystemConfig& cfg) {
  cfg.validate();
  return {cfg.n_subcarriers, cfg.ibi_free_len};
}

VecXc differential_measurement(const VecXc& p, const VecXc& p_x) {
  if (p.size() != p_x.size())
    throw std::invalid_argument("differential_measurement: length mismatch");
  return p - p_x;
}

namespace {
void check_support(std::span<const int> support, int n, int g) {
  if (static_cast<int>(support.size()) > g)
    throw std::invalid_argument("least squares: |support| exceeds G");
  std::unordered_set<int> seen;
  for (int idx : support) {
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("least squares: support index out of range");
    if (!seen.insert(idx).second)
      throw std::invalid_argument("least squares: duplicate support index");
  }
}
}  // namespace

CompactLs least_squares_compact(const VecXc& dp, const ObservationMatrix& psi,
                                std::span<const int> support) {
  if (dp.size() != psi.g())
    throw std::invalid_argument("least squares: measurement length != G");
  check_support(support, psi.n(), psi.g());

  CompactLs out;
  const int k = static_cast<int>(support.size());
  if (k == 0) {
    out.coeffs = VecXc(0);
    out.residue = dp.norm();
    out.ok = true;
    return out;
  }

  MatXc a = psi.columns(support);
  Eigen::ColPivHouseholderQR<MatXc> qr(a);
  const auto& rdiag = qr.matrixR().diagonal();
  const double rmax = std::abs(rdiag(0));
  const double rmin = std::abs(rdiag(k - 1));
  if (!(rmin > 0.0) || rmax / rmin > 1e12) {
    out.ok = false;  // numerically rank deficient; caller decides what to do
    return out;
  }
  out.coeffs = qr.solve(dp);
  out.residue = (dp - a * out.coeffs).norm();
  out.ok = true;
  return out;
}

std::optional<LsSolution> least_squares_on_support(const VecXc& dp,
                                                   const ObservationMatrix& psi,
                                                   std::span<const int> support) {
  CompactLs c = least_squares_compact(dp, psi, support);
  if (!c.ok) return std::nullopt;
  LsSolution s;
  s.estimate = VecXc::Zero(psi.n());
  for (size_t j = 0; j < support.size(); ++j)
    s.estimate[support[j]] = c.coeffs[static_cast<Eigen::Index>(j)];
  s.residue = c.residue;
  return s;
}

double residue_norm(const VecXc& dp, const ObservationMatrix& psi,
                    const VecXc& candidate) {
  if (dp.size() != psi.g() || candidate.size() != psi.n())
    throw std::invalid_argument("residue_norm: size mismatch");
  return (dp - psi.entries() * candidate).norm();
}

double default_epsilon(const SystemConfig& cfg) {
  return 1.1 * std::sqrt(2.0 * cfg.noise_var * cfg.ibi_free_len);
}

}  // namespace nbicem
