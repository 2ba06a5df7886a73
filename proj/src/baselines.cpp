#include "nbicem/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nbicem {

namespace {

// Indices of the m largest |values|, ties by lower index, excluding anything
// already in `taken` (pass empty for no exclusion). Returned ascending.
std::vector<int> top_magnitude_indices(const VecXc& values, int m,
                                       const std::vector<int>& taken) {
  const int n = static_cast<int>(values.size());
  std::vector<char> used(n, 0);
  for (int idx : taken) used[idx] = 1;
  std::vector<int> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i)
    if (!used[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(values[a]) > std::abs(values[b]);
  });
  order.resize(std::min<size_t>(order.size(), static_cast<size_t>(m)));
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<int> merge_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RecoveryResult make_result(const VecXc& dp, const ObservationMatrix& psi,
                           std::vector<int> support, int iterations,
                           bool converged) {
  RecoveryResult r;
  auto sol = least_squares_on_support(dp, psi, support);
  r.support = std::move(support);
  if (sol) {
    r.estimates.push_back(std::move(sol->estimate));
    r.residue = sol->residue;
  } else {
    r.estimates.push_back(VecXc::Zero(psi.n()));
    r.residue = dp.norm();
  }
  r.iterations = iterations;
  r.converged = converged;
  r.best_ever_support = r.support;
  r.best_ever_residue = r.residue;
  return r;
}

}  // namespace

RecoveryResult subspace_pursuit(const VecXc& dp, const ObservationMatrix& psi,
                                int k, int max_iters) {
  if (k < 1 || k > psi.g())
    throw std::invalid_argument("subspace_pursuit: need 1 <= k <= G");
  if (dp.size() != psi.g())
    throw std::invalid_argument("subspace_pursuit: measurement length != G");

  VecXc corr = psi.entries().adjoint() * dp;
  std::vector<int> support = top_magnitude_indices(corr, k, {});
  CompactLs ls = least_squares_compact(dp, psi, support);
  double residue = ls.ok ? ls.residue : dp.norm();
  VecXc resid_vec = ls.ok ? VecXc(dp - psi.columns(support) * ls.coeffs) : dp;

  int iterations = 0;
  bool converged = false;
  while (iterations < max_iters) {
    ++iterations;
    // Expand by up to k new columns, keeping the gather overdetermined.
    const int room = psi.g() - static_cast<int>(support.size());
    if (room <= 0) break;
    VecXc resid_corr = psi.entries().adjoint() * resid_vec;
    std::vector<int> extra =
        top_magnitude_indices(resid_corr, std::min(k, room), support);
    std::vector<int> expanded = merge_sorted(support, extra);

    CompactLs wide = least_squares_compact(dp, psi, expanded);
    if (!wide.ok) break;
    // Prune back to the k largest coefficients.
    VecXc dense = VecXc::Zero(psi.n());
    for (size_t j = 0; j < expanded.size(); ++j)
      dense[expanded[j]] = wide.coeffs[static_cast<Eigen::Index>(j)];
    std::vector<int> pruned = top_magnitude_indices(dense, k, {});

    CompactLs refit = least_squares_compact(dp, psi, pruned);
    if (!refit.ok) break;
    if (refit.residue < residue) {
      support = std::move(pruned);
      residue = refit.residue;
      resid_vec = dp - psi.columns(support) * refit.coeffs;
      converged = false;
    } else {
      converged = true;  // residue stopped improving: normal exit
      break;
    }
  }
  return make_result(dp, psi, std::move(support), iterations, converged);
}

RecoveryResult samp(const VecXc& dp, const ObservationMatrix& psi,
                    const BaselineParams& params) {
  if (params.samp_step < 1)
    throw std::invalid_argument("samp: step must be >= 1");
  if (dp.size() != psi.g())
    throw std::invalid_argument("samp: measurement length != G");

  std::vector<int> finalist;  // current stage's support
  double residue = dp.norm();
  VecXc resid_vec = dp;
  int stage_size = params.samp_step;
  int iterations = 0;
  bool converged = residue <= params.epsilon;  // zero-ish measurement

  while (!converged && iterations < params.max_iters) {
    if (stage_size > psi.g()) break;  // cannot grow further
    ++iterations;

    VecXc resid_corr = psi.entries().adjoint() * resid_vec;
    std::vector<int> picks =
        top_magnitude_indices(resid_corr, stage_size, finalist);
    std::vector<int> merged = merge_sorted(finalist, picks);
    if (static_cast<int>(merged.size()) > psi.g()) merged.resize(psi.g());

    CompactLs wide = least_squares_compact(dp, psi, merged);
    if (!wide.ok) break;
    VecXc dense = VecXc::Zero(psi.n());
    for (size_t j = 0; j < merged.size(); ++j)
      dense[merged[j]] = wide.coeffs[static_cast<Eigen::Index>(j)];
    std::vector<int> pruned = top_magnitude_indices(dense, stage_size, {});

    CompactLs refit = least_squares_compact(dp, psi, pruned);
    if (!refit.ok) break;

    if (refit.residue <= params.epsilon) {
      finalist = std::move(pruned);
      residue = refit.residue;
      converged = true;
      break;
    }
    if (refit.residue >= residue) {
      stage_size += params.samp_step;  // stage switch, keep previous state
    } else {
      finalist = std::move(pruned);
      residue = refit.residue;
      resid_vec = dp - psi.columns(finalist) * refit.coeffs;
    }
  }
  return make_result(dp, psi, std::move(finalist), iterations, converged);
}

RecoveryResult oracle_ls(const VecXc& dp, const ObservationMatrix& psi,
                         std::span<const int> true_support) {
  std::vector<int> support(true_support.begin(), true_support.end());
  std::sort(support.begin(), support.end());
  return make_result(dp, psi, std::move(support), 0, true);
}

unsigned long long support_enumeration_count(int n, int k) {
  constexpr unsigned long long kSat = std::numeric_limits<long long>::max();
  unsigned long long total = 0;
  for (int j = 0; j <= k; ++j) {
    // C(n, j) with overflow saturation.
    unsigned long long c = 1;
    for (int i = 1; i <= j; ++i) {
      if (c > kSat / static_cast<unsigned long long>(n - i + 1)) return kSat;
      c = c * static_cast<unsigned long long>(n - i + 1) / static_cast<unsigned long long>(i);
    }
    if (total > kSat - c) return kSat;
    total += c;
  }
  return total;
}

RecoveryResult brute_force_oracle(const VecXc& dp, const ObservationMatrix& psi,
                                  int k) {
  const int n = psi.n();
  if (k < 0 || k > psi.g())
    throw std::invalid_argument("brute_force_oracle: need 0 <= k <= G");
  if (support_enumeration_count(n, k) > 1000000ULL)
    throw std::invalid_argument("brute_force_oracle: search space exceeds 1e6 supports");

  std::vector<int> best_support;
  double best_residue = dp.norm();  // empty support
  // Sizes ascending, lexicographic within a size: the first minimum found
  // under strict < is automatically the tie-break winner.
  std::vector<int> comb;
  for (int size = 1; size <= k; ++size) {
    comb.resize(size);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      CompactLs ls = least_squares_compact(dp, psi, comb);
      if (ls.ok && ls.residue < best_residue) {
        best_residue = ls.residue;
        best_support = comb;
      }
      // Next combination (odometer).
      int pos = size - 1;
      while (pos >= 0 && comb[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++comb[pos];
      for (int q = pos + 1; q < size; ++q) comb[q] = comb[q - 1] + 1;
    }
  }
  return make_result(dp, psi, std::move(best_support), 0, true);
}

}  // namespace nbicem
