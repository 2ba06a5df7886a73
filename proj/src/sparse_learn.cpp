#include "nbicem/sparse_learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nbicem {

SupportDistribution SupportDistribution::uniform(int n) {
  SupportDistribution d;
  d.probs = VecXd::Constant(n, 0.5);
  return d;
}

void CemParams::validate(int n_bins) const {
  if (sparsity < 1) throw std::invalid_argument("CemParams: sparsity must be >= 1");
  if (sparsity > n_bins)
    throw std::invalid_argument("CemParams: sparsity exceeds bin count");
  if (n_candidates < 1) throw std::invalid_argument("CemParams: n_candidates must be >= 1");
  if (n_favorable < 1 || n_favorable > n_candidates)
    throw std::invalid_argument("CemParams: need 1 <= n_favorable <= n_candidates");
  if (max_iters < 1) throw std::invalid_argument("CemParams: max_iters must be >= 1");
  if (epsilon < 0.0) throw std::invalid_argument("CemParams: epsilon must be >= 0");
  if (!(q_min > 0.0 && q_min < q_max && q_max < 1.0))
    throw std::invalid_argument("CemParams: need 0 < q_min < q_max < 1");
  if (max_thinning_rounds < 1)
    throw std::invalid_argument("CemParams: max_thinning_rounds must be >= 1");
}

std::vector<int> draw_candidate_support(const SupportDistribution& q, int k,
                                        Rng& rng, int max_rounds) {
  const int n = static_cast<int>(q.probs.size());
  if (k < 0) throw std::invalid_argument("draw_candidate_support: k must be >= 0");
  if (k == 0) return {};

  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  int rounds = 0;
  std::vector<int> next;
  while (static_cast<int>(cur.size()) > k) {
    if (++rounds > max_rounds) {
      // Thinning stalled; keep the k most probable survivors, ties by index.
      std::stable_sort(cur.begin(), cur.end(), [&](int a, int b) {
        return q.probs[a] > q.probs[b];
      });
      cur.resize(k);
      std::sort(cur.begin(), cur.end());
      break;
    }
    next.clear();
    for (int idx : cur)
      if (u(rng) < q.probs[idx]) next.push_back(idx);
    cur.swap(next);
  }
  return cur;  // ascending by construction
}

namespace {
bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.residue != b.residue) return a.residue < b.residue;
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  return a.support < b.support;  // lexicographic
}
}  // namespace

FavorableSet select_favorable(std::vector<Candidate> candidates, int n_favorable,
                              int n_bins) {
  if (static_cast<int>(candidates.size()) < n_favorable)
    throw std::invalid_argument("select_favorable: fewer candidates than n_favorable");
  std::sort(candidates.begin(), candidates.end(), candidate_less);

  FavorableSet fav;
  fav.supports.reserve(n_favorable);
  fav.residues.reserve(n_favorable);
  fav.indicators = Eigen::MatrixXd::Zero(n_favorable, n_bins);
  for (int j = 0; j < n_favorable; ++j) {
    fav.supports.push_back(std::move(candidates[j].support));
    fav.residues.push_back(candidates[j].residue);
    for (int idx : fav.supports.back()) fav.indicators(j, idx) = 1.0;
  }
  return fav;
}

VecXd ce_update_raw(const FavorableSet& fav) {
  if (fav.supports.empty())
    throw std::invalid_argument("ce_update: favorable set is empty");
  return fav.indicators.colwise().mean().transpose();
}

VecXd regularized_ce_update_raw(const FavorableSet& fav) {
  const int nf = static_cast<int>(fav.supports.size());
  if (nf == 0) throw std::invalid_argument("regularized_ce_update: favorable set is empty");
  double mean_res = 0.0;
  for (double r : fav.residues) {
    if (!(r > 0.0))
      throw std::invalid_argument("regularized_ce_update: residues must be positive");
    mean_res += r;
  }
  mean_res /= nf;

  VecXd lambda(nf);
  for (int j = 0; j < nf; ++j) lambda[j] = mean_res / fav.residues[j];
  const double lambda_sum = lambda.sum();
  return (fav.indicators.transpose() * lambda) / lambda_sum;
}

namespace {
SupportDistribution clamp_distribution(VecXd raw, double q_min, double q_max) {
  SupportDistribution d;
  d.probs = std::move(raw);
  for (Eigen::Index i = 0; i < d.probs.size(); ++i)
    d.probs[i] = std::clamp(d.probs[i], q_min, q_max);
  return d;
}
}  // namespace

SupportDistribution ce_update(const FavorableSet& fav, double q_min, double q_max) {
  return clamp_distribution(ce_update_raw(fav), q_min, q_max);
}

SupportDistribution regularized_ce_update(const FavorableSet& fav, double q_min,
                                          double q_max) {
  return clamp_distribution(regularized_ce_update_raw(fav), q_min, q_max);
}

std::vector<double> antenna_weights(const std::vector<double>& snrs_db) {
  if (snrs_db.empty())
    throw std::invalid_argument("antenna_weights: need at least one antenna");
  std::vector<double> w(snrs_db.size());
  double total = 0.0;
  for (size_t t = 0; t < snrs_db.size(); ++t) {
    w[t] = std::pow(10.0, snrs_db[t] / 10.0);
    total += w[t];
  }
  for (double& x : w) x /= total;
  return w;
}

namespace {

// Shared solver core. scem == rscem with the plain update; scem == sscem
// with one antenna. Keeping one loop guarantees those reductions are exact,
// including random-stream consumption.
RecoveryResult run_cem(const std::vector<const VecXc*>& dps,
                       const std::vector<double>& betas,
                       const ObservationMatrix& psi, const CemParams& params,
                       Rng& rng, bool regularized) {
  const int n = psi.n();
  const int n_ant = static_cast<int>(dps.size());
  params.validate(n);
  if (params.sparsity > psi.g())
    throw std::invalid_argument("cem: sparsity exceeds measurement length");
  for (const VecXc* dp : dps)
    if (dp->size() != psi.g())
      throw std::invalid_argument("cem: measurement length != G");

  SupportDistribution q = SupportDistribution::uniform(n);
  RecoveryResult res;
  res.best_ever_residue = std::numeric_limits<double>::infinity();

  // Weighted residue of one support across antennas; nullopt on a
  // rank-deficient gather.
  const auto score_support = [&](const std::vector<int>& sup)
      -> std::optional<double> {
    double acc = 0.0;
    for (int t = 0; t < n_ant; ++t) {
      CompactLs ls = least_squares_compact(*dps[t], psi, sup);
      if (!ls.ok) return std::nullopt;
      acc += betas[t] * ls.residue;
    }
    return acc;
  };

  int k = 0;
  FavorableSet fav;
  while (true) {
    std::vector<Candidate> cands;
    cands.reserve(params.n_candidates);
    int retries = params.n_candidates;  // shared redraw budget per iteration
    for (int j = 0; j < params.n_candidates; ++j) {
      std::vector<int> sup =
          draw_candidate_support(q, params.sparsity, rng, params.max_thinning_rounds);
      std::optional<double> score = score_support(sup);
      while (!score && retries-- > 0) {
        sup = draw_candidate_support(q, params.sparsity, rng,
                                     params.max_thinning_rounds);
        score = score_support(sup);
      }
      if (!score) {
        // Retry budget exhausted: fall back to the always-solvable empty
        // support rather than poisoning the sort.
        sup.clear();
        score = score_support(sup);
      }
      cands.push_back({std::move(sup), *score});
    }

    fav = select_favorable(std::move(cands), params.n_favorable, n);
    res.best_residue_history.push_back(fav.residues.front());
    if (fav.residues.front() < res.best_ever_residue) {
      res.best_ever_residue = fav.residues.front();
      res.best_ever_support = fav.supports.front();
    }

    if (regularized && !(fav.residues.front() > 0.0)) {
      // Exact fit found; the weighted update would divide by zero and the
      // halting test below fires anyway.
    } else {
      q = regularized ? regularized_ce_update(fav, params.q_min, params.q_max)
                      : ce_update(fav, params.q_min, params.q_max);
    }

    ++k;
    if (fav.residues.front() <= params.epsilon) {
      res.converged = true;
      break;
    }
    if (k > params.max_iters) {
      res.converged = false;
      break;
    }
  }

  res.iterations = k;
  res.support = fav.supports.front();
  res.residue = fav.residues.front();
  res.final_distribution = std::move(q);
  res.estimates.reserve(n_ant);
  for (int t = 0; t < n_ant; ++t) {
    auto sol = least_squares_on_support(*dps[t], psi, res.support);
    // The support survived scoring, so the gather is full rank.
    res.estimates.push_back(sol ? std::move(sol->estimate) : VecXc::Zero(n));
  }
  return res;
}

}  // namespace

RecoveryResult scem(const VecXc& dp, const ObservationMatrix& psi,
                    const CemParams& params, Rng& rng) {
  return run_cem({&dp}, {1.0}, psi, params, rng, /*regularized=*/false);
}

RecoveryResult rscem(const VecXc& dp, const ObservationMatrix& psi,
                     const CemParams& params, Rng& rng) {
  return run_cem({&dp}, {1.0}, psi, params, rng, /*regularized=*/true);
}

RecoveryResult sscem(const MeasurementSet& meas, const ObservationMatrix& psi,
                     const CemParams& params, Rng& rng) {
  if (meas.vectors.empty())
    throw std::invalid_argument("sscem: need at least one measurement");
  if (meas.snrs_db.size() != meas.vectors.size())
    throw std::invalid_argument("sscem: one SNR per measurement required");
  std::vector<const VecXc*> dps;
  dps.reserve(meas.vectors.size());
  for (const VecXc& v : meas.vectors) dps.push_back(&v);
  return run_cem(dps, antenna_weights(meas.snrs_db), psi, params, rng,
                 /*regularized=*/false);
}

}  // namespace nbicem
