#pragma once

#include <vector>

#include "nbicem/measurement.hpp"
#include "nbicem/types.hpp"

namespace nbicem {

/// Per-bin Bernoulli occupancy probabilities driving candidate drawing.
struct SupportDistribution {
  VecXd probs;

  /// Constant 1/2 vector (the uninformative initial state).
  static SupportDistribution uniform(int n);
};

/// Cross-entropy solver parameters. epsilon <= 0 means "derive the default
/// from the system config at call time" in the experiment layer; the solvers
/// themselves take it literally.
struct CemParams {
  int sparsity = 13;          // K, max support size per candidate
  int n_candidates = 70;      // N_c
  int n_favorable = 15;       // N_f
  int max_iters = 15;         // I_m
  double epsilon = 0.0;       // halting residue threshold
  double q_min = 0.005;       // occupancy clamp, keeps every bin reachable
  double q_max = 0.995;
  int max_thinning_rounds = 50;

  void validate(int n_bins) const;
};

/// The N_f best candidates of one iteration, residue-sorted ascending.
struct FavorableSet {
  std::vector<std::vector<int>> supports;
  std::vector<double> residues;       // sorting key (weighted for multi-antenna)
  Eigen::MatrixXd indicators;         // N_f x N, 0/1 membership matrix
};

/// One scored candidate support.
struct Candidate {
  std::vector<int> support;  // ascending
  double residue = 0.0;
};

struct RecoveryResult {
  std::vector<int> support;           // best favorable of the final iteration
  std::vector<VecXc> estimates;       // one length-N vector per antenna
  double residue = 0.0;               // its (weighted) residue
  int iterations = 0;                 // k at exit
  bool converged = false;             // residue exit vs iteration cap
  SupportDistribution final_distribution;

  // Diagnostics.
  std::vector<double> best_residue_history;  // r_[1] per iteration
  std::vector<int> best_ever_support;
  double best_ever_residue = 0.0;

  const VecXc& estimate() const { return estimates.front(); }
};

/// Recursive Bernoulli thinning: start from all N bins and keep each bin of
/// the surviving set with its own probability until at most k remain. If
/// max_rounds passes without reaching k, falls back to the k highest-
/// probability survivors (ties by lower index). Result is ascending and
/// never larger than k.
std::vector<int> draw_candidate_support(const SupportDistribution& q, int k,
                                        Rng& rng, int max_rounds = 50);

/// Sorts candidates by (residue, support size, lexicographic support) and
/// keeps the best n_favorable. Throws if fewer candidates than n_favorable.
FavorableSet select_favorable(std::vector<Candidate> candidates, int n_favorable,
                              int n_bins);

/// Closed-form cross-entropy minimizer: q_n = column mean of the indicator
/// matrix (the fraction of favorable supports containing bin n), before
/// clamping.
VecXd ce_update_raw(const FavorableSet& fav);

/// Residue-weighted variant: q_n = sum_j lambda_j f_{j,n} / sum_j lambda_j
/// with lambda_j = mean(residues) / residue_j. Requires all residues > 0.
/// Equal residues make lambda identically 1 and recover ce_update_raw.
VecXd regularized_ce_update_raw(const FavorableSet& fav);

SupportDistribution ce_update(const FavorableSet& fav, double q_min, double q_max);
SupportDistribution regularized_ce_update(const FavorableSet& fav, double q_min,
                                          double q_max);

/// SNR-proportional antenna weights beta_t = rho_t / sum_r rho_r (linear).
std::vector<double> antenna_weights(const std::vector<double>& snrs_db);

/// Plain cross-entropy recovery on one measurement.
RecoveryResult scem(const VecXc& dp, const ObservationMatrix& psi,
                    const CemParams& params, Rng& rng);

/// Residue-weighted cross-entropy update; otherwise identical to scem.
RecoveryResult rscem(const VecXc& dp, const ObservationMatrix& psi,
                     const CemParams& params, Rng& rng);

/// Multi-antenna recovery: one shared support, per-antenna least squares,
/// candidates ranked by the SNR-weighted average residue. With one antenna
/// this is exactly scem (same draws, same trajectory).
RecoveryResult sscem(const MeasurementSet& meas, const ObservationMatrix& psi,
                     const CemParams& params, Rng& rng);

}  // namespace nbicem
