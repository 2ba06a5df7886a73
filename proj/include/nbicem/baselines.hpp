#pragma once

#include <span>

#include "nbicem/measurement.hpp"
#include "nbicem/sparse_learn.hpp"
#include "nbicem/types.hpp"

namespace nbicem {

struct BaselineParams {
  int samp_step = 1;      // stage size increment
  double epsilon = 0.0;   // residue exit threshold
  int max_iters = 100;    // refinement-pass cap (SP and SAMP)
};

/// Subspace pursuit with fixed sparsity k: initial support from the k
/// largest correlations, then expand-by-k / least-squares / prune-to-k
/// passes until the residue stops improving. Always returns |support| == k.
RecoveryResult subspace_pursuit(const VecXc& dp, const ObservationMatrix& psi,
                                int k, int max_iters = 100);

/// Sparsity-adaptive matching pursuit: stage size grows by samp_step
/// whenever a refinement pass stops improving; exits when the residue drops
/// to epsilon (converged) or the pass/stage budget runs out.
RecoveryResult samp(const VecXc& dp, const ObservationMatrix& psi,
                    const BaselineParams& params);

/// Genie-aided least squares on the true support; the empirical lower
/// reference for estimation error.
RecoveryResult oracle_ls(const VecXc& dp, const ObservationMatrix& psi,
                         std::span<const int> true_support);

/// Exhaustive minimum-residue search over all supports of size 0..k.
/// Deterministic tie-breaking (residue, size, lexicographic). Throws when
/// sum_{j<=k} C(N,j) exceeds 1e6.
RecoveryResult brute_force_oracle(const VecXc& dp, const ObservationMatrix& psi,
                                  int k);

/// Number of supports brute_force_oracle would visit (saturates at 2^63-1).
unsigned long long support_enumeration_count(int n, int k);

}  // namespace nbicem
