#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nbicem/system_config.hpp"
#include "nbicem/types.hpp"

namespace nbicem {

/// The G x N observation operator: the last G rows of the unitary IDFT
/// matrix, entries exp(j*2*pi*(N-G+m)*n/N)/sqrt(N). It maps a frequency-
/// domain vector to the time samples seen in the IBI-free window; every
/// column has l2 norm sqrt(G/N).
class ObservationMatrix {
 public:
  ObservationMatrix(int n_subcarriers, int ibi_free_len);

  int n() const { return static_cast<int>(m_.cols()); }
  int g() const { return static_cast<int>(m_.rows()); }
  const MatXc& entries() const { return m_; }

  /// Columns gathered for a support set (G x |support|).
  MatXc columns(std::span<const int> support) const;

 private:
  MatXc m_;
};

ObservationMatrix build_observation_matrix(const SystemConfig& cfg);

/// Delta p = p - p_x. The cyclic data and channel contributions cancel
/// exactly; what remains is Psi * (e_B - e_BX) plus noise of per-sample
/// variance 2*sigma_w^2.
VecXc differential_measurement(const VecXc& p, const VecXc& p_x);

/// Least-squares fit of `dp` on the chosen columns.
struct LsSolution {
  VecXc estimate;  // length N, zero off the support
  double residue;  // ||dp - Psi*estimate||_2
};

/// Solves min ||dp - Psi_support * v||_2. Returns nullopt when the gathered
/// submatrix is numerically rank-deficient (diagonal condition estimate of
/// the pivoted QR above 1e12); throws on malformed supports (out-of-range or
/// duplicate indices, or |support| > G).
std::optional<LsSolution> least_squares_on_support(const VecXc& dp,
                                                   const ObservationMatrix& psi,
                                                   std::span<const int> support);

/// Support-sized view of the same solve: coefficients only on the support.
/// Cheaper inner-loop form; `ok == false` marks rank deficiency.
struct CompactLs {
  VecXc coeffs;    // length |support|
  double residue = 0.0;
  bool ok = false;
};
CompactLs least_squares_compact(const VecXc& dp, const ObservationMatrix& psi,
                                std::span<const int> support);

/// ||dp - Psi * candidate||_2 for a full-length candidate vector.
double residue_norm(const VecXc& dp, const ObservationMatrix& psi,
                    const VecXc& candidate);

/// Measurements from N_R receive antennas plus their SNRs (one shared
/// narrowband interferer support across antennas).
struct MeasurementSet {
  std::vector<VecXc> vectors;   // each length G
  std::vector<double> snrs_db;  // one per antenna
  double noise_var_diff = 0.0;  // 2*sigma_w^2
};

/// Default halting threshold: the expected noise norm in the differential
/// measurement, E||dw||_2^2 = 2*sigma_w^2*G, inflated by 10% so the true
/// support's residue clears it with margin.
double default_epsilon(const SystemConfig& cfg);

}  // namespace nbicem
