#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nbicem/baselines.hpp"
#include "nbicem/constellation.hpp"
#include "nbicem/nbi_model.hpp"
#include "nbicem/signal_model.hpp"
#include "nbicem/sparse_learn.hpp"
#include "nbicem/system_config.hpp"

namespace nbicem {

enum class Algorithm { Scem, Rscem, Sscem, Sp, Samp, Oracle };
enum class SweepAxis { InrDb, G, K };

std::string algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);

/// Everything a Monte Carlo run needs. cem.epsilon/baseline.epsilon <= 0
/// mean "derive default_epsilon(config) per sweep point"; cem.sparsity and
/// the baselines' k always follow the (possibly swept) config.
struct ExperimentSpec {
  SystemConfig config;
  CemParams cem;
  BaselineParams baseline;
  std::vector<Algorithm> algorithms = {Algorithm::Scem};
  SweepAxis sweep_axis = SweepAxis::InrDb;
  std::vector<double> sweep_values = {15.0};
  int n_trials = 100;
  int n_rx = 4;                               // antennas used by sscem only
  std::uint64_t base_seed = 1u;
  double channel_sample_rate_hz = 15.36e6;    // for tap placement
  std::string constellation = "64qam";
};

/// One antenna's end-to-end signals.
struct AntennaInstance {
  OfdmFrame frame;
  ChannelRealization channel;
  NbiGroundTruth nbi;
  ReceivedFrame rx;
  VecXc dp;  // differential measurement, length G
};

/// A full simulated instance: the tone support is shared across antennas,
/// tone coefficients / channels / data / noise are independent. Antenna 0 is
/// generated first, so instances with different n_ant share it exactly.
struct TrialInstance {
  std::vector<int> tone_support;
  std::vector<AntennaInstance> antennas;
};

TrialInstance make_instance(const SystemConfig& cfg, std::uint64_t seed,
                            int n_ant, const Constellation& constellation,
                            double channel_sample_rate_hz);

struct TrialRecord {
  std::string algorithm;
  std::string sweep_axis;
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double mse_full = 0.0;
  double mse_on_support = 0.0;
  bool support_correct = false;
  bool success = false;  // support_correct && mse_full < 1e-3
  int iterations = 0;
  double residue = 0.0;
  double post_cancel_interference_db = 0.0;  // NaN when cancellation refused
  double wall_time_s = 0.0;
};

/// Seed derivation (documented in the README): a splitmix64 chain over the
/// trial tuple. The algorithm stream mixes the algorithm index; the instance
/// stream uses slot 0 instead so every algorithm sees the same instance.
std::uint64_t instance_seed(std::uint64_t base_seed, double sweep_value,
                            int trial_index);
std::uint64_t algorithm_seed(std::uint64_t base_seed, Algorithm algo,
                             double sweep_value, int trial_index);

TrialRecord run_trial(const ExperimentSpec& spec, Algorithm algo,
                      double sweep_value, int trial_index);

/// All algorithms x sweep values x trials, in deterministic order. Progress
/// notes go to `progress` when non-null (one line per sweep point).
std::vector<TrialRecord> run_sweep(const ExperimentSpec& spec,
                                   std::ostream* progress = nullptr);

void write_csv(const std::vector<TrialRecord>& records, const std::string& path);

/// Removes the recovered interference from the block's frequency-domain
/// observation: e_BX = exp(j*2*pi*a)/(1 - exp(j*2*pi*a)) * diff_estimate.
/// Throws when |1 - exp(j*2*pi*a)| < 1e-3 (the differential carries no
/// usable information near alpha == 0).
VecXc cancel_nbi(const VecXc& freq_rx, const VecXc& diff_estimate, double alpha);

/// Estimation-error floor of genie least squares: 2*sigma_w^2*K/G under the
/// 1/N mean-square normalization used throughout.
double crlb(const SystemConfig& cfg);

/// Fraction of sub-carriers whose nearest-constellation decision differs
/// from the transmitted symbols. Callers equalize first (genie zero-forcing
/// in run_trial/demo).
double symbol_error_probe(const VecXc& freq_eq, const VecXc& freq_tx,
                          const Constellation& constellation);

/// Mean-squared error helpers ((1/N)*||.||^2, optionally restricted to a
/// support).
double mse_full(const VecXc& estimate, const VecXc& truth);
double mse_on_support(const VecXc& estimate, const VecXc& truth,
                      const std::vector<int>& support);

/// Aggregates for human-readable summaries.
struct SweepPointSummary {
  std::string algorithm;
  double sweep_value = 0.0;
  int trials = 0;
  double mean_mse_full = 0.0;
  double mean_mse_on_support = 0.0;
  double success_rate = 0.0;
  double mean_iterations = 0.0;             // all trials
  double mean_iterations_successful = 0.0;  // successful trials only (NaN if none)
  double mean_post_cancel_db = 0.0;         // ignoring NaN entries
};
std::vector<SweepPointSummary> summarize(const std::vector<TrialRecord>& records);
void print_summary(const std::vector<SweepPointSummary>& summary, std::ostream& os);

}  // namespace nbicem
