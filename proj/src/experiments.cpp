#include "nbicem/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "nbicem/random.hpp"

namespace nbicem {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kPostCancelFloorDb = -300.0;

SystemConfig config_for(const ExperimentSpec& spec, double sweep_value) {
  SystemConfig cfg = spec.config;
  switch (spec.sweep_axis) {
    case SweepAxis::InrDb:
      cfg.inr_db = sweep_value;
      break;
    case SweepAxis::G:
      cfg = cfg.with_ibi_free_len(static_cast<int>(std::lround(sweep_value)));
      break;
    case SweepAxis::K:
      cfg = cfg.with_sparsity(static_cast<int>(std::lround(sweep_value)));
      break;
  }
  cfg.validate();
  return cfg;
}

std::uint64_t double_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

// Realized per-antenna SNR: unit-power symbols through ||h||^2 channel gain.
double realized_snr_db(const ChannelRealization& channel, double noise_var) {
  const double gain = channel.taps.squaredNorm();
  if (gain <= 0.0 || noise_var <= 0.0) return 0.0;
  return 10.0 * std::log10(gain / noise_var);
}

bool contains_all(const std::vector<int>& haystack, const std::vector<int>& needles) {
  // Both ascending.
  return std::includes(haystack.begin(), haystack.end(), needles.begin(),
                       needles.end());
}

void append_field(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Scem: return "scem";
    case Algorithm::Rscem: return "rscem";
    case Algorithm::Sscem: return "sscem";
    case Algorithm::Sp: return "sp";
    case Algorithm::Samp: return "samp";
    case Algorithm::Oracle: return "oracle";
  }
  throw std::logic_error("unknown algorithm enum value");
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "scem") return Algorithm::Scem;
  if (name == "rscem") return Algorithm::Rscem;
  if (name == "sscem") return Algorithm::Sscem;
  if (name == "sp") return Algorithm::Sp;
  if (name == "samp") return Algorithm::Samp;
  if (name == "oracle") return Algorithm::Oracle;
  return std::nullopt;
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::InrDb: return "inr_db";
    case SweepAxis::G: return "g";
    case SweepAxis::K: return "k";
  }
  throw std::logic_error("unknown sweep axis enum value");
}

std::uint64_t instance_seed(std::uint64_t base_seed, double sweep_value,
                            int trial_index) {
  return mix_seed({base_seed, 0ULL, double_bits(sweep_value),
                   static_cast<std::uint64_t>(trial_index)});
}

std::uint64_t algorithm_seed(std::uint64_t base_seed, Algorithm algo,
                             double sweep_value, int trial_index) {
  return mix_seed({base_seed, static_cast<std::uint64_t>(algo) + 1ULL,
                   double_bits(sweep_value),
                   static_cast<std::uint64_t>(trial_index)});
}

TrialInstance make_instance(const SystemConfig& cfg, std::uint64_t seed,
                            int n_ant, const Constellation& constellation,
                            double channel_sample_rate_hz) {
  if (n_ant < 1) throw std::invalid_argument("make_instance: n_ant must be >= 1");
  Rng rng(seed);

  TrialInstance inst;
  inst.tone_support =
      sample_without_replacement(rng, cfg.n_subcarriers, cfg.sparsity);

  inst.antennas.reserve(n_ant);
  for (int t = 0; t < n_ant; ++t) {
    AntennaInstance ant;
    ant.frame = generate_frame(cfg, rng, constellation);
    ant.channel = vehicular_a_channel(rng, cfg, channel_sample_rate_hz);

    VecXc tones = VecXc::Zero(cfg.n_subcarriers);
    for (int idx : inst.tone_support)
      tones[idx] = complex_gaussian(rng, cfg.tone_variance());
    ant.nbi = make_ground_truth_from(inst.tone_support, std::move(tones),
                                     cfg.freq_offset, cfg.n_subcarriers);

    const NbiTimeSamples nbi_samples = nbi_frame_samples(ant.nbi, cfg);
    ant.rx = apply_channel(ant.frame, ant.channel, nbi_samples, cfg, rng);

    auto [p, p_x] = extract_ibi_free(ant.rx, cfg);
    ant.dp = differential_measurement(p, p_x);
    inst.antennas.push_back(std::move(ant));
  }
  return inst;
}

VecXc cancel_nbi(const VecXc& freq_rx, const VecXc& diff_estimate, double alpha) {
  if (freq_rx.size() != diff_estimate.size())
    throw std::invalid_argument("cancel_nbi: size mismatch");
  const cxd rot = std::polar(1.0, 2.0 * M_PI * alpha);
  const cxd denom = cxd(1.0, 0.0) - rot;
  if (std::abs(denom) < 1e-3)
    throw std::invalid_argument(
        "cancel_nbi: frequency offset too close to zero, the differential "
        "measurement carries no recoverable interference");
  return freq_rx - (rot / denom) * diff_estimate;
}

double crlb(const SystemConfig& cfg) {
  return 2.0 * cfg.noise_var * static_cast<double>(cfg.sparsity) /
         static_cast<double>(cfg.ibi_free_len);
}

double symbol_error_probe(const VecXc& freq_eq, const VecXc& freq_tx,
                          const Constellation& constellation) {
  if (freq_eq.size() != freq_tx.size())
    throw std::invalid_argument("symbol_error_probe: size mismatch");
  if (freq_eq.size() == 0) return 0.0;
  int errors = 0;
  for (Eigen::Index n = 0; n < freq_eq.size(); ++n)
    if (constellation.nearest(freq_eq[n]) != constellation.nearest(freq_tx[n]))
      ++errors;
  return static_cast<double>(errors) / static_cast<double>(freq_eq.size());
}

double mse_full(const VecXc& estimate, const VecXc& truth) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("mse_full: size mismatch");
  return (estimate - truth).squaredNorm() / static_cast<double>(truth.size());
}

double mse_on_support(const VecXc& estimate, const VecXc& truth,
                      const std::vector<int>& support) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("mse_on_support: size mismatch");
  double acc = 0.0;
  for (int idx : support) acc += std::norm(estimate[idx] - truth[idx]);
  return acc / static_cast<double>(truth.size());
}

TrialRecord run_trial(const ExperimentSpec& spec, Algorithm algo,
                      double sweep_value, int trial_index) {
  const SystemConfig cfg = config_for(spec, sweep_value);
  const Constellation constellation = Constellation::by_name(spec.constellation);

  const std::uint64_t inst_seed =
      instance_seed(spec.base_seed, sweep_value, trial_index);
  const int n_ant = (algo == Algorithm::Sscem) ? spec.n_rx : 1;
  const TrialInstance inst = make_instance(cfg, inst_seed, n_ant, constellation,
                                           spec.channel_sample_rate_hz);
  const ObservationMatrix psi = build_observation_matrix(cfg);

  CemParams cem = spec.cem;
  cem.sparsity = cfg.sparsity;
  if (cem.epsilon <= 0.0) cem.epsilon = default_epsilon(cfg);
  BaselineParams baseline = spec.baseline;
  if (baseline.epsilon <= 0.0) baseline.epsilon = default_epsilon(cfg);

  Rng algo_rng(algorithm_seed(spec.base_seed, algo, sweep_value, trial_index));
  const VecXc& dp0 = inst.antennas.front().dp;

  const auto t0 = std::chrono::steady_clock::now();
  RecoveryResult result;
  switch (algo) {
    case Algorithm::Scem:
      result = scem(dp0, psi, cem, algo_rng);
      break;
    case Algorithm::Rscem:
      result = rscem(dp0, psi, cem, algo_rng);
      break;
    case Algorithm::Sscem: {
      MeasurementSet meas;
      meas.noise_var_diff = 2.0 * cfg.noise_var;
      for (const AntennaInstance& ant : inst.antennas) {
        meas.vectors.push_back(ant.dp);
        meas.snrs_db.push_back(realized_snr_db(ant.channel, cfg.noise_var));
      }
      result = sscem(meas, psi, cem, algo_rng);
      break;
    }
    case Algorithm::Sp:
      result = subspace_pursuit(dp0, psi, cfg.sparsity, baseline.max_iters);
      break;
    case Algorithm::Samp:
      result = samp(dp0, psi, baseline);
      break;
    case Algorithm::Oracle:
      result = oracle_ls(dp0, psi, inst.tone_support);
      break;
  }
  const auto t1 = std::chrono::steady_clock::now();

  const NbiGroundTruth& gt0 = inst.antennas.front().nbi;
  const VecXc& est0 = result.estimate();

  TrialRecord rec;
  rec.algorithm = algorithm_name(algo);
  rec.sweep_axis = sweep_axis_name(spec.sweep_axis);
  rec.sweep_value = sweep_value;
  rec.trial = trial_index;
  rec.seed = inst_seed;
  rec.mse_full = mse_full(est0, gt0.differential);
  rec.mse_on_support = mse_on_support(est0, gt0.differential, inst.tone_support);
  rec.support_correct = contains_all(result.support, inst.tone_support);
  rec.success = rec.support_correct && rec.mse_full < 1e-3;
  rec.iterations = result.iterations;
  rec.residue = result.residue;
  rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();

  const cxd rot = std::polar(1.0, 2.0 * M_PI * cfg.freq_offset);
  const double shifted_energy = gt0.shifted.squaredNorm();
  if (std::abs(cxd(1.0, 0.0) - rot) < 1e-3) {
    rec.post_cancel_interference_db = kNan;
  } else if (shifted_energy <= 0.0) {
    rec.post_cancel_interference_db = kPostCancelFloorDb;
  } else {
    const VecXc est_bx = (rot / (cxd(1.0, 0.0) - rot)) * est0;
    const double ratio = (gt0.shifted - est_bx).squaredNorm() / shifted_energy;
    rec.post_cancel_interference_db =
        std::max(10.0 * std::log10(std::max(ratio, 0.0)), kPostCancelFloorDb);
  }
  return rec;
}

std::vector<TrialRecord> run_sweep(const ExperimentSpec& spec,
                                   std::ostream* progress) {
  spec.config.validate();
  if (spec.n_trials < 1) throw std::invalid_argument("run_sweep: n_trials < 1");
  if (spec.algorithms.empty())
    throw std::invalid_argument("run_sweep: no algorithms selected");
  if (spec.sweep_values.empty())
    throw std::invalid_argument("run_sweep: no sweep values");

  std::vector<TrialRecord> records;
  records.reserve(spec.algorithms.size() * spec.sweep_values.size() *
                  static_cast<std::size_t>(spec.n_trials));
  for (Algorithm algo : spec.algorithms) {
    for (double value : spec.sweep_values) {
      int successes = 0;
      double mse_sum = 0.0;
      for (int trial = 0; trial < spec.n_trials; ++trial) {
        records.push_back(run_trial(spec, algo, value, trial));
        successes += records.back().success ? 1 : 0;
        mse_sum += records.back().mse_full;
      }
      if (progress != nullptr) {
        *progress << algorithm_name(algo) << " " << sweep_axis_name(spec.sweep_axis)
                  << "=" << value << ": success "
                  << static_cast<double>(successes) / spec.n_trials
                  << ", mean mse " << mse_sum / spec.n_trials << " (n="
                  << spec.n_trials << ")\n";
      }
    }
  }
  return records;
}

void write_csv(const std::vector<TrialRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "algorithm,sweep_axis,sweep_value,trial,seed,mse_full,mse_on_support,"
         "support_correct,success,iterations,residue,"
         "post_cancel_interference_db,wall_time_s\n";
  for (const TrialRecord& r : records) {
    std::string line;
    line += r.algorithm;
    line += ',';
    line += r.sweep_axis;
    line += ',';
    append_field(line, r.sweep_value);
    line += ',';
    line += std::to_string(r.trial);
    line += ',';
    line += std::to_string(r.seed);
    line += ',';
    append_field(line, r.mse_full);
    line += ',';
    append_field(line, r.mse_on_support);
    line += ',';
    line += r.support_correct ? '1' : '0';
    line += ',';
    line += r.success ? '1' : '0';
    line += ',';
    line += std::to_string(r.iterations);
    line += ',';
    append_field(line, r.residue);
    line += ',';
    append_field(line, r.post_cancel_interference_db);
    line += ',';
    append_field(line, r.wall_time_s);
    out << line << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::vector<SweepPointSummary> summarize(const std::vector<TrialRecord>& records) {
  std::vector<SweepPointSummary> out;
  auto find_bucket = [&out](const TrialRecord& r) -> SweepPointSummary& {
    for (SweepPointSummary& s : out)
      if (s.algorithm == r.algorithm && s.sweep_value == r.sweep_value) return s;
    SweepPointSummary s;
    s.algorithm = r.algorithm;
    s.sweep_value = r.sweep_value;
    out.push_back(std::move(s));
    return out.back();
  };

  // First pass: accumulate sums in the mean fields; normalize afterwards.
  std::vector<int> n_success;
  std::vector<int> n_cancel;
  for (const TrialRecord& r : records) {
    SweepPointSummary& s = find_bucket(r);
    const std::size_t i = static_cast<std::size_t>(&s - out.data());
    if (n_success.size() <= i) n_success.resize(i + 1, 0);
    if (n_cancel.size() <= i) n_cancel.resize(i + 1, 0);
    s.trials += 1;
    s.mean_mse_full += r.mse_full;
    s.mean_mse_on_support += r.mse_on_support;
    s.success_rate += r.success ? 1.0 : 0.0;
    s.mean_iterations += r.iterations;
    if (r.success) {
      s.mean_iterations_successful += r.iterations;
      n_success[i] += 1;
    }
    if (std::isfinite(r.post_cancel_interference_db)) {
      s.mean_post_cancel_db += r.post_cancel_interference_db;
      n_cancel[i] += 1;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    SweepPointSummary& s = out[i];
    const double n = static_cast<double>(s.trials);
    s.mean_mse_full /= n;
    s.mean_mse_on_support /= n;
    s.success_rate /= n;
    s.mean_iterations /= n;
    s.mean_iterations_successful =
        n_success[i] > 0 ? s.mean_iterations_successful / n_success[i] : kNan;
    s.mean_post_cancel_db =
        n_cancel[i] > 0 ? s.mean_post_cancel_db / n_cancel[i] : kNan;
  }
  return out;
}

void print_summary(const std::vector<SweepPointSummary>& summary,
                   std::ostream& os) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-8s %12s %7s %12s %12s %9s %9s %9s %11s\n",
                "algo", "sweep_value", "trials", "mse_full", "mse_support",
                "success", "iters", "iters_ok", "cancel_db");
  os << buf;
  for (const SweepPointSummary& s : summary) {
    std::snprintf(buf, sizeof(buf),
                  "%-8s %12.6g %7d %12.4e %12.4e %9.4f %9.3f %9.3f %11.2f\n",
                  s.algorithm.c_str(), s.sweep_value, s.trials, s.mean_mse_full,
                  s.mean_mse_on_support, s.success_rate, s.mean_iterations,
                  s.mean_iterations_successful, s.mean_post_cancel_db);
    os << buf;
  }
}

}  // namespace nbicem
