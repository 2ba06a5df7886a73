// Command-line front end: Monte Carlo sweeps over INR, window length or tone
// count, plus a single-frame demo that walks one recovery end to end.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nbicem/config_file.hpp"
#include "nbicem/experiments.hpp"
#include "nbicem/random.hpp"

namespace {

using namespace nbicem;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int trials = 0;
  int n_rx = 0;
  std::vector<std::string> algos;
  std::vector<double> values;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* rx_opt = nullptr;
  CLI::Option* algos_opt = nullptr;
  CLI::Option* values_opt = nullptr;
};

void attach_common(CLI::App* cmd, CommonFlags& f, bool with_values) {
  cmd->add_option("--config", f.config_path,
                  "key=value config file applied before other flags");
  cmd->add_option("--out", f.out_path, "write per-trial records to this CSV");
  f.seed_opt = cmd->add_option("--seed", f.seed, "base seed for the run");
  f.trials_opt = cmd->add_option("--trials", f.trials, "trials per sweep point");
  f.rx_opt = cmd->add_option("--rx", f.n_rx, "receive antennas (sscem only)");
  f.algos_opt = cmd->add_option("--algos", f.algos,
                                "comma list of scem,rscem,sscem,sp,samp,oracle")
                    ->delimiter(',');
  if (with_values) {
    f.values_opt = cmd->add_option("--values", f.values,
                                   "comma list of sweep values")
                       ->delimiter(',');
  }
}

int apply_flags(ExperimentSpec& spec, const CommonFlags& f) {
  if (!f.config_path.empty()) apply_config_file(spec, f.config_path);
  if (f.seed_opt->count() > 0) spec.base_seed = f.seed;
  if (f.trials_opt->count() > 0) spec.n_trials = f.trials;
  if (f.rx_opt->count() > 0) spec.n_rx = f.n_rx;
  if (f.algos_opt->count() > 0) {
    spec.algorithms.clear();
    for (const std::string& name : f.algos) {
      const auto a = parse_algorithm(name);
      if (!a) {
        std::cerr << "unknown algorithm '" << name << "'\n";
        return 1;
      }
      spec.algorithms.push_back(*a);
    }
  }
  if (f.values_opt != nullptr && f.values_opt->count() > 0)
    spec.sweep_values = f.values;
  return 0;
}

int run_sweep_command(ExperimentSpec spec, const CommonFlags& f) {
  if (const int rc = apply_flags(spec, f); rc != 0) return rc;
  const std::vector<TrialRecord> records = run_sweep(spec, &std::cout);
  std::cout << "\n";
  print_summary(summarize(records), std::cout);
  if (!f.out_path.empty()) {
    write_csv(records, f.out_path);
    std::cout << "\nwrote " << records.size() << " records to " << f.out_path
              << "\n";
  }
  return 0;
}

void print_support(const char* label, const std::vector<int>& s) {
  std::cout << label;
  for (std::size_t i = 0; i < s.size(); ++i)
    std::cout << (i == 0 ? " " : ", ") << s[i];
  std::cout << "\n";
}

int run_demo(ExperimentSpec spec, const CommonFlags& f,
             const std::string& algo_name) {
  if (const int rc = apply_flags(spec, f); rc != 0) return rc;
  const auto algo = parse_algorithm(algo_name);
  if (!algo) {
    std::cerr << "unknown algorithm '" << algo_name << "'\n";
    return 1;
  }

  SystemConfig cfg = spec.config;
  cfg.validate();
  const Constellation constellation = Constellation::by_name(spec.constellation);
  const int n_ant = (*algo == Algorithm::Sscem) ? spec.n_rx : 1;
  const std::uint64_t iseed = instance_seed(spec.base_seed, cfg.inr_db, 0);
  const TrialInstance inst =
      make_instance(cfg, iseed, n_ant, constellation, spec.channel_sample_rate_hz);
  const ObservationMatrix psi = build_observation_matrix(cfg);

  CemParams cem = spec.cem;
  cem.sparsity = cfg.sparsity;
  if (cem.epsilon <= 0.0) cem.epsilon = default_epsilon(cfg);
  BaselineParams baseline = spec.baseline;
  if (baseline.epsilon <= 0.0) baseline.epsilon = default_epsilon(cfg);

  Rng rng(algorithm_seed(spec.base_seed, *algo, cfg.inr_db, 0));
  const AntennaInstance& ant = inst.antennas.front();
  RecoveryResult res;
  switch (*algo) {
    case Algorithm::Scem: res = scem(ant.dp, psi, cem, rng); break;
    case Algorithm::Rscem: res = rscem(ant.dp, psi, cem, rng); break;
    case Algorithm::Sscem: {
      MeasurementSet meas;
      meas.noise_var_diff = 2.0 * cfg.noise_var;
      for (const AntennaInstance& a : inst.antennas) {
        meas.vectors.push_back(a.dp);
        meas.snrs_db.push_back(
            10.0 * std::log10(a.channel.taps.squaredNorm() / cfg.noise_var));
      }
      res = sscem(meas, psi, cem, rng);
      break;
    }
    case Algorithm::Sp:
      res = subspace_pursuit(ant.dp, psi, cfg.sparsity, baseline.max_iters);
      break;
    case Algorithm::Samp: res = samp(ant.dp, psi, baseline); break;
    case Algorithm::Oracle: res = oracle_ls(ant.dp, psi, inst.tone_support); break;
  }

  std::cout << "one frame, N=" << cfg.n_subcarriers << " V=" << cfg.cp_len
            << " L=" << cfg.channel_len << " G=" << cfg.ibi_free_len
            << " K=" << cfg.sparsity << " alpha=" << cfg.freq_offset
            << " INR=" << cfg.inr_db << " dB, algorithm " << algo_name << "\n";
  print_support("true tone bins:     ", inst.tone_support);
  print_support("recovered support:  ", res.support);
  std::cout << "residue " << res.residue << " vs threshold " << cem.epsilon
            << ", iterations " << res.iterations
            << (res.converged ? " (converged)" : " (iteration cap)") << "\n";
  std::cout << "mse_full " << mse_full(res.estimate(), ant.nbi.differential)
            << ", mse_on_support "
            << mse_on_support(res.estimate(), ant.nbi.differential,
                              inst.tone_support)
            << ", genie-ls floor " << crlb(cfg) << "\n";

  const VecXc h = channel_frequency_response(ant.channel, cfg);
  const VecXc eq_before = ant.rx.freq_rx.array() / h.array();
  std::cout << "symbol errors with interference: "
            << symbol_error_probe(eq_before, ant.frame.freq_data, constellation)
            << "\n";
  try {
    const VecXc cancelled =
        cancel_nbi(ant.rx.freq_rx, res.estimate(), cfg.freq_offset);
    const VecXc eq_after = cancelled.array() / h.array();
    const cxd rot = std::polar(1.0, 2.0 * M_PI * cfg.freq_offset);
    const VecXc est_bx = (rot / (cxd(1.0, 0.0) - rot)) * res.estimate();
    const double ratio =
        (ant.nbi.shifted - est_bx).squaredNorm() / ant.nbi.shifted.squaredNorm();
    std::cout << "symbol errors after cancellation: "
              << symbol_error_probe(eq_after, ant.frame.freq_data, constellation)
              << "\nresidual interference "
              << 10.0 * std::log10(std::max(ratio, 1e-30)) << " dB\n";
  } catch (const std::invalid_argument& e) {
    std::cout << "cancellation skipped: " << e.what() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Cross-entropy narrowband-interference recovery for CP-OFDM: Monte "
      "Carlo sweeps and a single-frame demo"};
  app.require_subcommand(1);

  CLI::App* inr = app.add_subcommand(
      "sweep-inr", "sweep the per-tone interference-to-noise ratio (dB)");
  CLI::App* g = app.add_subcommand(
      "sweep-g", "sweep the interference-free window length G");
  CLI::App* k = app.add_subcommand("sweep-k", "sweep the tone count K");
  CLI::App* iters = app.add_subcommand(
      "iters", "iteration-count statistics vs tone count K");
  CLI::App* demo =
      app.add_subcommand("demo", "walk one frame end to end and print metrics");

  CommonFlags f_inr, f_g, f_k, f_iters, f_demo;
  attach_common(inr, f_inr, true);
  attach_common(g, f_g, true);
  attach_common(k, f_k, true);
  attach_common(iters, f_iters, true);
  attach_common(demo, f_demo, false);
  std::string demo_algo = "scem";
  demo->add_option("--algo", demo_algo, "algorithm for the demo (default scem)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (inr->parsed()) {
      ExperimentSpec spec;
      spec.sweep_axis = SweepAxis::InrDb;
      spec.sweep_values = {5, 10, 15, 20, 25, 30};
      return run_sweep_command(std::move(spec), f_inr);
    }
    if (g->parsed()) {
      ExperimentSpec spec;
      spec.sweep_axis = SweepAxis::G;
      spec.sweep_values = {20, 36, 52, 68};
      return run_sweep_command(std::move(spec), f_g);
    }
    if (k->parsed()) {
      ExperimentSpec spec;
      spec.sweep_axis = SweepAxis::K;
      spec.sweep_values = {2, 7, 13};
      return run_sweep_command(std::move(spec), f_k);
    }
    if (iters->parsed()) {
      ExperimentSpec spec;
      spec.sweep_axis = SweepAxis::K;
      spec.sweep_values = {2, 7, 13};
      spec.algorithms = {Algorithm::Scem, Algorithm::Rscem, Algorithm::Sscem};
      return run_sweep_command(std::move(spec), f_iters);
    }
    if (demo->parsed()) {
      return run_demo(ExperimentSpec{}, f_demo, demo_algo);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
