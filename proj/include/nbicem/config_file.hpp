#pragma once

#include <string>

#include "nbicem/experiments.hpp"

namespace nbicem {

/// Applies a flat key=value config file onto an ExperimentSpec, in file
/// order. Blank lines and lines starting with '#' are ignored; unknown keys
/// and malformed values throw std::runtime_error naming the line.
///
/// System keys: n_subcarriers, cp_len, channel_len, ibi_free_len, sparsity,
///   freq_offset, noise_var, inr_db, subcarrier_spacing_hz. Setting cp_len
///   or channel_len recomputes ibi_free_len = cp_len - channel_len + 1;
///   setting ibi_free_len adjusts cp_len instead, so the geometry invariant
///   always holds.
/// Solver keys: n_candidates, n_favorable, max_iters, epsilon, q_min, q_max,
///   max_thinning_rounds (epsilon <= 0 means "derive the default").
/// Baseline keys: samp_step, baseline_epsilon, baseline_max_iters.
/// Run keys: algorithms (comma list of scem,rscem,sscem,sp,samp,oracle),
///   sweep_axis (inr_db|g|k), sweep_values (comma list), n_trials, n_rx,
///   base_seed, channel_sample_rate_hz, constellation (qpsk|16qam|64qam).
void apply_config_file(ExperimentSpec& spec, const std::string& path);

/// Same, parsing from an already-loaded text blob (used by tests).
void apply_config_text(ExperimentSpec& spec, const std::string& text,
                       const std::string& origin = "<config>");

}  // namespace nbicem
