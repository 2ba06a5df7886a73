#include "nbicem/config_file.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nbicem {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& origin, int line_no,
                       const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& origin, int line_no,
                    const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    fail(origin, line_no, key + ": cannot parse '" + value + "' as a number");
  }
  if (pos != value.size())
    fail(origin, line_no, key + ": trailing characters in '" + value + "'");
  return v;
}

long long parse_int(const std::string& origin, int line_no,
                    const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    fail(origin, line_no, key + ": cannot parse '" + value + "' as an integer");
  }
  if (pos != value.size())
    fail(origin, line_no, key + ": trailing characters in '" + value + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& origin, int line_no,
                         const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    fail(origin, line_no,
         key + ": cannot parse '" + value + "' as an unsigned integer");
  }
  if (pos != value.size())
    fail(origin, line_no, key + ": trailing characters in '" + value + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

}  // namespace

void apply_config_text(ExperimentSpec& spec, const std::string& text,
                       const std::string& origin) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, line_no, "expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "empty key");

    SystemConfig& cfg = spec.config;
    if (key == "n_subcarriers") {
      cfg.n_subcarriers = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "cp_len") {
      cfg.cp_len = static_cast<int>(parse_int(origin, line_no, key, value));
      cfg.ibi_free_len = cfg.cp_len - cfg.channel_len + 1;
    } else if (key == "channel_len") {
      cfg.channel_len = static_cast<int>(parse_int(origin, line_no, key, value));
      cfg.ibi_free_len = cfg.cp_len - cfg.channel_len + 1;
    } else if (key == "ibi_free_len") {
      const int g = static_cast<int>(parse_int(origin, line_no, key, value));
      cfg.ibi_free_len = g;
      cfg.cp_len = g + cfg.channel_len - 1;
    } else if (key == "sparsity") {
      cfg.sparsity = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "freq_offset") {
      cfg.freq_offset = parse_double(origin, line_no, key, value);
    } else if (key == "noise_var") {
      cfg.noise_var = parse_double(origin, line_no, key, value);
    } else if (key == "inr_db") {
      cfg.inr_db = parse_double(origin, line_no, key, value);
    } else if (key == "subcarrier_spacing_hz") {
      cfg.subcarrier_spacing_hz = parse_double(origin, line_no, key, value);
    } else if (key == "n_candidates") {
      spec.cem.n_candidates = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "n_favorable") {
      spec.cem.n_favorable = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "max_iters") {
      spec.cem.max_iters = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "epsilon") {
      spec.cem.epsilon = parse_double(origin, line_no, key, value);
    } else if (key == "q_min") {
      spec.cem.q_min = parse_double(origin, line_no, key, value);
    } else if (key == "q_max") {
      spec.cem.q_max = parse_double(origin, line_no, key, value);
    } else if (key == "max_thinning_rounds") {
      spec.cem.max_thinning_rounds =
          static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "samp_step") {
      spec.baseline.samp_step = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "baseline_epsilon") {
      spec.baseline.epsilon = parse_double(origin, line_no, key, value);
    } else if (key == "baseline_max_iters") {
      spec.baseline.max_iters =
          static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "algorithms") {
      std::vector<Algorithm> algos;
      for (const std::string& name : split_commas(value)) {
        const auto a = parse_algorithm(name);
        if (!a) fail(origin, line_no, "unknown algorithm '" + name + "'");
        algos.push_back(*a);
      }
      if (algos.empty()) fail(origin, line_no, "algorithms: empty list");
      spec.algorithms = std::move(algos);
    } else if (key == "sweep_axis") {
      if (value == "inr_db") spec.sweep_axis = SweepAxis::InrDb;
      else if (value == "g") spec.sweep_axis = SweepAxis::G;
      else if (value == "k") spec.sweep_axis = SweepAxis::K;
      else fail(origin, line_no, "sweep_axis must be inr_db, g or k");
    } else if (key == "sweep_values") {
      std::vector<double> values;
      for (const std::string& item : split_commas(value))
        values.push_back(parse_double(origin, line_no, key, item));
      if (values.empty()) fail(origin, line_no, "sweep_values: empty list");
      spec.sweep_values = std::move(values);
    } else if (key == "n_trials") {
      spec.n_trials = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "n_rx") {
      spec.n_rx = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "base_seed") {
      spec.base_seed = parse_uint(origin, line_no, key, value);
    } else if (key == "channel_sample_rate_hz") {
      spec.channel_sample_rate_hz = parse_double(origin, line_no, key, value);
    } else if (key == "constellation") {
      Constellation::by_name(value);  // validates; throws std::invalid_argument
      spec.constellation = value;
    } else {
      fail(origin, line_no, "unknown key '" + key + "'");
    }
  }
}

void apply_config_file(ExperimentSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(spec, buffer.str(), path);
}

}  // namespace nbicem
