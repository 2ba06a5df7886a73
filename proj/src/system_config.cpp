#include "nbicem/system_config.hpp"

#include <stdexcept>
#include <string>

namespace nbicem {

namespace {
[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("SystemConfig: " + what);
}
}  // namespace

void SystemConfig::validate() const {
  if (n_subcarriers < 2) fail("n_subcarriers must be >= 2");
  if (cp_len < 1 || cp_len >= n_subcarriers)
    fail("cp_len must be in [1, n_subcarriers)");
  if (channel_len < 1 || channel_len > cp_len)
    fail("channel_len must be in [1, cp_len]");
  if (ibi_free_len != cp_len - channel_len + 1)
    fail("ibi_free_len must equal cp_len - channel_len + 1");
  if (sparsity < 0) fail("sparsity must be non-negative");
  if (sparsity > ibi_free_len) fail("sparsity must not exceed ibi_free_len");
  if (sparsity > n_subcarriers) fail("sparsity must not exceed n_subcarriers");
  if (!(freq_offset > -0.5) || !(freq_offset <= 0.5))
    fail("freq_offset must lie in (-1/2, 1/2]");
  if (noise_var < 0.0) fail("noise_var must be non-negative");
  if (subcarrier_spacing_hz <= 0.0) fail("subcarrier_spacing_hz must be positive");
}

SystemConfig SystemConfig::with_ibi_free_len(int g) const {
  SystemConfig c = *this;
  c.ibi_free_len = g;
  c.cp_len = g + channel_len - 1;
  c.validate();
  return c;
}

SystemConfig SystemConfig::with_sparsity(int k) const {
  SystemConfig c = *this;
  c.sparsity = k;
  c.validate();
  return c;
}

}  // namespace nbicem
