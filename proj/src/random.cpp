#include "nbicem/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nbicem {

std::vector<int> sample_without_replacement(Rng& rng, int n, int k) {
  if (k < 0 || k > n)
    throw std::invalid_argument("sample_without_replacement: need 0 <= k <= n");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nbicem
