#pragma once

#include <string>
#include <vector>

#include "nbicem/types.hpp"

namespace nbicem {

/// Symbol alphabet with unit average power.
struct Constellation {
  std::string name;
  std::vector<cxd> points;

  static Constellation qpsk();
  static Constellation qam16();
  static Constellation qam64();

  /// Named lookup ("qpsk", "16qam", "64qam"); throws on unknown names.
  static Constellation by_name(const std::string& name);

  /// Index of the nearest point (Euclidean); ties resolve to the lowest
  /// index, which makes decisions deterministic.
  int nearest(cxd z) const;

  cxd draw(Rng& rng) const;
};

}  // namespace nbicem
