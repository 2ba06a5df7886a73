#include "nbicem/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace nbicem {

namespace {
// Square QAM grid with levels {+-1, +-3, ...}, scaled to unit average power.
Constellation square_qam(int levels_per_axis, const std::string& name) {
  std::vector<double> levels(levels_per_axis);
  double power = 0.0;
  for (int i = 0; i < levels_per_axis; ++i) {
    levels[i] = static_cast<double>(2 * i - levels_per_axis + 1);
    power += levels[i] * levels[i];
  }
  power /= levels_per_axis;           // E[l^2] per axis
  const double scale = 1.0 / std::sqrt(2.0 * power);
  Constellation c;
  c.name = name;
  c.points.reserve(static_cast<size_t>(levels_per_axis) * levels_per_axis);
  for (double re : levels)
    for (double im : levels) c.points.emplace_back(re * scale, im * scale);
  return c;
}
}  // namespace

Constellation Constellation::qpsk() { return square_qam(2, "qpsk"); }
Constellation Constellation::qam16() { return square_qam(4, "16qam"); }
Constellation Constellation::qam64() { return square_qam(8, "64qam"); }

Constellation Constellation::by_name(const std::string& name) {
  if (name == "qpsk") return qpsk();
  if (name == "16qam") return qam16();
  if (name == "64qam") return qam64();
  throw std::invalid_argument("Constellation: unknown name '" + name + "'");
}

int Constellation::nearest(cxd z) const {
  int best = 0;
  double best_d = std::norm(z - points[0]);
  for (int i = 1; i < static_cast<int>(points.size()); ++i) {
    const double d = std::norm(z - points[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

cxd Constellation::draw(Rng& rng) const {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(points.size()) - 1);
  return points[pick(rng)];
}

}  // namespace nbicem
