#include "legzeros/zero_set.hpp"

#include <cmath>
#include <limits>

namespace legzeros {

AnchoredZero AnchoredZero::from_value(double value) {
  const double k = std::nearbyint(value);
  // value - k is exact (Sterbenz) whenever |value - k| <= 1/2.
  return {static_cast<int>(k), (value - k) + 0.0};
}

AnchoredZero AnchoredZero::normalized(int anchor, double offset) {
  const double shift = std::nearbyint(offset);
  return {anchor + static_cast<int>(shift), (offset - shift) + 0.0};
}

AnchoredZero AnchoredZero::negated() const noexcept {
  return {-anchor, -offset + 0.0};
}

double difference(const AnchoredZero& a, const AnchoredZero& b) noexcept {
  return static_cast<double>(a.anchor - b.anchor) + (a.offset - b.offset);
}

ZeroSet ZeroSet::from_values(int n, double x, std::span<const double> values) {
  ZeroSet zs{n, x, {}};
  zs.zeros.reserve(values.size());
  for (double v : values) zs.zeros.push_back(AnchoredZero::from_value(v));
  return zs;
}

std::vector<double> ZeroSet::values() const {
  std::vector<double> out;
  out.reserve(zeros.size());
  for (const auto& z : zeros) out.push_back(z.value());
  return out;
}

double ZeroSet::sum() const {
  long long anchors = 0;
  double offsets = 0.0;
  for (const auto& z : zeros) {
    anchors += z.anchor;
    offsets += z.offset;
  }
  return static_cast<double>(anchors) + offsets;
}

bool ZeroSet::strictly_descending() const noexcept {
  for (std::size_t i = 1; i < zeros.size(); ++i)
    if (!(difference(zeros[i - 1], zeros[i]) > 0.0)) return false;
  return true;
}

double ZeroSet::min_gap() const noexcept {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < zeros.size(); ++i)
    gap = std::fmin(gap, difference(zeros[i - 1], zeros[i]));
  return gap;
}

ZeroSet ZeroSet::mirrored() const {
  ZeroSet out{n, -x + 0.0, {}};
  out.zeros.reserve(zeros.size());
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) out.zeros.push_back(it->negated());
  return out;
}

}  // namespace legzeros
