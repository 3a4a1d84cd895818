#pragma once

#include <span>
#include <vector>

namespace legzeros {

/// One zero stored as the nearest integer plus a remainder in [-1/2, 1/2].
///
/// The trajectories approach integers exponentially fast (e^{-2ℓx}), so the
/// remainder carries digits that `value()` cannot hold. Differences such as
/// ℓ - z are formed from the anchor first and stay accurate.
struct AnchoredZero {
  int anchor = 0;
  double offset = 0.0;

  static AnchoredZero from_value(double value);
  static AnchoredZero normalized(int anchor, double offset);

  double value() const noexcept { return static_cast<double>(anchor) + offset; }
  /// k - z computed without cancellation near z = k.
  double distance_from(int k) const noexcept {
    return static_cast<double>(k - anchor) - offset;
  }
  AnchoredZero negated() const noexcept;

  friend bool operator==(const AnchoredZero&, const AnchoredZero&) = default;
};

/// a - b, accurate when both sit near the same integer.
double difference(const AnchoredZero& a, const AnchoredZero& b) noexcept;

/// The n zeros of ψ_n(x, ·) at one x, largest first.
struct ZeroSet {
  int n = 0;
  double x = 0.0;
  std::vector<AnchoredZero> zeros;

  static ZeroSet from_values(int n, double x, std::span<const double> values);

  std::vector<double> values() const;
  double value(std::size_t i) const { return zeros.at(i).value(); }
  double sum() const;

  bool strictly_descending() const noexcept;
  /// Smallest z_ℓ - z_{ℓ+1}; +inf for n = 1.
  double min_gap() const noexcept;

  /// Image under (x, z) -> (-x, -z): negate every zero and reverse the order.
  ZeroSet mirrored() const;

  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;
};

}  // namespace legzeros
