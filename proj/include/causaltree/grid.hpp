#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "causaltree/errors.hpp"

namespace causaltree {

using Assignment = std::vector<int>;

/// Mixed-radix index of a complete assignment, first variable most significant.
inline std::int64_t grid_index(std::span<const int> cards, std::span<const int> values) {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < cards.size(); ++i) idx = idx * cards[i] + values[i];
  return idx;
}

inline std::int64_t grid_size(std::span<const int> cards) {
  std::int64_t n = 1;
  for (int c : cards) n *= c;
  return n;
}

inline Assignment grid_assignment(std::span<const int> cards, std::int64_t idx) {
  Assignment x(cards.size());
  for (std::size_t i = cards.size(); i-- > 0;) {
    x[i] = static_cast<int>(idx % cards[i]);
    idx /= cards[i];
  }
  return x;
}

/// A nonnegative table over the full assignment grid of discrete variables.
/// Doubles as a joint distribution when normalized.
struct GridDist {
  std::vector<int> cards;
  std::vector<double> p;

  GridDist() = default;
  explicit GridDist(std::vector<int> cardinalities)
      : cards(std::move(cardinalities)), p(grid_size(cards), 0.0) {}

  double& at(std::span<const int> x) { return p[grid_index(cards, x)]; }
  double at(std::span<const int> x) const { return p[grid_index(cards, x)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(p.size()); }

  double total() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }

  void normalize() {
    double s = total();
    if (s <= 0.0) throw ValueError("cannot normalize an all-zero grid distribution");
    for (double& v : p) v /= s;
  }

  /// P(variable var = value | fixed context), marginalizing everything else.
  /// Returns `fallback` when the context itself has zero mass.
  double conditional(int var, int value, std::span<const int> context_vars,
                     std::span<const int> context_vals, double fallback) const;
};

}  // namespace causaltree
