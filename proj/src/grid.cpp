#include "causaltree/grid.hpp"

namespace causaltree {

double GridDist::conditional(int var, int value, std::span<const int> context_vars,
                             std::span<const int> context_vals, double fallback) const {
  const int m = static_cast<int>(cards.size());
  std::vector<int> fixed(m, -1);
  for (std::size_t i = 0; i < context_vars.size(); ++i) fixed[context_vars[i]] = context_vals[i];

  double ctx_mass = 0.0;
  double joint_mass = 0.0;
  const std::int64_t n = size();
  for (std::int64_t idx = 0; idx < n; ++idx) {
    Assignment x = grid_assignment(cards, idx);
    bool in_ctx = true;
    for (int v = 0; v < m; ++v) {
      if (fixed[v] >= 0 && x[v] != fixed[v]) {
        in_ctx = false;
        break;
      }
    }
    if (!in_ctx) continue;
    ctx_mass += p[idx];
    if (x[var] == value) joint_mass += p[idx];
  }
  if (ctx_mass <= 0.0) return fallback;
  return joint_mass / ctx_mass;
}

}  // namespace causaltree
