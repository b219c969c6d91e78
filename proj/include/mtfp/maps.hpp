#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "mtfp/errors.hpp"
#include "mtfp/space.hpp"

namespace mtfp {

/// f(x) = c*x + d on a real interval.
struct AffineMap {
  double c = 1.0;
  double d = 0.0;
  double operator()(double x) const { return c * x + d; }
};

/// Right inverse of an affine map (requires c != 0).
inline AffineMap affine_section(const AffineMap& g) {
  if (g.c == 0.0) throw InputError("affine map with c = 0 has no section");
  return {1.0 / g.c, -g.d / g.c};
}

/// F(x,y) = u*x + v*y + w on a real interval.
struct BilinearMap {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double operator()(double x, double y) const { return u * x + v * y + w; }
};

/// Validates a finite self-map table: every output index must be in range.
inline void validate_self_map(const FiniteSpace& space, const std::vector<std::size_t>& f) {
  if (f.size() != space.size()) throw InputError("self-map table size does not match the space");
  for (std::size_t v : f) {
    if (v >= space.size()) throw InputError("self-map output outside the space");
  }
}

/// Validates a finite binary-map table F[i][j].
inline void validate_binary_map(const FiniteSpace& space,
                                const std::vector<std::vector<std::size_t>>& F) {
  if (F.size() != space.size()) throw InputError("binary-map table size does not match the space");
  for (const auto& row : F) {
    if (row.size() != space.size()) throw InputError("binary-map table is not square");
    for (std::size_t v : row) {
      if (v >= space.size()) throw InputError("binary-map output outside the space");
    }
  }
}

/// Smallest-preimage section of a finite map g: for z in g(X), returns the
/// least i with g(i) = z. Indices outside the range stay unset.
inline std::vector<std::optional<std::size_t>> table_section(const std::vector<std::size_t>& g) {
  std::vector<std::optional<std::size_t>> sec(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!sec[g[i]].has_value()) sec[g[i]] = i;
  }
  return sec;
}

}  // namespace mtfp
