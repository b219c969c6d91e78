#pragma once

#include <algorithm>
#include <cmath>

namespace mtfp {

/// Absolute-plus-relative comparison used for every inequality check on
/// distances. `leq(l, r)` accepts l <= r + atol + rtol * max(|l|, |r|), so
/// certificates that hold with exact equality still pass.
struct Tolerance {
  double atol = 1e-12;
  double rtol = 1e-9;

  double slack(double a, double b) const {
    return atol + rtol * std::max(std::abs(a), std::abs(b));
  }
  bool leq(double lhs, double rhs) const { return lhs <= rhs + slack(lhs, rhs); }
  bool eq(double a, double b) const { return std::abs(a - b) <= slack(a, b); }
};

/// Axiom checks on distance matrices: relative tolerance only (matrix entries
/// are user data; strict comparison would flag rounding noise).
inline constexpr Tolerance kAxiomTolerance{0.0, 1e-12};

/// Contractive-inequality checks.
inline constexpr Tolerance kInequalityTolerance{1e-12, 1e-9};

}  // namespace mtfp
