#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mtfp/certificates.hpp"
#include "mtfp/space.hpp"

namespace mtfp {

/// Ground truth produced by exhaustive scans of a finite space. Every listed
/// element re-verifies its defining equation exactly (index equality).
struct FixedPointInventory {
  std::vector<std::size_t> fixed_points;                              // f(p) = p
  std::vector<std::pair<std::size_t, std::size_t>> coupled_points;    // F(x,y)=x, F(y,x)=y
  std::vector<std::pair<std::size_t, std::size_t>> coincidence_points;  // F(x,y)=gx, F(y,x)=gy
  std::vector<std::pair<std::size_t, std::size_t>> common_points;     // F(x,y)=gx=x, F(y,x)=gy=y
};

/// The oracle works on exact point identity, so spaces with distinct points at
/// distance zero are rejected up front (throws InputError).
void require_discrete(const FiniteSpace& space);

/// Exhaustive fixed-point scan of a self-map table.
FixedPointInventory enumerate_fixed_points(const FiniteSpace& space,
                                           const std::vector<std::size_t>& f);

/// Exhaustive scan over X x X for coupled fixed, coincidence and common
/// points of a binary map F and coefficient map g (empty g means identity).
FixedPointInventory enumerate_coupled(const FiniteSpace& space,
                                      const std::vector<std::vector<std::size_t>>& F,
                                      const std::vector<std::size_t>& g);

struct CrossCheckResult {
  bool ok = false;
  std::string reason;  // empty when ok; otherwise certificate_failed,
                       // no_fixed_point, multiple_fixed_points, solver_mismatch,
                       // off_diagonal
  FixedPointInventory inventory;
  ViolationReport certificate_report;
};

/// Verdict OK iff the certificate passes exhaustively, the inventory holds
/// exactly one fixed point, and it equals the solver output. Disagreement is
/// a result, not an error.
CrossCheckResult cross_check(const FiniteSpace& space, const std::vector<std::size_t>& f,
                             const Certificate& cert, std::size_t solver_point);

/// Coupled variant: requires exactly one coupled common fixed point, on the
/// diagonal, whose component equals the solver's z.
CrossCheckResult cross_check_coupled(const FiniteSpace& space,
                                     const std::vector<std::vector<std::size_t>>& F,
                                     const std::vector<std::size_t>& g, const Certificate& cert,
                                     std::size_t solver_z);

struct SweepOutcome {
  std::size_t certificates_tried = 0;   // budget-feasible grid points examined
  std::vector<std::string> passed;      // descriptions of certificates that passed
};

/// Contrapositive sweep: enumerates every coefficient tuple on the given grid
/// for the function-coefficient condition, corollaries 2..6, the generalized
/// condition and the two max/linear corollaries, and collects those passing
/// their exhaustive check. For a map with two or more fixed points the result
/// must be empty.
SweepOutcome contrapositive_sweep(const FiniteSpace& space, const std::vector<std::size_t>& f,
                                  double grid_step = 1.0 / 16.0);

}  // namespace mtfp
