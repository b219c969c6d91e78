#include "mtfp/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mtfp/maps.hpp"

namespace mtfp {

void require_discrete(const FiniteSpace& space) {
  space.validate_structure();
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      if (space.d(i, j) == 0.0)
        throw InputError("oracle: distinct points '" + space.points[i] + "' and '" +
                         space.points[j] + "' at distance zero");
    }
  }
  if (space.size() > 64) throw InputError("oracle: exhaustive scans are limited to 64 points");
}

FixedPointInventory enumerate_fixed_points(const FiniteSpace& space,
                                           const std::vector<std::size_t>& f) {
  require_discrete(space);
  validate_self_map(space, f);
  FixedPointInventory inv;
  for (std::size_t p = 0; p < space.size(); ++p) {
    if (f[p] == p) inv.fixed_points.push_back(p);
  }
  return inv;
}

FixedPointInventory enumerate_coupled(const FiniteSpace& space,
                                      const std::vector<std::vector<std::size_t>>& F,
                                      const std::vector<std::size_t>& g) {
  require_discrete(space);
  if (space.size() > 24) throw InputError("oracle: coupled scans are limited to 24 points");
  validate_binary_map(space, F);
  std::vector<std::size_t> gg = g;
  if (gg.empty()) {
    gg.resize(space.size());
    for (std::size_t i = 0; i < gg.size(); ++i) gg[i] = i;
  }
  validate_self_map(space, gg);

  FixedPointInventory inv;
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      bool coupled = F[x][y] == x && F[y][x] == y;
      bool coincidence = F[x][y] == gg[x] && F[y][x] == gg[y];
      if (coupled) inv.coupled_points.push_back({x, y});
      if (coincidence) inv.coincidence_points.push_back({x, y});
      if (coincidence && gg[x] == x && gg[y] == y) inv.common_points.push_back({x, y});
    }
  }
  return inv;
}

CrossCheckResult cross_check(const FiniteSpace& space, const std::vector<std::size_t>& f,
                             const Certificate& cert, std::size_t solver_point) {
  CrossCheckResult res;
  res.inventory = enumerate_fixed_points(space, f);

  SpaceView<std::size_t> view = view_of(space);
  MapBundle<std::size_t> maps;
  maps.self = [f](std::size_t i) { return f[i]; };
  res.certificate_report = run_check(view, maps, cert);

  if (!res.certificate_report.ok()) {
    res.reason = "certificate_failed";
    return res;
  }
  if (res.inventory.fixed_points.empty()) {
    res.reason = "no_fixed_point";
    return res;
  }
  if (res.inventory.fixed_points.size() > 1) {
    res.reason = "multiple_fixed_points";
    return res;
  }
  if (res.inventory.fixed_points.front() != solver_point) {
    res.reason = "solver_mismatch";
    return res;
  }
  res.ok = true;
  return res;
}

CrossCheckResult cross_check_coupled(const FiniteSpace& space,
                                     const std::vector<std::vector<std::size_t>>& F,
                                     const std::vector<std::size_t>& g, const Certificate& cert,
                                     std::size_t solver_z) {
  CrossCheckResult res;
  res.inventory = enumerate_coupled(space, F, g);

  SpaceView<std::size_t> view = view_of(space);
  MapBundle<std::size_t> maps;
  maps.F = [F](std::size_t x, std::size_t y) { return F[x][y]; };
  std::vector<std::size_t> gg = g;
  if (gg.empty()) {
    gg.resize(space.size());
    for (std::size_t i = 0; i < gg.size(); ++i) gg[i] = i;
  }
  maps.g = [gg](std::size_t i) { return gg[i]; };
  res.certificate_report = run_check(view, maps, cert);

  if (!res.certificate_report.ok()) {
    res.reason = "certificate_failed";
    return res;
  }
  if (res.inventory.common_points.empty()) {
    res.reason = "no_fixed_point";
    return res;
  }
  if (res.inventory.common_points.size() > 1) {
    res.reason = "multiple_fixed_points";
    return res;
  }
  auto [zx, zy] = res.inventory.common_points.front();
  if (zx != zy) {
    res.reason = "off_diagonal";
    return res;
  }
  if (zx != solver_z) {
    res.reason = "solver_mismatch";
    return res;
  }
  res.ok = true;
  return res;
}

SweepOutcome contrapositive_sweep(const FiniteSpace& space, const std::vector<std::size_t>& f,
                                  double grid_step) {
  require_discrete(space);
  validate_self_map(space, f);
  if (!(grid_step > 0.0 && grid_step < 1.0)) throw InputError("sweep: grid step must be in (0,1)");

  SpaceView<std::size_t> view = view_of(space);
  std::function<std::size_t(std::size_t)> fn = [&f](std::size_t i) { return f[i]; };
  CheckConfig cfg;
  cfg.first_violation_only = true;

  const double K = view.alpha;
  std::vector<double> grid;
  for (int i = 0; i * grid_step < 1.0; ++i) grid.push_back(i * grid_step);

  SweepOutcome out;
  auto record = [&](const ViolationReport& rep, const std::string& desc) {
    ++out.certificates_tried;
    if (rep.ok()) out.passed.push_back(desc);
  };

  // Function-coefficient condition (constant coefficients) and, through the
  // independent corollary route, corollary 2. The budget prefilter matches the
  // checker's own budget expression.
  for (double e : grid)
    for (double l : grid)
      for (double z : grid)
        for (double m : grid)
          for (double xi : grid) {
            if (!(function_budget(e, l, z, m, xi, K) < 1.0)) continue;
            FunctionCoefficients h;
            h.eta = e;
            h.lam = l;
            h.zeta = z;
            h.mu = m;
            h.xi = xi;
            record(check_theorem1(view, fn, h, cfg),
                   "theorem1(" + format_double(e) + "," + format_double(l) + "," +
                       format_double(z) + "," + format_double(m) + "," + format_double(xi) + ")");
            CorollaryCoefficients c2;
            c2.variant = CorollaryVariant::cor2;
            c2.a = e;
            c2.beta = l;
            c2.gamma = z;
            c2.k = m;
            c2.l = xi;
            record(check_corollary(view, fn, c2, cfg), "corollary2");
          }

  for (double b : grid) {
    if (b < 0.5) {
      CorollaryCoefficients c;
      c.variant = CorollaryVariant::cor3;
      c.beta = b;
      record(check_corollary(view, fn, c, cfg), "corollary3(" + format_double(b) + ")");
    }
    if (b < 1.0 / (1.0 + 2.0 * K)) {
      CorollaryCoefficients c;
      c.variant = CorollaryVariant::cor4;
      c.beta = b;
      record(check_corollary(view, fn, c, cfg), "corollary4(" + format_double(b) + ")");
    }
  }
  for (double a : grid) {
    for (double b : grid) {
      if (!(a + b < 1.0)) continue;
      CorollaryCoefficients c;
      c.variant = CorollaryVariant::cor5;
      c.a = a;
      c.beta = b;
      record(check_corollary(view, fn, c, cfg), "corollary5(" + format_double(a) + "," + format_double(b) + ")");
    }
    CorollaryCoefficients c6;
    c6.variant = CorollaryVariant::cor6;
    c6.a = a;
    record(check_corollary(view, fn, c6, cfg), "corollary6(" + format_double(a) + ")");
  }

  // Generalized condition with constant coefficient functions.
  for (double a : grid)
    for (double b : grid)
      for (double g : grid)
        for (double dl : grid) {
          if (!(a + b + g + 2.0 * K * dl < 1.0)) continue;
          GeneralizedCoefficients gc;
          gc.alpha_fn = a;
          gc.beta_fn = b;
          gc.gamma_fn = g;
          gc.delta_fn = dl;
          record(check_generalized(view, fn, gc, cfg),
                 "generalized(" + format_double(a) + "," + format_double(b) + "," +
                     format_double(g) + "," + format_double(dl) + ")");
        }

  // Max-type and four-term corollaries (cheap, included for completeness).
  for (double lam : grid) {
    if (lam > 0.0) {
      record(check_eq10(view, fn, Eq10Coefficients{lam}, cfg), "eq10(" + format_double(lam) + ")");
    }
  }
  const double eq1m_bound = std::min(1.0, 2.0 / K);
  for (double l1 : grid)
    for (double l2 : grid)
      for (double l3 : grid)
        for (double l4 : grid) {
          if (!(l1 + l2 + K * (l3 + l4) < eq1m_bound)) continue;
          record(check_eq1m(view, fn, Eq1mCoefficients{l1, l2, l3, l4}, cfg), "eq1m");
        }

  return out;
}

}  // namespace mtfp
