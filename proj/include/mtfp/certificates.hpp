#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "mtfp/errors.hpp"
#include "mtfp/space.hpp"
#include "mtfp/tolerance.hpp"

namespace mtfp {

// ---------------------------------------------------------------------------
// Coefficient representations
// ---------------------------------------------------------------------------

/// Per-point coefficient function X -> [0,1): a constant, or a table indexed
/// like the space's points (finite spaces only).
struct Coeff {
  double value = 0.0;
  std::vector<double> table;  // empty => constant

  Coeff() = default;
  Coeff(double v) : value(v) {}  // NOLINT: implicit by design
  explicit Coeff(std::vector<double> t) : table(std::move(t)) {}

  bool is_table() const { return !table.empty(); }
  double at(std::size_t i) const { return is_table() ? table[i] : value; }
};

/// X x X -> [0,1) coefficient: a constant, or a full matrix on finite spaces.
struct PairCoeff {
  double value = 0.0;
  std::vector<std::vector<double>> table;  // empty => constant

  PairCoeff() = default;
  PairCoeff(double v) : value(v) {}  // NOLINT: implicit by design
  explicit PairCoeff(std::vector<std::vector<double>> t) : table(std::move(t)) {}

  bool is_table() const { return !table.empty(); }
  double at(std::size_t i, std::size_t j) const { return is_table() ? table[i][j] : value; }
};

/// Function-coefficient contraction: five maps X -> [0,1) with the budget
/// eta + lam + zeta + mu + 2*alpha*xi < 1 at every point, each non-increasing
/// along orbits of f.
struct FunctionCoefficients {
  Coeff eta, lam, zeta, mu, xi;
};

enum class CorollaryVariant { cor1 = 1, cor2, cor3, cor4, cor5, cor6 };

/// One of the six specializations of the function-coefficient condition.
/// cor1 keeps per-point functions; cor2..cor6 are constants.
struct CorollaryCoefficients {
  CorollaryVariant variant = CorollaryVariant::cor6;
  Coeff eta, lam, mu;                              // cor1
  double a = 0, beta = 0, gamma = 0, k = 0, l = 0;  // cor2..cor6 (subset per variant)
};

/// Implicit condition: a*D(fx,fy) + beta*D(x,fx) + gamma*D(y,fy) + k*D(x,fy)
/// + l*D(y,fx) <= s*D(x,y) + t*D(x,f(f(x))) with s>=a>=l, gamma>=k>=t, a+k>0
/// and (s-l)/(a+k) < 1/alpha.
struct ImplicitCoefficients {
  double a = 0, beta = 0, gamma = 0, k = 0, l = 0, s = 0, t = 0;
};

/// Generalized contraction with two-variable coefficient functions and
/// lambda = sup(alpha + beta + gamma + 2K*delta) < 1.
struct GeneralizedCoefficients {
  PairCoeff alpha_fn, beta_fn, gamma_fn, delta_fn;
};

/// Max-type bound D(Tx,Ty) <= lambda * max{D(x,y), D(x,Tx), D(y,Ty),
/// (D(x,Ty)+D(y,Tx))/2} with lambda in (0,1).
struct Eq10Coefficients {
  double lambda = 0.0;
};

/// Four-term bound with budget l1 + l2 + K*(l3 + l4) < min{1, 2/K}.
struct Eq1mCoefficients {
  double l1 = 0, l2 = 0, l3 = 0, l4 = 0;
};

/// Indexed family {T_a}: a rate lambda(a) in [0,1) per index with
/// lambda(a)*K < 1, and a distinguished index beta.
struct FamilyCoefficients {
  std::vector<double> lambda_of;
  std::size_t beta_index = 0;
};

/// Coupled contraction constants a1..a6 with the budget
/// 2K(a1+a3) + (K+1)(a2+a4) + (K^2+K)(a5+a6) < 2.
struct CoupledCoefficients {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0;
};

enum class CoupledVariant { cor24, cor25, cor26 };

struct CoupledCorollaryCoefficients {
  CoupledVariant variant = CoupledVariant::cor25;
  double alpha = 0, beta = 0, gamma = 0;  // gamma used by cor24 only
};

/// Tagged union over every certificate kind.
using Certificate =
    std::variant<FunctionCoefficients, CorollaryCoefficients, ImplicitCoefficients,
                 GeneralizedCoefficients, Eq10Coefficients, Eq1mCoefficients,
                 FamilyCoefficients, CoupledCoefficients, CoupledCorollaryCoefficients>;

std::string kind_of(const Certificate& cert);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct Violation {
  std::vector<std::string> witness;  // points of the violating tuple
  double lhs = 0.0;
  double rhs = 0.0;
};

struct BudgetFailure {
  std::string constraint;
  std::vector<std::string> witness;  // empty for global constraints
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Outcome of one certificate check. Coefficient/budget failures are kept
/// separate from failures of the contractive inequality itself.
struct ViolationReport {
  std::string kind;
  bool exhaustive = false;
  std::size_t samples_checked = 0;  // tuples evaluated against the inequality
  std::vector<Violation> violations;
  std::vector<BudgetFailure> budget_failures;
  std::optional<double> lambda;          // derived rate, when the certificate has one
  std::map<std::string, double> derived;  // extra derived quantities

  bool budgets_ok() const { return budget_failures.empty(); }
  bool inequality_ok() const { return violations.empty(); }
  bool ok() const { return budgets_ok() && inequality_ok(); }
};

struct CheckConfig {
  Tolerance tol = kInequalityTolerance;
  std::size_t orbit_depth = 16;      // descent condition is checked along orbits
  bool first_violation_only = false;  // stop at the first inequality violation
};

// ---------------------------------------------------------------------------
// Embeddings and derived rates
// ---------------------------------------------------------------------------

/// Documented substitution of each corollary into the five-function form:
/// cor1: zeta = lam, xi = mu; cor2..cor6: constant H.
FunctionCoefficients embed(const CorollaryCoefficients& c);

/// Substitution of each coupled corollary into a1..a6.
CoupledCoefficients embed(const CoupledCorollaryCoefficients& c);

/// Shared budget expression eta + lam + zeta + mu + 2*alpha*xi at one point.
inline double function_budget(double eta, double lam, double zeta, double mu, double xi,
                              double alpha) {
  return eta + lam + zeta + mu + 2.0 * alpha * xi;
}

/// Derived geometric rate of the coupled condition:
/// (2a1 + a2 + 2a3 + a4 + K(a5+a6)) / (2 - a2 - a4 - K(a5+a6)).
double coupled_lambda(const CoupledCoefficients& c, double K);

/// Picard step ratio of the function-coefficient condition at the seed:
/// (eta + lam + alpha*xi) / (1 - zeta - alpha*xi). Empty when the denominator
/// is not positive.
std::optional<double> function_picard_ratio(const FunctionCoefficients& c, double alpha,
                                            std::size_t x0_index);
std::optional<double> function_picard_ratio_const(const FunctionCoefficients& c, double alpha);

/// Uniform rate (s-l)/(a+k) of the implicit condition; empty when a+k = 0.
std::optional<double> implicit_uniform_ratio(const ImplicitCoefficients& c);
/// Sharper per-step ratio (s-beta)/(a+gamma); empty when a+gamma = 0.
std::optional<double> implicit_picard_ratio(const ImplicitCoefficients& c);

// ---------------------------------------------------------------------------
// Checkers. All enumerate ordered tuples of view.points in index order, so
// reports are deterministic; exhaustive on finite spaces.
// ---------------------------------------------------------------------------

namespace detail {

template <class P>
double coeff_at(const Coeff& c, const P& p) {
  if constexpr (std::is_same_v<P, std::size_t>) {
    return c.at(p);
  } else {
    return c.value;  // tables are rejected up front for continuous spaces
  }
}

template <class P>
double pair_coeff_at(const PairCoeff& c, const P& x, const P& y) {
  if constexpr (std::is_same_v<P, std::size_t>) {
    return c.at(x, y);
  } else {
    (void)x;
    (void)y;
    return c.value;
  }
}

template <class P>
void validate_coeff_shape(const Coeff& c, const SpaceView<P>& view, const std::string& name) {
  if (!c.is_table()) return;
  if constexpr (std::is_same_v<P, std::size_t>) {
    if (c.table.size() != view.points.size())
      throw InputError("coefficient " + name + ": table size does not match the space");
  } else {
    throw InputError("coefficient " + name + ": tables are not supported on continuous spaces");
  }
}

template <class P>
void validate_pair_coeff_shape(const PairCoeff& c, const SpaceView<P>& view,
                               const std::string& name) {
  if (!c.is_table()) return;
  if constexpr (std::is_same_v<P, std::size_t>) {
    if (c.table.size() != view.points.size())
      throw InputError("coefficient " + name + ": matrix size does not match the space");
    for (const auto& row : c.table) {
      if (row.size() != view.points.size())
        throw InputError("coefficient " + name + ": matrix is not square");
    }
  } else {
    throw InputError("coefficient " + name + ": matrices are not supported on continuous spaces");
  }
}

inline void require_in_unit(ViolationReport& rep, const std::string& name, double v,
                            const std::vector<std::string>& witness) {
  if (!(v >= 0.0 && v < 1.0)) rep.budget_failures.push_back({name + " in [0,1)", witness, v, 1.0});
}

inline void require_nonneg(ViolationReport& rep, const std::string& name, double v) {
  if (!(v >= 0.0)) rep.budget_failures.push_back({name + " >= 0", {}, v, 0.0});
}

// Descent of each named coefficient along orbits of f from every point.
template <class P>
void check_descent(ViolationReport& rep, const SpaceView<P>& view, const std::function<P(P)>& f,
                   const std::vector<std::pair<std::string, const Coeff*>>& coeffs,
                   const CheckConfig& cfg) {
  bool any_table = false;
  for (const auto& [name, c] : coeffs) any_table = any_table || c->is_table();
  if (!any_table) return;  // constants trivially descend
  for (const P& start : view.points) {
    P x = start;
    for (std::size_t depth = 0; depth < cfg.orbit_depth; ++depth) {
      P fx = f(x);
      if (fx == x) break;
      for (const auto& [name, c] : coeffs) {
        double gx = coeff_at(*c, x), gfx = coeff_at(*c, fx);
        if (!cfg.tol.leq(gfx, gx))
          rep.budget_failures.push_back({"descent of " + name, {view.label(x)}, gfx, gx});
      }
      x = fx;
    }
  }
}

}  // namespace detail

/// Function-coefficient condition, condition (3):
/// D(f(x),f(y)) <= eta(x)D(x,y) + lam(x)D(x,fx) + zeta(x)D(y,fy)
///               + mu(x)D(fx,y) + xi(x)D(x,fy).
template <class P>
ViolationReport check_theorem1(const SpaceView<P>& view, const std::function<P(P)>& f,
                               const FunctionCoefficients& c, const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "theorem1";
  rep.exhaustive = view.exhaustive;
  detail::validate_coeff_shape(c.eta, view, "eta");
  detail::validate_coeff_shape(c.lam, view, "lambda");
  detail::validate_coeff_shape(c.zeta, view, "zeta");
  detail::validate_coeff_shape(c.mu, view, "mu");
  detail::validate_coeff_shape(c.xi, view, "xi");

  for (const P& x : view.points) {
    const std::vector<std::string> w{view.label(x)};
    double e = detail::coeff_at(c.eta, x), l = detail::coeff_at(c.lam, x);
    double z = detail::coeff_at(c.zeta, x), m = detail::coeff_at(c.mu, x);
    double xi = detail::coeff_at(c.xi, x);
    detail::require_in_unit(rep, "eta", e, w);
    detail::require_in_unit(rep, "lambda", l, w);
    detail::require_in_unit(rep, "zeta", z, w);
    detail::require_in_unit(rep, "mu", m, w);
    detail::require_in_unit(rep, "xi", xi, w);
    double budget = function_budget(e, l, z, m, xi, view.alpha);
    if (!(budget < 1.0))
      rep.budget_failures.push_back({"eta+lambda+zeta+mu+2*alpha*xi < 1", w, budget, 1.0});
  }
  detail::check_descent(rep, view, f,
                        {{"eta", &c.eta}, {"lambda", &c.lam}, {"zeta", &c.zeta}, {"mu", &c.mu}, {"xi", &c.xi}},
                        cfg);

  for (const P& x : view.points) {
    P fx = f(x);
    double e = detail::coeff_at(c.eta, x), l = detail::coeff_at(c.lam, x);
    double z = detail::coeff_at(c.zeta, x), m = detail::coeff_at(c.mu, x);
    double xi = detail::coeff_at(c.xi, x);
    for (const P& y : view.points) {
      P fy = f(y);
      double lhs = view.dist(fx, fy);
      double rhs = e * view.dist(x, y) + l * view.dist(x, fx) + z * view.dist(y, fy) +
                   m * view.dist(fx, y) + xi * view.dist(x, fy);
      ++rep.samples_checked;
      if (!cfg.tol.leq(lhs, rhs)) {
        rep.violations.push_back({{view.label(x), view.label(y)}, lhs, rhs});
        if (cfg.first_violation_only) return rep;
      }
    }
  }
  return rep;
}

/// One corollary of the function-coefficient condition, checked through its
/// own stated inequality (not via the embedding, which tests compare against).
template <class P>
ViolationReport check_corollary(const SpaceView<P>& view, const std::function<P(P)>& f,
                                const CorollaryCoefficients& c, const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "corollary" + std::to_string(static_cast<int>(c.variant));
  rep.exhaustive = view.exhaustive;

  const double alpha = view.alpha;
  switch (c.variant) {
    case CorollaryVariant::cor1: {
      detail::validate_coeff_shape(c.eta, view, "eta");
      detail::validate_coeff_shape(c.lam, view, "lambda");
      detail::validate_coeff_shape(c.mu, view, "mu");
      for (const P& x : view.points) {
        const std::vector<std::string> w{view.label(x)};
        double e = detail::coeff_at(c.eta, x), l = detail::coeff_at(c.lam, x);
        double m = detail::coeff_at(c.mu, x);
        detail::require_in_unit(rep, "eta", e, w);
        detail::require_in_unit(rep, "lambda", l, w);
        detail::require_in_unit(rep, "mu", m, w);
        double budget = e + 2.0 * l + 2.0 * (1.0 + alpha) * m;
        if (!(budget < 1.0))
          rep.budget_failures.push_back({"eta+2*lambda+2*(1+alpha)*mu < 1", w, budget, 1.0});
      }
      detail::check_descent(rep, view, f, {{"eta", &c.eta}, {"lambda", &c.lam}, {"mu", &c.mu}}, cfg);
      break;
    }
    case CorollaryVariant::cor2: {
      for (auto [name, v] : {std::pair<const char*, double>{"a", c.a}, {"beta", c.beta},
                             {"gamma", c.gamma}, {"k", c.k}, {"l", c.l}})
        detail::require_nonneg(rep, name, v);
      double budget = function_budget(c.a, c.beta, c.gamma, c.k, c.l, alpha);
      if (!(budget < 1.0))
        rep.budget_failures.push_back({"a+beta+gamma+k+2*alpha*l < 1", {}, budget, 1.0});
      break;
    }
    case CorollaryVariant::cor3:
      if (!(c.beta >= 0.0 && c.beta < 0.5))
        rep.budget_failures.push_back({"beta in [0,1/2)", {}, c.beta, 0.5});
      break;
    case CorollaryVariant::cor4:
      if (!(c.beta >= 0.0 && c.beta < 1.0 / (1.0 + 2.0 * alpha)))
        rep.budget_failures.push_back({"beta in [0,1/(1+2*alpha))", {}, c.beta, 1.0 / (1.0 + 2.0 * alpha)});
      break;
    case CorollaryVariant::cor5:
      detail::require_nonneg(rep, "a", c.a);
      detail::require_nonneg(rep, "beta", c.beta);
      if (!(c.a + c.beta < 1.0))
        rep.budget_failures.push_back({"a+beta < 1", {}, c.a + c.beta, 1.0});
      break;
    case CorollaryVariant::cor6:
      detail::require_nonneg(rep, "a", c.a);
      if (!(c.a < 1.0)) rep.budget_failures.push_back({"a < 1", {}, c.a, 1.0});
      break;
  }

  for (const P& x : view.points) {
    P fx = f(x);
    for (const P& y : view.points) {
      P fy = f(y);
      double lhs = view.dist(fx, fy);
      double rhs = 0.0;
      switch (c.variant) {
        case CorollaryVariant::cor1: {
          double e = detail::coeff_at(c.eta, x), l = detail::coeff_at(c.lam, x);
          double m = detail::coeff_at(c.mu, x);
          rhs = e * view.dist(x, y) + l * (view.dist(x, fx) + view.dist(y, fy)) +
                m * (view.dist(fx, y) + view.dist(x, fy));
          break;
        }
        case CorollaryVariant::cor2:
          rhs = c.a * view.dist(x, y) + c.beta * view.dist(x, fx) + c.gamma * view.dist(y, fy) +
                c.k * view.dist(fx, y) + c.l * view.dist(x, fy);
          break;
        case CorollaryVariant::cor3:
          rhs = c.beta * (view.dist(x, fx) + view.dist(y, fy));
          break;
        case CorollaryVariant::cor4:
          rhs = c.beta * (view.dist(fx, y) + view.dist(x, fy));
          break;
        case CorollaryVariant::cor5:
          rhs = c.a * view.dist(x, y) + c.beta * view.dist(fx, y);
          break;
        case CorollaryVariant::cor6:
          rhs = c.a * view.dist(x, y);
          break;
      }
      ++rep.samples_checked;
      if (!cfg.tol.leq(lhs, rhs)) {
        rep.violations.push_back({{view.label(x), view.label(y)}, lhs, rhs});
        if (cfg.first_violation_only) return rep;
      }
    }
  }
  return rep;
}

/// Implicit condition. The inequality is a hypothesis whose left side holds
/// the contraction structure; the derived per-step ratio is (s-beta)/(a+gamma)
/// and the theorem's uniform bound is (s-l)/(a+k).
template <class P>
ViolationReport check_theorem2(const SpaceView<P>& view, const std::function<P(P)>& f,
                               const ImplicitCoefficients& c, const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "theorem2";
  rep.exhaustive = view.exhaustive;

  for (auto [name, v] : {std::pair<const char*, double>{"a", c.a}, {"beta", c.beta},
                         {"gamma", c.gamma}, {"k", c.k}, {"l", c.l}, {"s", c.s}, {"t", c.t}})
    detail::require_nonneg(rep, name, v);
  if (!(c.s >= c.a && c.a >= c.l))
    rep.budget_failures.push_back({"s >= a >= l", {}, c.a, c.s});
  if (!(c.gamma >= c.k && c.k >= c.t))
    rep.budget_failures.push_back({"gamma >= k >= t", {}, c.k, c.gamma});
  if (!(c.a + c.k > 0.0)) {
    rep.budget_failures.push_back({"a + k > 0", {}, c.a + c.k, 0.0});
  } else {
    double ratio = (c.s - c.l) / (c.a + c.k);
    rep.lambda = ratio;
    rep.derived["uniform_ratio"] = ratio;
    if (auto pr = implicit_picard_ratio(c)) rep.derived["picard_ratio"] = *pr;
    if (!(ratio >= 0.0 && ratio < 1.0 / view.alpha))
      rep.budget_failures.push_back({"(s-l)/(a+k) in [0,1/alpha)", {}, ratio, 1.0 / view.alpha});
  }

  for (const P& x : view.points) {
    P fx = f(x);
    P ffx = f(fx);
    for (const P& y : view.points) {
      P fy = f(y);
      double lhs = c.a * view.dist(fx, fy) + c.beta * view.dist(x, fx) +
                   c.gamma * view.dist(y, fy) + c.k * view.dist(x, fy) + c.l * view.dist(y, fx);
      double rhs = c.s * view.dist(x, y) + c.t * view.dist(x, ffx);
      ++rep.samples_checked;
      if (!cfg.tol.leq(lhs, rhs)) {
        rep.violations.push_back({{view.label(x), view.label(y)}, lhs, rhs});
        if (cfg.first_violation_only) return rep;
      }
    }
  }
  return rep;
}

/// Generalized contraction: pairwise inequality plus the empirical sup of
/// alpha + beta + gamma + 2K*delta over checked pairs, which must stay < 1.
template <class P>
ViolationReport check_generalized(const SpaceView<P>& view, const std::function<P(P)>& T,
                                  const GeneralizedCoefficients& c, const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "generalized";
  rep.exhaustive = view.exhaustive;
  detail::validate_pair_coeff_shape(c.alpha_fn, view, "alpha");
  detail::validate_pair_coeff_shape(c.beta_fn, view, "beta");
  detail::validate_pair_coeff_shape(c.gamma_fn, view, "gamma");
  detail::validate_pair_coeff_shape(c.delta_fn, view, "delta");

  const double K = view.alpha;
  double lambda_sup = 0.0;
  std::vector<std::string> sup_witness;
  bool range_ok = true;

  for (const P& x : view.points) {
    P Tx = T(x);
    for (const P& y : view.points) {
      P Ty = T(y);
      double a = detail::pair_coeff_at(c.alpha_fn, x, y);
      double b = detail::pair_coeff_at(c.beta_fn, x, y);
      double g = detail::pair_coeff_at(c.gamma_fn, x, y);
      double dl = detail::pair_coeff_at(c.delta_fn, x, y);
      if (range_ok) {
        for (auto [name, v] :
             {std::pair<const char*, double>{"alpha", a}, {"beta", b}, {"gamma", g}, {"delta", dl}}) {
          if (!(v >= 0.0 && v < 1.0)) {
            rep.budget_failures.push_back({std::string(name) + " in [0,1)",
                                           {view.label(x), view.label(y)}, v, 1.0});
            range_ok = false;  // one witness is enough
          }
        }
      }
      double sum = a + b + g + 2.0 * K * dl;
      if (sum > lambda_sup) {
        lambda_sup = sum;
        sup_witness = {view.label(x), view.label(y)};
      }
      double lhs = view.dist(Tx, Ty);
      double rhs = a * view.dist(x, y) + b * view.dist(x, Tx) + g * view.dist(y, Ty) +
                   dl * (view.dist(x, Ty) + view.dist(y, Tx));
      ++rep.samples_checked;
      if (!cfg.tol.leq(lhs, rhs)) {
        rep.violations.push_back({{view.label(x), view.label(y)}, lhs, rhs});
        if (cfg.first_violation_only) {
          rep.lambda = lambda_sup;
          return rep;
        }
      }
    }
  }
  rep.lambda = lambda_sup;
  if (!(lambda_sup < 1.0))
    rep.budget_failures.push_back({"sup(alpha+beta+gamma+2K*delta) < 1", sup_witness, lambda_sup, 1.0});
  return rep;
}

template <class P>
ViolationReport check_eq10(const SpaceView<P>& view, const std::function<P(P)>& T,
                           const Eq10Coefficients& c, const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "eq10";
  rep.exhaustive = view.exhaustive;
  rep.lambda = c.lambda;
  if (!(c.lambda > 0.0 && c.lambda < 1.0))
    rep.budget_failures.push_back({"lambda in (0,1)", {}, c.lambda, 1.0});

  for (const P& x : view.points) {
    P Tx = T(x);
    for (const P& y : view.points) {
      P Ty = T(y);
      double m = std::max({view.dist(x, y), view.dist(x, Tx), view.dist(y, Ty),
                           0.5 * (view.dist(x, Ty) + view.dist(y, Tx))});
      double lhs = view.dist(Tx, Ty);
      double rhs = c.lambda * m;
      ++rep.samples_checked;
      if (!cfg.tol.leq(lhs, rhs)) {
        rep.violations.push_back({{view.label(x), view.label(y)}, lhs, rhs});
        if (cfg.first_violation_only) return rep;
      }
    }
  }
  return rep;
}

template <class P>
ViolationReport check_eq1m(const SpaceView<P>& view, const std::function<P(P)>& T,
                           const Eq1mCoefficients& c, const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "eq1m";
  rep.exhaustive = view.exhaustive;
  const double K = view.alpha;
  for (auto [name, v] : {std::pair<const char*, double>{"lambda1", c.l1}, {"lambda2", c.l2},
                         {"lambda3", c.l3}, {"lambda4", c.l4}})
    detail::require_in_unit(rep, name, v, {});
  double budget = c.l1 + c.l2 + K * (c.l3 + c.l4);
  double bound = std::min(1.0, 2.0 / K);
  if (!(budget < bound))
    rep.budget_failures.push_back({"lambda1+lambda2+K*(lambda3+lambda4) < min{1,2/K}", {}, budget, bound});

  for (const P& x : view.points) {
    P Tx = T(x);
    for (const P& y : view.points) {
      P Ty = T(y);
      double lhs = view.dist(Tx, Ty);
      double rhs = c.l1 * view.dist(x, Tx) + c.l2 * view.dist(y, Ty) + c.l3 * view.dist(x, Ty) +
                   c.l4 * view.dist(y, Tx);
      ++rep.samples_checked;
      if (!cfg.tol.leq(lhs, rhs)) {
        rep.violations.push_back({{view.label(x), view.label(y)}, lhs, rhs});
        if (cfg.first_violation_only) return rep;
      }
    }
  }
  return rep;
}

/// Family condition: for every index a and pair (x,y),
/// D(T_a x, T_b y) <= lambda(a) * max{D(x,y), D(x,T_a x), D(y,T_b y),
/// (D(x,T_b y)+D(y,T_a x))/2}, where b is the distinguished index.
template <class P>
ViolationReport check_family(const SpaceView<P>& view,
                             const std::vector<std::function<P(P)>>& family,
                             const FamilyCoefficients& c, const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "family";
  rep.exhaustive = view.exhaustive;
  if (family.empty()) throw InputError("family check: empty family");
  if (c.lambda_of.size() != family.size())
    throw InputError("family check: lambda table size does not match the family");
  if (c.beta_index >= family.size()) throw InputError("family check: beta_index out of range");

  const double K = view.alpha;
  for (std::size_t a = 0; a < family.size(); ++a) {
    double lam = c.lambda_of[a];
    if (!(lam >= 0.0 && lam < 1.0))
      rep.budget_failures.push_back({"lambda(alpha) in [0,1)", {"alpha=" + std::to_string(a)}, lam, 1.0});
    if (!(lam * K < 1.0))
      rep.budget_failures.push_back({"lambda(alpha)*K < 1", {"alpha=" + std::to_string(a)}, lam * K, 1.0});
  }

  const auto& Tb = family[c.beta_index];
  for (std::size_t a = 0; a < family.size(); ++a) {
    const auto& Ta = family[a];
    double lam = c.lambda_of[a];
    for (const P& x : view.points) {
      P Tax = Ta(x);
      for (const P& y : view.points) {
        P Tby = Tb(y);
        double m = std::max({view.dist(x, y), view.dist(x, Tax), view.dist(y, Tby),
                             0.5 * (view.dist(x, Tby) + view.dist(y, Tax))});
        double lhs = view.dist(Tax, Tby);
        double rhs = lam * m;
        ++rep.samples_checked;
        if (!cfg.tol.leq(lhs, rhs)) {
          rep.violations.push_back(
              {{"alpha=" + std::to_string(a), view.label(x), view.label(y)}, lhs, rhs});
          if (cfg.first_violation_only) return rep;
        }
      }
    }
  }
  return rep;
}

/// Coupled condition over ordered 4-tuples (x,y,u,v):
/// D(F(x,y),F(u,v)) <= a1 D(gx,gu) + a2 D(F(x,y),gx) + a3 D(gy,gv)
///                   + a4 D(F(u,v),gu) + a5 D(F(x,y),gu) + a6 D(F(u,v),gx).
/// Both tuple orders are always checked; no symmetry is assumed.
template <class P>
ViolationReport check_coupled(const SpaceView<P>& view, const std::function<P(P, P)>& F,
                              const std::function<P(P)>& g, const CoupledCoefficients& c,
                              const CheckConfig& cfg = {}) {
  ViolationReport rep;
  rep.kind = "coupled";
  rep.exhaustive = view.exhaustive;
  const double K = view.alpha;

  for (auto [name, v] : {std::pair<const char*, double>{"a1", c.a1}, {"a2", c.a2}, {"a3", c.a3},
                         {"a4", c.a4}, {"a5", c.a5}, {"a6", c.a6}})
    detail::require_nonneg(rep, name, v);
  double budget = 2.0 * K * (c.a1 + c.a3) + (K + 1.0) * (c.a2 + c.a4) + (K * K + K) * (c.a5 + c.a6);
  if (!(budget < 2.0))
    rep.budget_failures.push_back({"2K(a1+a3)+(K+1)(a2+a4)+(K^2+K)(a5+a6) < 2", {}, budget, 2.0});
  double denom = 2.0 - c.a2 - c.a4 - K * (c.a5 + c.a6);
  if (denom > 0.0) {
    double lam = coupled_lambda(c, K);
    rep.lambda = lam;
    if (!(lam < 1.0 / K))
      rep.budget_failures.push_back({"lambda < 1/K", {}, lam, 1.0 / K});
  } else {
    rep.budget_failures.push_back({"2 - a2 - a4 - K(a5+a6) > 0", {}, denom, 0.0});
  }

  // Range inclusion F(X x X) within g(X): exact on finite spaces, an interval
  // proxy over the sampled image otherwise.
  if constexpr (std::is_same_v<P, std::size_t>) {
    std::vector<char> in_range(view.points.size(), 0);
    for (const P& p : view.points) in_range[g(p)] = 1;
    for (const P& x : view.points) {
      for (const P& y : view.points) {
        if (!in_range[F(x, y)]) {
          rep.budget_failures.push_back(
              {"F(X x X) within g(X)", {view.label(x), view.label(y)}, 0.0, 0.0});
        }
      }
    }
  } else {
    double glo = g(view.points.front()), ghi = glo;
    for (const P& p : view.points) {
      glo = std::min(glo, g(p));
      ghi = std::max(ghi, g(p));
    }
    double slack = 1e-9 * std::max(1.0, ghi - glo);
    for (const P& x : view.points) {
      for (const P& y : view.points) {
        double z = F(x, y);
        if (z < glo - slack || z > ghi + slack) {
          rep.budget_failures.push_back(
              {"F(X x X) within g(X)", {view.label(x), view.label(y)}, z, 0.0});
          break;
        }
      }
    }
  }

  for (const P& x : view.points) {
    for (const P& y : view.points) {
      P Fxy = F(x, y);
      P gx = g(x), gy = g(y);
      double dFgx = view.dist(Fxy, gx);
      for (const P& u : view.points) {
        P gu = g(u);
        for (const P& v : view.points) {
          P Fuv = F(u, v);
          double lhs = view.dist(Fxy, Fuv);
          double rhs = c.a1 * view.dist(gx, gu) + c.a2 * dFgx + c.a3 * view.dist(gy, g(v)) +
                       c.a4 * view.dist(Fuv, gu) + c.a5 * view.dist(Fxy, gu) +
                       c.a6 * view.dist(Fuv, gx);
          ++rep.samples_checked;
          if (!cfg.tol.leq(lhs, rhs)) {
            rep.violations.push_back(
                {{view.label(x), view.label(y), view.label(u), view.label(v)}, lhs, rhs});
            if (cfg.first_violation_only) return rep;
          }
        }
      }
    }
  }
  return rep;
}

/// Coupled corollaries, each checked through its own stated inequality.
template <class P>
ViolationReport check_coupled_corollary(const SpaceView<P>& view, const std::function<P(P, P)>& F,
                                        const std::function<P(P)>& g,
                                        const CoupledCorollaryCoefficients& c,
                                        const CheckConfig& cfg = {}) {
  ViolationReport rep;
  const double K = view.alpha;
  detail::require_nonneg(rep, "alpha", c.alpha);
  detail::require_nonneg(rep, "beta", c.beta);
  switch (c.variant) {
    case CoupledVariant::cor24: {
      rep.kind = "coupled_cor24";
      detail::require_nonneg(rep, "gamma", c.gamma);
      double budget = (3.0 * K + 1.0) * (c.alpha + c.beta) + 2.0 * (K * K + K) * c.gamma;
      if (!(budget < 2.0))
        rep.budget_failures.push_back({"(3K+1)(alpha+beta)+2(K^2+K)gamma < 2", {}, budget, 2.0});
      break;
    }
    case CoupledVariant::cor25:
      rep.kind = "coupled_cor25";
      if (!(c.alpha + c.beta < 1.0 / K))
        rep.budget_failures.push_back({"alpha+beta < 1/K", {}, c.alpha + c.beta, 1.0 / K});
      break;
    case CoupledVariant::cor26:
      rep.kind = "coupled_cor26";
      if (!(c.alpha + c.beta < 2.0 / (K * K + K)))
        rep.budget_failures.push_back(
            {"alpha+beta < 2/(K^2+K)", {}, c.alpha + c.beta, 2.0 / (K * K + K)});
      break;
  }
  rep.lambda = coupled_lambda(embed(c), K);
  rep.exhaustive = view.exhaustive;

  for (const P& x : view.points) {
    for (const P& y : view.points) {
      P Fxy = F(x, y);
      P gx = g(x), gy = g(y);
      for (const P& u : view.points) {
        P gu = g(u);
        for (const P& v : view.points) {
          P Fuv = F(u, v);
          double lhs = view.dist(Fxy, Fuv);
          double rhs = 0.0;
          switch (c.variant) {
            case CoupledVariant::cor24:
              rhs = c.alpha * (view.dist(gx, gu) + view.dist(Fxy, gx)) +
                    c.beta * (view.dist(gy, g(v)) + view.dist(Fuv, gu)) +
                    c.gamma * (view.dist(Fxy, gu) + view.dist(Fuv, gx));
              break;
            case CoupledVariant::cor25:
              rhs = c.alpha * view.dist(gx, gu) + c.beta * view.dist(gy, g(v));
              break;
            case CoupledVariant::cor26:
              rhs = c.alpha * view.dist(Fxy, gu) + c.beta * view.dist(Fuv, gx);
              break;
          }
          ++rep.samples_checked;
          if (!cfg.tol.leq(lhs, rhs)) {
            rep.violations.push_back(
                {{view.label(x), view.label(y), view.label(u), view.label(v)}, lhs, rhs});
            if (cfg.first_violation_only) return rep;
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch over the certificate union
// ---------------------------------------------------------------------------

/// The maps a check may need; only the field matching the certificate kind
/// has to be populated.
template <class P>
struct MapBundle {
  std::function<P(P)> self;
  std::vector<std::function<P(P)>> family;
  std::function<P(P, P)> F;
  std::function<P(P)> g;
};

template <class P>
ViolationReport run_check(const SpaceView<P>& view, const MapBundle<P>& maps,
                          const Certificate& cert, const CheckConfig& cfg = {}) {
  auto need_self = [&]() -> const std::function<P(P)>& {
    if (!maps.self) throw InputError("certificate requires a self-map");
    return maps.self;
  };
  auto need_coupled = [&]() {
    if (!maps.F) throw InputError("certificate requires a binary map F");
    if (!maps.g) throw InputError("certificate requires a coefficient map g");
  };
  return std::visit(
      [&](const auto& c) -> ViolationReport {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, FunctionCoefficients>) {
          return check_theorem1(view, need_self(), c, cfg);
        } else if constexpr (std::is_same_v<C, CorollaryCoefficients>) {
          return check_corollary(view, need_self(), c, cfg);
        } else if constexpr (std::is_same_v<C, ImplicitCoefficients>) {
          return check_theorem2(view, need_self(), c, cfg);
        } else if constexpr (std::is_same_v<C, GeneralizedCoefficients>) {
          return check_generalized(view, need_self(), c, cfg);
        } else if constexpr (std::is_same_v<C, Eq10Coefficients>) {
          return check_eq10(view, need_self(), c, cfg);
        } else if constexpr (std::is_same_v<C, Eq1mCoefficients>) {
          return check_eq1m(view, need_self(), c, cfg);
        } else if constexpr (std::is_same_v<C, FamilyCoefficients>) {
          if (maps.family.empty()) throw InputError("certificate requires an indexed family");
          return check_family(view, maps.family, c, cfg);
        } else if constexpr (std::is_same_v<C, CoupledCoefficients>) {
          need_coupled();
          return check_coupled(view, maps.F, maps.g, c, cfg);
        } else {
          static_assert(std::is_same_v<C, CoupledCorollaryCoefficients>);
          need_coupled();
          return check_coupled_corollary(view, maps.F, maps.g, c, cfg);
        }
      },
      cert);
}

/// Certificate-derived Picard ratio for solvers, when the certificate kind
/// defines one. x0_index is used by per-point function coefficients.
template <class P>
std::optional<double> certified_lambda(const Certificate& cert, const SpaceView<P>& view,
                                       std::optional<std::size_t> x0_index) {
  return std::visit(
      [&](const auto& c) -> std::optional<double> {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, FunctionCoefficients>) {
          if (x0_index) return function_picard_ratio(c, view.alpha, *x0_index);
          return function_picard_ratio_const(c, view.alpha);
        } else if constexpr (std::is_same_v<C, CorollaryCoefficients>) {
          FunctionCoefficients h = embed(c);
          if (x0_index) return function_picard_ratio(h, view.alpha, *x0_index);
          return function_picard_ratio_const(h, view.alpha);
        } else if constexpr (std::is_same_v<C, ImplicitCoefficients>) {
          return implicit_uniform_ratio(c);
        } else if constexpr (std::is_same_v<C, GeneralizedCoefficients>) {
          double sup = 0.0;
          for (const P& x : view.points)
            for (const P& y : view.points)
              sup = std::max(sup, detail::pair_coeff_at(c.alpha_fn, x, y) +
                                      detail::pair_coeff_at(c.beta_fn, x, y) +
                                      detail::pair_coeff_at(c.gamma_fn, x, y) +
                                      2.0 * view.alpha * detail::pair_coeff_at(c.delta_fn, x, y));
          return sup;
        } else {
          return std::nullopt;  // eq10/eq1m/family/coupled carry no Picard ratio
        }
      },
      cert);
}

}  // namespace mtfp
