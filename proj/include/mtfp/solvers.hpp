#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mtfp/certificates.hpp"
#include "mtfp/errors.hpp"
#include "mtfp/space.hpp"

namespace mtfp {

enum class Termination { converged, max_iter, ratio_invalid };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter: return "max_iter";
    case Termination::ratio_invalid: return "ratio_invalid";
  }
  return "unknown";
}

enum class RatioSource { certified, empirical };

struct SolverConfig {
  double tol = 1e-10;          // in distance units of D
  std::size_t max_iter = 10000;
  RatioSource ratio_source = RatioSource::certified;
  std::uint64_t seed = 0;      // reserved for sampling configuration
  double decay_rtol = 1e-9;    // breach threshold: step > lambda * prev * (1 + decay_rtol)
  std::size_t warmup = 8;      // steps used to estimate lambda in empirical mode
};

/// Ordered record of a run. State is a point for single-map solves and a
/// point pair for coupled solves. step_dists[n] is the distance between
/// consecutive states; every converged trace certifies its own decay
/// step_dists[n] <= ratio * step_dists[n-1].
template <class State>
struct ConvergenceTrace {
  std::vector<State> iterates;
  std::vector<double> step_dists;
  std::vector<double> apriori_bounds;  // K * ratio^n / (1 - ratio) * step_dists[0]
  double ratio = 0.0;                  // certified (or estimated) geometric rate
  Termination terminated = Termination::max_iter;
};

template <class P>
struct SolveResult {
  P fixed_point{};
  double residual = 0.0;  // D(x*, f(x*))
  ConvergenceTrace<P> trace;
  bool converged() const { return trace.terminated == Termination::converged; }
};

template <class P>
struct FamilyResult {
  P fixed_point{};
  double residual_alpha = 0.0;  // D(T_alpha x*, x*)
  double residual_beta = 0.0;   // D(T_beta x*, x*)
  bool residuals_within_tol = false;
  ConvergenceTrace<P> trace;
  bool converged() const { return trace.terminated == Termination::converged; }
};

template <class P>
struct CoupledResult {
  P x{};
  P y{};
  double residual_x = 0.0;  // D(F(x*,y*), g x*)
  double residual_y = 0.0;  // D(F(y*,x*), g y*)
  bool residuals_within_tol = false;
  ConvergenceTrace<std::pair<P, P>> trace;
  bool converged() const { return trace.terminated == Termination::converged; }
};

namespace detail {

inline double apriori_bound(double K, double ratio, std::size_t n, double d0) {
  return K * std::pow(ratio, static_cast<double>(n)) / (1.0 - ratio) * d0;
}

template <class State>
void fill_bounds(ConvergenceTrace<State>& tr, double K) {
  tr.apriori_bounds.clear();
  if (tr.step_dists.empty() || !(tr.ratio >= 0.0 && tr.ratio < 1.0)) return;
  for (std::size_t n = 0; n < tr.iterates.size(); ++n)
    tr.apriori_bounds.push_back(apriori_bound(K, tr.ratio, n, tr.step_dists.front()));
}

}  // namespace detail

/// Successive approximation x_{n+1} = f(x_n) with the certified rate lambda.
/// Requires lambda in [0, 1/alpha); this is enforced even when a certificate's
/// budget passed. In empirical mode lambda is estimated as the max observed
/// step ratio over a warm-up and must then stay below 1/alpha. Stops when the
/// a-priori bound falls below tol, on an exact zero step, or at max_iter; the
/// fixed point reported is the last iterate, never an extrapolation.
/// Throws CertificateBreach when a step ratio exceeds lambda * (1+decay_rtol).
template <class P>
SolveResult<P> picard(const SpaceView<P>& view, const std::function<P(P)>& f, P x0,
                      std::optional<double> lambda, const SolverConfig& cfg = {}) {
  SolveResult<P> res;
  ConvergenceTrace<P>& tr = res.trace;
  tr.iterates.push_back(x0);

  const double inv_alpha = 1.0 / view.alpha;
  const bool empirical = cfg.ratio_source == RatioSource::empirical;
  if (!empirical) {
    if (!lambda.has_value()) throw InputError("picard: certified mode requires a lambda");
    tr.ratio = *lambda;
    if (!(tr.ratio >= 0.0 && tr.ratio < inv_alpha)) {
      tr.terminated = Termination::ratio_invalid;
      res.fixed_point = x0;
      res.residual = view.dist(x0, f(x0));
      return res;
    }
  }

  P x = x0;
  double prev_step = -1.0;
  bool ratio_fixed = !empirical;
  double est_ratio = 0.0;
  std::size_t n = 0;

  auto finish = [&](Termination why) {
    tr.terminated = why;
    tr.ratio = ratio_fixed ? tr.ratio : est_ratio;
    detail::fill_bounds(tr, view.alpha);
    res.fixed_point = x;
    res.residual = view.dist(x, f(x));
    return res;
  };

  while (true) {
    P fx = f(x);
    double d = view.dist(x, fx);
    tr.step_dists.push_back(d);

    if (prev_step >= 0.0) {
      if (ratio_fixed) {
        if (prev_step > 0.0 && d > tr.ratio * prev_step * (1.0 + cfg.decay_rtol))
          throw CertificateBreach(n, prev_step, d, tr.ratio);
      } else if (prev_step > 0.0) {
        est_ratio = std::max(est_ratio, d / prev_step);
      }
    }
    if (d == 0.0) return finish(Termination::converged);

    if (!ratio_fixed && n + 1 >= cfg.warmup) {
      // Warm-up over: freeze the estimate and require it admissible.
      if (!(est_ratio < inv_alpha)) {
        tr.ratio = est_ratio;
        ratio_fixed = true;
        return finish(Termination::ratio_invalid);
      }
      tr.ratio = est_ratio;
      ratio_fixed = true;
    }
    if (ratio_fixed && tr.ratio < 1.0) {
      double bound = detail::apriori_bound(view.alpha, tr.ratio, n, tr.step_dists.front());
      if (bound < cfg.tol) return finish(Termination::converged);
    }
    if (n >= cfg.max_iter) return finish(Termination::max_iter);

    x = fx;
    tr.iterates.push_back(x);
    prev_step = d;
    ++n;
  }
}

/// Alternating iteration x_{2n+1} = T_alpha x_{2n}, x_{2n+2} = T_beta x_{2n+1}
/// with effective geometric rate lambda(alpha) * K. On convergence both
/// residuals D(T_alpha x*, x*) and D(T_beta x*, x*) are reported and compared
/// against tol.
template <class P>
FamilyResult<P> family_solve(const SpaceView<P>& view,
                             const std::vector<std::function<P(P)>>& family,
                             std::size_t alpha_index, std::size_t beta_index, P x0,
                             const FamilyCoefficients& coeffs, const SolverConfig& cfg = {}) {
  if (family.empty()) throw InputError("family solve: empty family");
  if (alpha_index >= family.size() || beta_index >= family.size())
    throw InputError("family solve: map index out of range");
  if (coeffs.lambda_of.size() != family.size())
    throw InputError("family solve: lambda table size does not match the family");

  FamilyResult<P> res;
  ConvergenceTrace<P>& tr = res.trace;
  tr.iterates.push_back(x0);

  const auto& Ta = family[alpha_index];
  const auto& Tb = family[beta_index];
  auto residuals = [&](const P& p) {
    res.residual_alpha = view.dist(Ta(p), p);
    res.residual_beta = view.dist(Tb(p), p);
    res.residuals_within_tol = res.residual_alpha <= cfg.tol && res.residual_beta <= cfg.tol;
  };

  const double ratio = coeffs.lambda_of[alpha_index] * view.alpha;
  tr.ratio = ratio;
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    tr.terminated = Termination::ratio_invalid;
    res.fixed_point = x0;
    residuals(x0);
    return res;
  }

  P x = x0;
  double prev_step = -1.0;
  std::size_t n = 0;

  auto finish = [&](Termination why) {
    tr.terminated = why;
    detail::fill_bounds(tr, view.alpha);
    res.fixed_point = x;
    residuals(x);
    return res;
  };

  while (true) {
    P next = (n % 2 == 0) ? Ta(x) : Tb(x);
    double d = view.dist(x, next);
    tr.step_dists.push_back(d);
    if (prev_step > 0.0 && d > ratio * prev_step * (1.0 + cfg.decay_rtol))
      throw CertificateBreach(n, prev_step, d, ratio);
    if (d == 0.0) return finish(Termination::converged);
    double bound = detail::apriori_bound(view.alpha, ratio, n, tr.step_dists.front());
    if (bound < cfg.tol) return finish(Termination::converged);
    if (n >= cfg.max_iter) return finish(Termination::max_iter);
    x = next;
    tr.iterates.push_back(x);
    prev_step = d;
    ++n;
  }
}

/// Coupled iteration g(x_{n+1}) = F(x_n, y_n), g(y_{n+1}) = F(y_n, x_n),
/// realized through the caller-supplied section g_inv (the solver never
/// inverts g numerically). Monitors D_n = D(gx_n, gx_{n+1}) + D(gy_n, gy_{n+1})
/// with the rate derived from the coupled budget, which must satisfy
/// lambda < 1/K. A D_n of exactly zero means (x_n, y_n) is already a
/// coincidence pair.
template <class P>
CoupledResult<P> coupled_solve(const SpaceView<P>& view, const std::function<P(P, P)>& F,
                               const std::function<P(P)>& g, const std::function<P(P)>& g_inv,
                               P x0, P y0, const CoupledCoefficients& coeffs,
                               const SolverConfig& cfg = {}) {
  CoupledResult<P> res;
  auto& tr = res.trace;
  tr.iterates.push_back({x0, y0});

  auto residuals = [&](const P& px, const P& py) {
    res.residual_x = view.dist(F(px, py), g(px));
    res.residual_y = view.dist(F(py, px), g(py));
    res.residuals_within_tol = res.residual_x <= cfg.tol && res.residual_y <= cfg.tol;
  };

  const double K = view.alpha;
  double lambda;
  try {
    lambda = coupled_lambda(coeffs, K);
  } catch (const InputError&) {
    tr.terminated = Termination::ratio_invalid;
    res.x = x0;
    res.y = y0;
    residuals(x0, y0);
    return res;
  }
  tr.ratio = lambda;
  if (!(lambda >= 0.0 && lambda < 1.0 / K)) {
    tr.terminated = Termination::ratio_invalid;
    res.x = x0;
    res.y = y0;
    residuals(x0, y0);
    return res;
  }

  auto step_point = [&](const P& a, const P& b) {
    P z = F(a, b);
    P next = g_inv(z);
    if (view.dist(g(next), z) > cfg.tol)
      throw SectionError("section violation: g(g_inv(z)) != z for a produced value");
    return next;
  };

  P x = x0, y = y0;
  double prev_step = -1.0;
  std::size_t n = 0;

  auto finish = [&](Termination why) {
    tr.terminated = why;
    detail::fill_bounds(tr, K);
    res.x = x;
    res.y = y;
    residuals(x, y);
    return res;
  };

  while (true) {
    P xn = step_point(x, y);
    P yn = step_point(y, x);
    double d = view.dist(g(x), g(xn)) + view.dist(g(y), g(yn));
    tr.step_dists.push_back(d);
    if (prev_step > 0.0 && d > lambda * prev_step * (1.0 + cfg.decay_rtol))
      throw CertificateBreach(n, prev_step, d, lambda);
    if (d == 0.0) return finish(Termination::converged);
    double bound = detail::apriori_bound(K, lambda, n, tr.step_dists.front());
    if (bound < cfg.tol) return finish(Termination::converged);
    if (n >= cfg.max_iter) return finish(Termination::max_iter);
    x = xn;
    y = yn;
    tr.iterates.push_back({x, y});
    prev_step = d;
    ++n;
  }
}

enum class CommonStatus { ok, not_coincidence, w_compat_failed, diagonal_failed, residual_failed };

inline const char* to_string(CommonStatus s) {
  switch (s) {
    case CommonStatus::ok: return "ok";
    case CommonStatus::not_coincidence: return "not_coincidence";
    case CommonStatus::w_compat_failed: return "w_compat_failed";
    case CommonStatus::diagonal_failed: return "diagonal_failed";
    case CommonStatus::residual_failed: return "residual_failed";
  }
  return "unknown";
}

template <class P>
struct CommonFixedPointResult {
  CommonStatus status = CommonStatus::ok;
  std::optional<P> z;
  double w_compat_residual = 0.0;   // D(g(F(x*,y*)), F(gx*, gy*))
  double diagonal_residual = 0.0;   // D(gx*, gy*)
  double z_fixed_residual = 0.0;    // D(gz, F(z,z))
  double z_g_residual = 0.0;        // D(z, gz)
  bool ok() const { return status == CommonStatus::ok; }
};

/// Upgrades a coincidence pair (x*, y*) to the common fixed point z = g(x*)
/// with F(z,z) = g(z) = z, after checking w-compatibility numerically at the
/// pair and asserting the diagonal property D(gx*, gy*) <= tol. A diagonal
/// failure flags either a bad certificate or a tolerance issue.
template <class P>
CommonFixedPointResult<P> coupled_common_fixed_point(const SpaceView<P>& view,
                                                     const std::function<P(P, P)>& F,
                                                     const std::function<P(P)>& g, P xstar,
                                                     P ystar, const SolverConfig& cfg = {}) {
  CommonFixedPointResult<P> res;

  double rx = view.dist(F(xstar, ystar), g(xstar));
  double ry = view.dist(F(ystar, xstar), g(ystar));
  if (rx > cfg.tol || ry > cfg.tol) {
    res.status = CommonStatus::not_coincidence;
    return res;
  }

  res.w_compat_residual = view.dist(g(F(xstar, ystar)), F(g(xstar), g(ystar)));
  if (res.w_compat_residual > cfg.tol) {
    res.status = CommonStatus::w_compat_failed;
    return res;  // no z produced
  }

  res.diagonal_residual = view.dist(g(xstar), g(ystar));
  if (res.diagonal_residual > cfg.tol) {
    res.status = CommonStatus::diagonal_failed;
    return res;
  }

  P z = g(xstar);
  res.z = z;
  res.z_fixed_residual = view.dist(g(z), F(z, z));
  res.z_g_residual = view.dist(z, g(z));
  if (res.z_fixed_residual > cfg.tol || res.z_g_residual > cfg.tol)
    res.status = CommonStatus::residual_failed;
  return res;
}

}  // namespace mtfp
