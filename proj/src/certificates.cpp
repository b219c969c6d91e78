#include "mtfp/certificates.hpp"

namespace mtfp {

std::string kind_of(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> std::string {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, FunctionCoefficients>) {
          return "theorem1";
        } else if constexpr (std::is_same_v<C, CorollaryCoefficients>) {
          return "corollary" + std::to_string(static_cast<int>(c.variant));
        } else if constexpr (std::is_same_v<C, ImplicitCoefficients>) {
          return "theorem2";
        } else if constexpr (std::is_same_v<C, GeneralizedCoefficients>) {
          return "generalized";
        } else if constexpr (std::is_same_v<C, Eq10Coefficients>) {
          return "eq10";
        } else if constexpr (std::is_same_v<C, Eq1mCoefficients>) {
          return "eq1m";
        } else if constexpr (std::is_same_v<C, FamilyCoefficients>) {
          return "family";
        } else if constexpr (std::is_same_v<C, CoupledCoefficients>) {
          return "coupled";
        } else {
          switch (c.variant) {
            case CoupledVariant::cor24: return "coupled_cor24";
            case CoupledVariant::cor25: return "coupled_cor25";
            case CoupledVariant::cor26: return "coupled_cor26";
          }
          return "coupled_cor";
        }
      },
      cert);
}

FunctionCoefficients embed(const CorollaryCoefficients& c) {
  FunctionCoefficients h;
  switch (c.variant) {
    case CorollaryVariant::cor1:
      h.eta = c.eta;
      h.lam = c.lam;
      h.zeta = c.lam;  // zeta = lambda
      h.mu = c.mu;
      h.xi = c.mu;  // xi = mu
      break;
    case CorollaryVariant::cor2:
      h.eta = c.a;
      h.lam = c.beta;
      h.zeta = c.gamma;
      h.mu = c.k;
      h.xi = c.l;
      break;
    case CorollaryVariant::cor3:
      h.lam = c.beta;
      h.zeta = c.beta;
      break;
    case CorollaryVariant::cor4:
      h.mu = c.beta;
      h.xi = c.beta;
      break;
    case CorollaryVariant::cor5:
      h.eta = c.a;
      h.mu = c.beta;
      break;
    case CorollaryVariant::cor6:
      h.eta = c.a;
      break;
  }
  return h;
}

CoupledCoefficients embed(const CoupledCorollaryCoefficients& c) {
  CoupledCoefficients a;
  switch (c.variant) {
    case CoupledVariant::cor24:
      a.a1 = a.a2 = c.alpha;
      a.a3 = a.a4 = c.beta;
      a.a5 = a.a6 = c.gamma;
      break;
    case CoupledVariant::cor25:
      a.a1 = c.alpha;
      a.a3 = c.beta;
      break;
    case CoupledVariant::cor26:
      a.a5 = c.alpha;
      a.a6 = c.beta;
      break;
  }
  return a;
}

double coupled_lambda(const CoupledCoefficients& c, double K) {
  double num = 2.0 * c.a1 + c.a2 + 2.0 * c.a3 + c.a4 + K * (c.a5 + c.a6);
  double den = 2.0 - c.a2 - c.a4 - K * (c.a5 + c.a6);
  if (!(den > 0.0)) throw InputError("coupled rate: budget denominator is not positive");
  return num / den;
}

namespace {

std::optional<double> picard_ratio_from(double eta, double lam, double zeta, double xi,
                                        double alpha) {
  double den = 1.0 - zeta - alpha * xi;
  if (!(den > 0.0)) return std::nullopt;
  return (eta + lam + alpha * xi) / den;
}

}  // namespace

std::optional<double> function_picard_ratio(const FunctionCoefficients& c, double alpha,
                                            std::size_t x0_index) {
  return picard_ratio_from(c.eta.at(x0_index), c.lam.at(x0_index), c.zeta.at(x0_index),
                           c.xi.at(x0_index), alpha);
}

std::optional<double> function_picard_ratio_const(const FunctionCoefficients& c, double alpha) {
  if (c.eta.is_table() || c.lam.is_table() || c.zeta.is_table() || c.xi.is_table())
    return std::nullopt;  // per-point ratio needs a seed
  return picard_ratio_from(c.eta.value, c.lam.value, c.zeta.value, c.xi.value, alpha);
}

std::optional<double> implicit_uniform_ratio(const ImplicitCoefficients& c) {
  if (!(c.a + c.k > 0.0)) return std::nullopt;
  return (c.s - c.l) / (c.a + c.k);
}

std::optional<double> implicit_picard_ratio(const ImplicitCoefficients& c) {
  if (!(c.a + c.gamma > 0.0)) return std::nullopt;
  return (c.s - c.beta) / (c.a + c.gamma);
}

}  // namespace mtfp
