#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mtfp/space.hpp"
#include "mtfp/util.hpp"

namespace testutil {

using mtfp::FiniteSpace;
using mtfp::SplitMix64;

/// The 3-point space used throughout: D(a,b)=1/5, D(b,c)=1/4, D(a,c)=1/2.
inline FiniteSpace three_point_space(double alpha = 2.0) {
  FiniteSpace s;
  s.points = {"a", "b", "c"};
  s.dist = {{0.0, 0.2, 0.5}, {0.2, 0.0, 0.25}, {0.5, 0.25, 0.0}};
  s.alpha = alpha;
  s.chain_len = 1;
  return s;
}

/// Random space with symmetric, strictly positive off-diagonal distances and
/// alpha set to the exact minimal coefficient for chains of length 1.
inline FiniteSpace random_space(SplitMix64& rng, std::size_t n, double lo = 0.1, double hi = 2.0) {
  FiniteSpace s;
  s.chain_len = 1;
  s.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.points[i] = "p" + std::to_string(i);
  s.dist.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = lo + (hi - lo) * rng.uniform();
      s.dist[i][j] = s.dist[j][i] = d;
    }
  }
  s.alpha = 1.0;
  s.alpha = mtfp::minimal_alpha(s, 1).alpha;
  return s;
}

inline std::vector<std::size_t> random_self_map(SplitMix64& rng, std::size_t n) {
  std::vector<std::size_t> f(n);
  for (auto& v : f) v = rng.below(n);
  return f;
}

struct BanachCase {
  FiniteSpace space;
  std::vector<std::size_t> f;
  double ratio;            // exact max pair ratio, < 1/alpha
  std::size_t attractor;   // the unique fixed point
};

/// Exact contraction ratio of a finite self-map: max over pairs with positive
/// distance of D(f(x), f(y)) / D(x, y).
inline double exact_ratio(const FiniteSpace& s, const std::vector<std::size_t>& f) {
  double a = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j || s.d(i, j) == 0.0) continue;
      a = std::max(a, s.d(f[i], f[j]) / s.d(i, j));
    }
  }
  return a;
}

/// Map with a dominant attracting point; accepted only when its exact ratio
/// stays below 1/alpha, so the resulting case always admits a passing
/// contraction certificate with a = exact_ratio.
inline std::optional<BanachCase> make_banach_case(SplitMix64& rng, std::size_t n) {
  FiniteSpace s = random_space(rng, n);
  std::size_t t = rng.below(n);
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<std::size_t> f(n, t);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != t && attempt < 8 && rng.uniform() < 0.25) f[i] = rng.below(n);
    }
    f[t] = t;
    double a = exact_ratio(s, f);
    if (a < 1.0 / s.alpha) return BanachCase{s, f, a, t};
  }
  return std::nullopt;
}

/// Map pinned to two fixed points p != q, everything else random.
inline std::vector<std::size_t> two_fixed_point_map(SplitMix64& rng, std::size_t n) {
  std::vector<std::size_t> f = random_self_map(rng, n);
  std::size_t p = rng.below(n);
  std::size_t q = (p + 1 + rng.below(n - 1)) % n;
  f[p] = p;
  f[q] = q;
  return f;
}

}  // namespace testutil
