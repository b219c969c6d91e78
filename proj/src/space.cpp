#include "mtfp/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace mtfp {

std::optional<std::size_t> FiniteSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == label) return i;
  }
  return std::nullopt;
}

void FiniteSpace::validate_structure() const {
  if (points.empty()) throw InputError("space: empty point list");
  std::unordered_set<std::string> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) throw InputError("space: duplicate point label '" + p + "'");
    if (p.find(',') != std::string::npos)
      throw InputError("space: point label '" + p + "' contains a comma");
  }
  if (dist.size() != points.size())
    throw InputError("space: distance matrix has " + std::to_string(dist.size()) +
                     " rows for " + std::to_string(points.size()) + " points");
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i].size() != points.size())
      throw InputError("space: distance matrix row " + std::to_string(i) + " is not square");
    for (double v : dist[i]) {
      if (!std::isfinite(v)) throw InputError("space: non-finite distance entry");
      if (v < 0.0) throw InputError("space: negative distance entry");
    }
  }
  if (!std::isfinite(alpha) || alpha < 1.0)
    throw InputError("space: alpha must be a finite real >= 1");
  if (chain_len < 1) throw InputError("space: chain_len must be >= 1");
}

DistanceSpace make_interval_space(double low, double high, double p) {
  if (!(std::isfinite(low) && std::isfinite(high) && low < high))
    throw InputError("interval space: need finite low < high");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("interval space: need exponent p >= 1");

  DistanceSpace s;
  s.alpha = std::pow(2.0, p - 1.0);
  s.domain_descriptor = "[" + format_double(low) + ", " + format_double(high) +
                        "] with D(x,y) = |x-y|^" + format_double(p);
  s.dist_fn = [p](double x, double y) {
    double a = std::abs(x - y);
    if (p == 2.0) return a * a;
    if (p == 1.0) return a;
    return std::pow(a, p);
  };
  // Deterministic grid (including both endpoints) plus seeded draws.
  s.sampler = [low, high](std::size_t n, std::uint64_t seed) {
    std::vector<double> pts;
    if (n == 0) return pts;
    pts.reserve(n);
    std::size_t grid = std::max<std::size_t>(2, (3 * n) / 4);
    if (grid > n) grid = n;
    for (std::size_t i = 0; i < grid; ++i)
      pts.push_back(low + (high - low) * static_cast<double>(i) / static_cast<double>(grid - 1));
    SplitMix64 rng(seed);
    while (pts.size() < n) pts.push_back(low + (high - low) * rng.uniform());
    return pts;
  };
  return s;
}

namespace {

// Enumerates chains z_1..z_k (k = 1..chain_len) between i and j with
// consecutive-distinct points, invoking fn(chain, cost) for each.
template <class Fn>
void for_each_chain(const FiniteSpace& s, std::size_t i, std::size_t j, int chain_len, Fn&& fn) {
  const std::size_t n = s.size();
  std::vector<std::size_t> chain;
  // Depth-first over chain positions; prefix_cost excludes the closing edge.
  auto rec = [&](auto&& self, std::size_t prev, double prefix_cost, int remaining) -> void {
    if (remaining == 0) return;
    for (std::size_t z = 0; z < n; ++z) {
      if (z == prev) continue;
      chain.push_back(z);
      double cost = prefix_cost + s.d(prev, z);
      if (z != j) fn(chain, cost + s.d(z, j));
      self(self, z, cost, remaining - 1);
      chain.pop_back();
    }
  };
  rec(rec, i, 0.0, chain_len);
}

}  // namespace

AxiomReport verify_axioms(const FiniteSpace& space, Tolerance tol) {
  space.validate_structure();
  AxiomReport rep;
  rep.alpha = space.alpha;
  rep.chain_len = space.chain_len;
  rep.exhaustive = true;
  rep.samples = space.size();

  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!tol.eq(space.d(i, i), 0.0)) rep.d1.push_back({i, space.d(i, i)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!tol.eq(space.d(i, j), space.d(j, i))) rep.d2.push_back({i, j, space.d(i, j), space.d(j, i)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dij = space.d(i, j);
      for_each_chain(space, i, j, space.chain_len, [&](const std::vector<std::size_t>& chain, double sum) {
        if (!tol.leq(dij, space.alpha * sum)) rep.d3.push_back({i, j, chain, dij, sum});
      });
    }
  }
  return rep;
}

FiniteSpace materialize(const DistanceSpace& space, std::size_t samples, std::uint64_t seed,
                        int chain_len) {
  if (samples < 2) throw InputError("materialize: need at least 2 samples");
  std::vector<double> pts = space.sampler(samples, seed);
  FiniteSpace fs;
  fs.alpha = space.alpha;
  fs.chain_len = chain_len;
  fs.points.reserve(pts.size());
  for (double x : pts) fs.points.push_back(format_double(x));
  fs.dist.assign(pts.size(), std::vector<double>(pts.size(), 0.0));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) fs.dist[i][j] = space.dist_fn(pts[i], pts[j]);
  return fs;
}

AxiomReport verify_axioms_sampled(const DistanceSpace& space, std::size_t samples,
                                  std::uint64_t seed, int chain_len, Tolerance tol) {
  AxiomReport rep = verify_axioms(materialize(space, samples, seed, chain_len), tol);
  rep.exhaustive = false;
  return rep;
}

MinimalAlphaResult minimal_alpha(const FiniteSpace& space, int chain_len) {
  space.validate_structure();
  if (chain_len < 1) throw InputError("minimal_alpha: chain_len must be >= 1");
  const std::size_t n = space.size();

  // sp[i][j] = min path cost with at most chain_len+1 edges.
  std::vector<std::vector<double>> sp = space.dist;
  std::vector<std::vector<double>> next = sp;
  for (int round = 0; round < chain_len; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double best = sp[i][j];
        for (std::size_t z = 0; z < n; ++z) {
          double c = sp[i][z] + space.d(z, j);
          if (c < best) best = c;
        }
        next[i][j] = best;
      }
    }
    std::swap(sp, next);
  }

  MinimalAlphaResult res;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (sp[i][j] == 0.0) {
        if (space.d(i, j) > 0.0) return {std::numeric_limits<double>::infinity(), false, i, j};
        continue;
      }
      double ratio = space.d(i, j) / sp[i][j];
      if (ratio > res.alpha) {
        res.alpha = ratio;
        res.arg_i = i;
        res.arg_j = j;
      }
    }
  }
  return res;
}

bool covers(const FiniteSpace& space, const EpsilonNet& net, Tolerance tol) {
  for (std::size_t p = 0; p < space.size(); ++p) {
    bool hit = false;
    for (std::size_t c : net.centers) {
      if (tol.leq(space.d(p, c), net.epsilon)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

EpsilonNet greedy_epsilon_net(const FiniteSpace& space, double epsilon, Tolerance tol) {
  space.validate_structure();
  if (!(epsilon > 0.0)) throw InputError("epsilon net: epsilon must be > 0");

  EpsilonNet net{epsilon, {0}};
  const std::size_t n = space.size();
  std::vector<double> cover(n);  // distance to nearest center
  for (std::size_t p = 0; p < n; ++p) cover[p] = space.d(p, 0);

  while (true) {
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t p = 0; p < n; ++p) {
      if (tol.leq(cover[p], epsilon)) continue;
      if (cover[p] > far_d) {
        far_d = cover[p];
        far = p;
      }
    }
    if (far_d < 0.0) break;  // everything covered
    net.centers.push_back(far);
    for (std::size_t p = 0; p < n; ++p) cover[p] = std::min(cover[p], space.d(p, far));
  }
  return net;
}

SpaceView<std::size_t> view_of(const FiniteSpace& space) {
  space.validate_structure();
  auto sp = std::make_shared<const FiniteSpace>(space);
  SpaceView<std::size_t> view;
  view.alpha = sp->alpha;
  view.exhaustive = true;
  view.points.resize(sp->size());
  for (std::size_t i = 0; i < sp->size(); ++i) view.points[i] = i;
  view.dist = [sp](const std::size_t& i, const std::size_t& j) { return sp->dist[i][j]; };
  view.label = [sp](const std::size_t& i) { return sp->points[i]; };
  return view;
}

SpaceView<double> view_of(const DistanceSpace& space, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw InputError("continuous view: need at least 2 samples");
  SpaceView<double> view;
  view.alpha = space.alpha;
  view.exhaustive = false;
  view.points = space.sampler(samples, seed);
  auto fn = space.dist_fn;
  view.dist = [fn](const double& x, const double& y) { return fn(x, y); };
  view.label = [](const double& x) { return format_double(x); };
  return view;
}

}  // namespace mtfp
