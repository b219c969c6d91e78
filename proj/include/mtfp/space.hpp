#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtfp/errors.hpp"
#include "mtfp/tolerance.hpp"
#include "mtfp/util.hpp"

namespace mtfp {

/// Finite point set with an explicit symmetric distance matrix, a relaxation
/// coefficient alpha >= 1 and the fixed chain length n of the polygon axiom
///   D(x,y) <= alpha * (D(x,z_1) + D(z_1,z_2) + ... + D(z_n,y)).
struct FiniteSpace {
  std::vector<std::string> points;
  std::vector<std::vector<double>> dist;
  double alpha = 1.0;
  int chain_len = 1;

  std::size_t size() const { return points.size(); }
  double d(std::size_t i, std::size_t j) const { return dist[i][j]; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Throws InputError on malformed structure: empty or duplicate labels,
  /// non-square matrix, negative or non-finite entries, alpha < 1, chain_len < 1.
  /// Axiom violations (nonzero diagonal, asymmetry, D3) are not structural and
  /// are reported by verify_axioms instead.
  void validate_structure() const;
};

/// Abstract space: a distance function, a coefficient and a deterministic
/// seeded sampler. Covers continuous domains; axiom checks on such spaces are
/// sample-based only and mean "not refuted on N samples", never "proved".
struct DistanceSpace {
  std::function<double(double, double)> dist_fn;
  double alpha = 1.0;
  std::string domain_descriptor;
  /// Returns n points; a deterministic grid mixed with seeded draws.
  std::function<std::vector<double>(std::size_t, std::uint64_t)> sampler;
};

/// The built-in continuous family: [low, high] under D(x,y) = |x-y|^p with
/// alpha = 2^(p-1). Requires p >= 1.
DistanceSpace make_interval_space(double low, double high, double p);

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

struct D1Violation {
  std::size_t i;
  double value;  // nonzero self distance
};

struct D2Violation {
  std::size_t i, j;
  double dij, dji;
};

struct D3Violation {
  std::size_t i, j;
  std::vector<std::size_t> chain;  // intermediates z_1..z_k, consecutive-distinct
  double lhs;                      // D(i,j)
  double chain_sum;                // D(i,z_1) + ... + D(z_k,j)
};

struct AxiomReport {
  std::vector<D1Violation> d1;
  std::vector<D2Violation> d2;
  std::vector<D3Violation> d3;
  double alpha = 1.0;
  int chain_len = 1;
  bool exhaustive = true;
  std::size_t samples = 0;  // number of points examined

  bool d1_ok() const { return d1.empty(); }
  bool d2_ok() const { return d2.empty(); }
  bool d3_ok() const { return d3.empty(); }
  bool ok() const { return d1_ok() && d2_ok() && d3_ok(); }
};

/// Checks D1, D2 and D3 exhaustively. D3 enumerates chains of length
/// 1..chain_len whose consecutive points (including the endpoints) differ;
/// chains with repeated consecutive points cost the same as a shorter chain
/// and are therefore covered by the shorter enumeration.
AxiomReport verify_axioms(const FiniteSpace& space, Tolerance tol = kAxiomTolerance);

/// Finite space induced by sampling a continuous one; labels carry the
/// coordinates at full precision.
FiniteSpace materialize(const DistanceSpace& space, std::size_t samples, std::uint64_t seed,
                        int chain_len = 1);

/// Samples the continuous space and runs verify_axioms on the induced finite
/// space. exhaustive=false in the result; a clean report means "not refuted".
AxiomReport verify_axioms_sampled(const DistanceSpace& space, std::size_t samples,
                                  std::uint64_t seed, int chain_len = 1,
                                  Tolerance tol = kAxiomTolerance);

// ---------------------------------------------------------------------------
// Minimal relaxation coefficient
// ---------------------------------------------------------------------------

struct MinimalAlphaResult {
  double alpha = 1.0;      // clamped below at 1
  bool bounded = true;     // false when some pair has dist > 0 but zero chain cost
  std::size_t arg_i = 0;   // pair attaining the max ratio (or the unbounded witness)
  std::size_t arg_j = 0;
};

/// Smallest alpha making D3 hold for the given chain length: the max over
/// pairs of dist[i][j] / sp(i,j) where sp is the minimum path cost with at
/// most chain_len+1 edges (Bellman-Ford; zero-cost self-repeats pad shorter
/// chains to the exact length). Requires D1/D2 to hold.
MinimalAlphaResult minimal_alpha(const FiniteSpace& space, int chain_len);

// ---------------------------------------------------------------------------
// Epsilon nets
// ---------------------------------------------------------------------------

struct EpsilonNet {
  double epsilon = 0.0;
  std::vector<std::size_t> centers;
};

/// Greedy farthest-point cover: starts from point 0, repeatedly adds the point
/// farthest from the current centers until every point lies within epsilon of
/// some center. |centers| <= |points|.
EpsilonNet greedy_epsilon_net(const FiniteSpace& space, double epsilon,
                              Tolerance tol = kAxiomTolerance);

/// True iff every point is within epsilon of some center.
bool covers(const FiniteSpace& space, const EpsilonNet& net, Tolerance tol = kAxiomTolerance);

// ---------------------------------------------------------------------------
// Uniform view used by certificate checkers and solvers
// ---------------------------------------------------------------------------

/// A space reduced to what checks and solves need: a distance, a coefficient,
/// the points to examine (all of them for finite spaces, samples otherwise)
/// and a label function for reports. P is std::size_t for finite spaces and
/// double for continuous ones.
template <class P>
struct SpaceView {
  std::function<double(const P&, const P&)> dist;
  double alpha = 1.0;
  std::vector<P> points;
  bool exhaustive = true;
  std::function<std::string(const P&)> label;
};

/// View over a finite space. Copies the matrix, so the view outlives the input.
SpaceView<std::size_t> view_of(const FiniteSpace& space);

/// View over a continuous space using `samples` points from its sampler.
SpaceView<double> view_of(const DistanceSpace& space, std::size_t samples, std::uint64_t seed);

}  // namespace mtfp
