#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "mtfp/oracle.hpp"
#include "mtfp/solvers.hpp"

using namespace mtfp;
using testutil::three_point_space;

TEST_CASE("identity map: every point is fixed") {
  std::vector<std::size_t> f{0, 1, 2};
  FixedPointInventory inv = enumerate_fixed_points(three_point_space(), f);
  CHECK(inv.fixed_points == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("constant map: exactly the target is fixed") {
  std::vector<std::size_t> f{0, 0, 0};
  FixedPointInventory inv = enumerate_fixed_points(three_point_space(), f);
  CHECK(inv.fixed_points == std::vector<std::size_t>{0});
}

TEST_CASE("random map inventory matches an order-reversed second scan") {
  SplitMix64 rng(61);
  for (int it = 0; it < 20; ++it) {
    FiniteSpace s = testutil::random_space(rng, 6);
    std::vector<std::size_t> f = testutil::random_self_map(rng, 6);
    FixedPointInventory inv = enumerate_fixed_points(s, f);
    std::vector<std::size_t> reversed;
    for (std::size_t p = s.size(); p-- > 0;) {
      if (f[p] == p) reversed.push_back(p);
    }
    std::reverse(reversed.begin(), reversed.end());
    CHECK(inv.fixed_points == reversed);
  }
}

TEST_CASE("inventory commutes with relabeling permutations") {
  SplitMix64 rng(62);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 5;
    FiniteSpace s = testutil::random_space(rng, n);
    std::vector<std::size_t> f = testutil::random_self_map(rng, n);
    // Random permutation sigma.
    std::vector<std::size_t> sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
    for (std::size_t i = n; i-- > 1;) std::swap(sigma[i], sigma[rng.below(i + 1)]);

    FiniteSpace rs;
    rs.alpha = s.alpha;
    rs.chain_len = s.chain_len;
    rs.points.resize(n);
    rs.dist.assign(n, std::vector<double>(n, 0.0));
    std::vector<std::size_t> rf(n);
    for (std::size_t i = 0; i < n; ++i) {
      rs.points[sigma[i]] = s.points[i];
      rf[sigma[i]] = sigma[f[i]];
      for (std::size_t j = 0; j < n; ++j) rs.dist[sigma[i]][sigma[j]] = s.dist[i][j];
    }

    FixedPointInventory inv = enumerate_fixed_points(s, f);
    FixedPointInventory rinv = enumerate_fixed_points(rs, rf);
    std::vector<std::size_t> mapped;
    for (std::size_t p : inv.fixed_points) mapped.push_back(sigma[p]);
    std::sort(mapped.begin(), mapped.end());
    CHECK(rinv.fixed_points == mapped);
  }
}

TEST_CASE("distinct points at distance zero are rejected by the pre-pass") {
  FiniteSpace s = three_point_space();
  s.dist[0][1] = s.dist[1][0] = 0.0;
  CHECK_THROWS_AS(enumerate_fixed_points(s, {0, 1, 2}), InputError);
}

TEST_CASE("map output outside the space is a structural error") {
  CHECK_THROWS_AS(enumerate_fixed_points(three_point_space(), {0, 1, 7}), InputError);
  CHECK_THROWS_AS(enumerate_fixed_points(three_point_space(), {0, 1}), InputError);
}

TEST_CASE("coupled inventory distinguishes fixed, coincidence and common pairs") {
  FiniteSpace s = three_point_space();
  // F(x,y) = x: every ordered pair is coupled-fixed; with g = shift, the
  // coincidence condition x = g(x) shifted fails everywhere.
  std::vector<std::vector<std::size_t>> F{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
  FixedPointInventory inv = enumerate_coupled(s, F, {});
  CHECK(inv.coupled_points.size() == 9);
  CHECK(inv.coincidence_points.size() == 9);  // g = id makes them coincide
  CHECK(inv.common_points.size() == 9);

  std::vector<std::size_t> g{1, 2, 0};
  inv = enumerate_coupled(s, F, g);
  CHECK(inv.coupled_points.size() == 9);
  CHECK(inv.coincidence_points.empty());
  CHECK(inv.common_points.empty());
}

TEST_CASE("cross-check: constant map with a zero contraction certificate") {
  FiniteSpace s = three_point_space();
  std::vector<std::size_t> f{0, 0, 0};
  CorollaryCoefficients banach;
  banach.variant = CorollaryVariant::cor6;
  banach.a = 0.0;
  CrossCheckResult res = cross_check(s, f, banach, 0);
  CHECK(res.ok);
  CHECK(res.inventory.fixed_points == std::vector<std::size_t>{0});

  res = cross_check(s, f, banach, 1);  // wrong solver output
  CHECK_FALSE(res.ok);
  CHECK(res.reason == "solver_mismatch");
}

TEST_CASE("cross-check on the truncated halving orbit set") {
  // Points {0} and 2^-k for k = 0..10, with f(x) = x/2 truncated to 0 at the
  // smallest positive point, so the set is closed under f.
  FiniteSpace s;
  s.chain_len = 1;
  s.points.push_back("0");
  std::vector<double> xs{0.0};
  for (int k = 10; k >= 0; --k) {
    xs.push_back(std::ldexp(1.0, -k));
    s.points.push_back(format_double(std::ldexp(1.0, -k)));
  }
  const std::size_t n = xs.size();
  s.dist.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.dist[i][j] = (xs[i] - xs[j]) * (xs[i] - xs[j]);
  s.alpha = 1.0;
  s.alpha = minimal_alpha(s, 1).alpha;
  REQUIRE(verify_axioms(s).ok());

  std::vector<std::size_t> f(n);
  f[0] = 0;
  f[1] = 0;  // 2^-10 -> 0
  for (std::size_t i = 2; i < n; ++i) f[i] = i - 1;

  FixedPointInventory inv = enumerate_fixed_points(s, f);
  CHECK(inv.fixed_points == std::vector<std::size_t>{0});

  // The max-type certificate absorbs the ratio-1 tail step (through the
  // averaged cross term), where a plain contraction constant cannot.
  Eq10Coefficients cert{0.6};
  SpaceView<std::size_t> view = view_of(s);
  std::function<std::size_t(std::size_t)> fn = [&f](std::size_t i) { return f[i]; };
  REQUIRE(check_eq10(view, fn, cert).ok());

  SolveResult<std::size_t> sol = picard<std::size_t>(view, fn, 1, 0.25);
  REQUIRE(sol.converged());
  CrossCheckResult res = cross_check(s, f, Certificate{cert}, sol.fixed_point);
  CHECK(res.ok);
}

TEST_CASE("cross-check rejects a certificate that fails exhaustively") {
  FiniteSpace s = three_point_space();
  std::vector<std::size_t> f{0, 1, 2};  // identity: three fixed points
  CorollaryCoefficients banach;
  banach.variant = CorollaryVariant::cor6;
  banach.a = 0.9;
  CrossCheckResult res = cross_check(s, f, banach, 0);
  CHECK_FALSE(res.ok);
  CHECK(res.reason == "certificate_failed");
}

TEST_CASE("coupled cross-check on a constant binary map") {
  FiniteSpace s = three_point_space();
  std::vector<std::vector<std::size_t>> F(3, std::vector<std::size_t>(3, 0));
  CrossCheckResult res = cross_check_coupled(s, F, {}, CoupledCoefficients{}, 0);
  CHECK(res.ok);
  REQUIRE(res.inventory.common_points.size() == 1);
  CHECK(res.inventory.common_points.front() == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("contrapositive mini-sweep: two fixed points admit no certificate") {
  SplitMix64 rng(63);
  FiniteSpace s = testutil::random_space(rng, 4);
  std::vector<std::size_t> f = testutil::two_fixed_point_map(rng, 4);
  SweepOutcome out = contrapositive_sweep(s, f, 1.0 / 8.0);
  CHECK(out.certificates_tried > 100);
  CHECK(out.passed.empty());
}

TEST_CASE("contrapositive sweep does find certificates for a genuine contraction") {
  // Sanity check of the sweep itself: a constant map admits many certificates.
  FiniteSpace s = three_point_space();
  std::vector<std::size_t> f{0, 0, 0};
  SweepOutcome out = contrapositive_sweep(s, f, 1.0 / 4.0);
  CHECK_FALSE(out.passed.empty());
}
