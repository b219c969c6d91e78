#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "mtfp/io.hpp"
#include "mtfp/solvers.hpp"

using namespace mtfp;
using testutil::three_point_space;

TEST_CASE("finite space survives a JSON round trip") {
  FiniteSpace s = three_point_space();
  json j = to_json(s);
  FiniteSpace back = finite_space_from_json(j);
  CHECK(back.points == s.points);
  CHECK(back.dist == s.dist);
  CHECK(back.alpha == s.alpha);
  CHECK(back.chain_len == s.chain_len);
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("space loader rejects structural problems but not axiom failures") {
  CHECK_THROWS_AS(finite_space_from_json(json{{"points", json::array()}, {"dist", json::array()}}),
                  InputError);
  json j = to_json(three_point_space());
  j["dist"][0].erase(2);
  CHECK_THROWS_AS(finite_space_from_json(j), InputError);

  // Asymmetry is loadable; verify_axioms reports it as a D2 violation.
  j = to_json(three_point_space());
  j["dist"][0][1] = 0.3;
  FiniteSpace s = finite_space_from_json(j);
  CHECK_FALSE(verify_axioms(s).d2_ok());
}

TEST_CASE("every certificate kind round-trips through its tagged JSON form") {
  std::vector<Certificate> certs;
  FunctionCoefficients t1;
  t1.eta = 0.25;
  t1.lam = Coeff(std::vector<double>{0.1, 0.2, 0.3});
  certs.push_back(t1);
  CorollaryCoefficients c1;
  c1.variant = CorollaryVariant::cor1;
  c1.eta = 0.1;
  c1.lam = 0.05;
  c1.mu = 0.02;
  certs.push_back(c1);
  for (int v = 2; v <= 6; ++v) {
    CorollaryCoefficients c;
    c.variant = static_cast<CorollaryVariant>(v);
    c.a = 0.25;
    c.beta = 0.125;
    c.gamma = 0.1;
    c.k = 0.05;
    c.l = 0.01;
    certs.push_back(c);
  }
  ImplicitCoefficients t2;
  t2.a = 1.0;
  t2.gamma = 2.0;
  t2.k = 2.0;
  t2.t = 2.0;
  t2.s = 1.3;
  certs.push_back(t2);
  GeneralizedCoefficients gen;
  gen.alpha_fn = 0.25;
  gen.delta_fn = PairCoeff(std::vector<std::vector<double>>{{0.0, 0.1}, {0.1, 0.0}});
  certs.push_back(gen);
  certs.push_back(Eq10Coefficients{0.5});
  certs.push_back(Eq1mCoefficients{0.1, 0.2, 0.05, 0.05});
  FamilyCoefficients fam;
  fam.lambda_of = {0.125, 0.25};
  fam.beta_index = 1;
  certs.push_back(fam);
  CoupledCoefficients cp;
  cp.a1 = 0.125;
  cp.a3 = 0.125;
  certs.push_back(cp);
  for (auto variant : {CoupledVariant::cor24, CoupledVariant::cor25, CoupledVariant::cor26}) {
    CoupledCorollaryCoefficients cc;
    cc.variant = variant;
    cc.alpha = 0.125;
    cc.beta = 0.125;
    cc.gamma = 0.01;
    certs.push_back(cc);
  }

  for (const Certificate& cert : certs) {
    json j = to_json(cert);
    Certificate back = certificate_from_json(j);
    CHECK(kind_of(back) == kind_of(cert));
    CHECK(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("unknown certificate kinds are schema errors") {
  CHECK_THROWS_AS(certificate_from_json(json{{"kind", "corollary9"}}), InputError);
  CHECK_THROWS_AS(certificate_from_json(json{{"kind", "nope"}}), InputError);
  CHECK_THROWS_AS(certificate_from_json(json{{"a", 0.5}}), InputError);
}

TEST_CASE("violation reports round-trip through JSON") {
  ViolationReport rep;
  rep.kind = "corollary6";
  rep.exhaustive = true;
  rep.samples_checked = 9;
  rep.lambda = 0.25;
  rep.derived["picard_ratio"] = 0.25;
  rep.violations.push_back({{"a", "c"}, 0.5, 0.45});
  rep.budget_failures.push_back({"a < 1", {}, 1.5, 1.0});
  json j = to_json(rep);
  ViolationReport back = violation_report_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK_FALSE(back.ok());
  CHECK(report_table(back).find("FAIL") != std::string::npos);
}

TEST_CASE("trace CSV round-trips at full precision") {
  SpaceView<double> view = view_of(make_interval_space(0.0, 1.0, 2.0), 16, 3);
  std::function<double(double)> halve = [](double x) { return x / 2.0; };
  SolveResult<double> res = picard<double>(view, halve, 0.7, 0.25);
  std::function<std::string(const double&)> label = [](const double& x) {
    return format_double(x);
  };
  std::string csv = trace_csv(res.trace, label);
  ParsedTrace parsed = parse_trace_csv(csv);
  REQUIRE(parsed.points.size() == res.trace.iterates.size());
  REQUIRE(parsed.step_dists.size() == res.trace.step_dists.size());
  for (std::size_t n = 0; n < parsed.step_dists.size(); ++n) {
    CHECK(parsed.step_dists[n] == res.trace.step_dists[n]);
    CHECK(std::stod(parsed.points[n][0]) == res.trace.iterates[n]);
  }
  for (std::size_t n = 0; n < parsed.apriori_bounds.size(); ++n)
    CHECK(parsed.apriori_bounds[n] == res.trace.apriori_bounds[n]);
}

TEST_CASE("coupled trace CSV carries both components") {
  SpaceView<double> view = view_of(make_interval_space(0.0, 1.0, 2.0), 16, 3);
  std::function<double(double, double)> F = [](double x, double y) { return (x + y) / 4.0; };
  std::function<double(double)> id = [](double x) { return x; };
  CoupledCoefficients coeffs;
  coeffs.a1 = 0.125;
  coeffs.a3 = 0.125;
  CoupledResult<double> res = coupled_solve<double>(view, F, id, id, 1.0, 0.25, coeffs);
  std::function<std::string(const double&)> label = [](const double& x) {
    return format_double(x);
  };
  std::string csv = trace_csv(res.trace, label);
  ParsedTrace parsed = parse_trace_csv(csv);
  REQUIRE(parsed.header.size() == 5);
  REQUIRE(parsed.points.size() == res.trace.iterates.size());
  for (std::size_t n = 0; n < parsed.points.size(); ++n) {
    CHECK(std::stod(parsed.points[n][0]) == res.trace.iterates[n].first);
    CHECK(std::stod(parsed.points[n][1]) == res.trace.iterates[n].second);
  }
}

TEST_CASE("inventory serialization uses point labels") {
  FiniteSpace s = three_point_space();
  FixedPointInventory inv = enumerate_fixed_points(s, {0, 0, 0});
  json j = to_json(inv, s);
  CHECK(j["fixed_points"] == json::array({"a"}));
  FixedPointInventory back = inventory_from_json(j, s);
  CHECK(back.fixed_points == inv.fixed_points);
}

TEST_CASE("axiom, min-alpha, and net reports re-parse into their structures") {
  FiniteSpace s = three_point_space(1.0);
  AxiomReport rep = verify_axioms(s);
  AxiomReport back = axiom_report_from_json(to_json(rep, s), s);
  CHECK(to_json(back, s).dump() == to_json(rep, s).dump());
  REQUIRE_FALSE(back.d3_ok());
  CHECK(back.d3[0].lhs == rep.d3[0].lhs);

  MinimalAlphaResult ma = minimal_alpha(s, 1);
  MinimalAlphaResult ma_back = minimal_alpha_from_json(to_json(ma, s), s);
  CHECK(ma_back.alpha == ma.alpha);
  CHECK(ma_back.arg_i == ma.arg_i);
  CHECK(ma_back.arg_j == ma.arg_j);

  EpsilonNet net = greedy_epsilon_net(s, 0.25);
  EpsilonNet net_back = epsilon_net_from_json(to_json(net, s), s);
  CHECK(net_back.centers == net.centers);
  CHECK(net_back.epsilon == net.epsilon);
}
