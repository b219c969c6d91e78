// Command-line front end: loads a JSON job config, runs axiom checks,
// certificate checks, solvers and oracles, and emits reports and traces.
// Exit codes: 0 success, 1 mathematical failure, 2 input error.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtfp/io.hpp"
#include "mtfp/maps.hpp"
#include "mtfp/oracle.hpp"
#include "mtfp/solvers.hpp"

namespace fs = std::filesystem;
using namespace mtfp;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  double tol = -1.0;
  long long max_iter = -1;
  long long seed = -1;
  bool has_tol = false, has_max_iter = false, has_seed = false;
};

struct Job {
  json config;
  Options opts;

  bool finite = false;
  FiniteSpace space;   // when finite
  DistanceSpace cont;  // when continuous
  std::size_t pair_samples = 64;
  std::size_t tuple_samples = 20;
  std::uint64_t seed = 0;
};

json load_config(const std::string& path) {
  json cfg;
  try {
    cfg = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError("config " + path + ": " + e.what());
  }
  if (!cfg.contains("schema") || cfg.at("schema") != 1)
    throw InputError("config: expected top-level \"schema\": 1");
  return cfg;
}

Job load_job(const Options& opts) {
  Job job;
  job.opts = opts;
  job.config = load_config(opts.config_path);
  if (!job.config.contains("space")) throw InputError("config: missing \"space\"");
  const json& sp = job.config.at("space");
  std::string kind = sp.value("kind", "finite");
  if (kind == "finite") {
    job.finite = true;
    job.space = finite_space_from_json(sp);
  } else if (kind == "interval") {
    job.finite = false;
    double low = sp.value("low", 0.0);
    double high = sp.value("high", 1.0);
    double p = sp.value("p", 2.0);
    job.cont = make_interval_space(low, high, p);
    job.pair_samples = sp.value("samples", std::size_t{64});
    job.tuple_samples = sp.value("tuple_samples", std::size_t{20});
  } else {
    throw InputError("config: unknown space kind '" + kind + "'");
  }
  if (job.config.contains("solver"))
    job.seed = job.config.at("solver").value("seed", std::uint64_t{0});
  if (opts.has_seed) job.seed = static_cast<std::uint64_t>(opts.seed);
  return job;
}

SolverConfig solver_config(const Job& job) {
  SolverConfig sc;
  if (job.config.contains("solver")) {
    const json& s = job.config.at("solver");
    sc.tol = s.value("tol", sc.tol);
    sc.max_iter = s.value("max_iter", sc.max_iter);
    std::string src = s.value("ratio_source", "certified");
    if (src == "certified") {
      sc.ratio_source = RatioSource::certified;
    } else if (src == "empirical") {
      sc.ratio_source = RatioSource::empirical;
    } else {
      throw InputError("solver: ratio_source must be \"certified\" or \"empirical\"");
    }
  }
  sc.seed = job.seed;
  if (job.opts.has_tol) sc.tol = job.opts.tol;
  if (job.opts.has_max_iter) sc.max_iter = static_cast<std::size_t>(job.opts.max_iter);
  if (!(sc.tol > 0.0)) throw InputError("solver: tol must be > 0");
  if (sc.max_iter < 1) throw InputError("solver: max_iter must be >= 1");
  return sc;
}

/// Output path for `name`: --out directory wins, then config.output.<key>.
std::string out_path(const Job& job, const char* key, const char* name) {
  if (!job.opts.out_dir.empty()) {
    fs::create_directories(job.opts.out_dir);
    return (fs::path(job.opts.out_dir) / name).string();
  }
  if (job.config.contains("output") && job.config.at("output").contains(key))
    return job.config.at("output").at(key).get<std::string>();
  return {};
}

void maybe_write(const Job& job, const char* key, const char* name, const std::string& content) {
  std::string path = out_path(job, key, name);
  if (path.empty()) return;
  write_file(path, content);
  std::cout << "wrote " << path << "\n";
}

void maybe_write_json(const Job& job, const char* key, const char* name, const json& j) {
  maybe_write(job, key, name, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Map construction
// ---------------------------------------------------------------------------

const json& map_spec(const Job& job) {
  if (!job.config.contains("map")) throw InputError("config: missing \"map\"");
  return job.config.at("map");
}

std::string map_kind(const Job& job) { return map_spec(job).value("kind", ""); }

std::vector<std::size_t> table_from_labels(const FiniteSpace& space, const json& values,
                                           const char* ctx) {
  if (!values.is_array() || values.size() != space.size())
    throw InputError(std::string(ctx) + ": need one output label per point");
  std::vector<std::size_t> t(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto idx = space.index_of(values[i].get<std::string>());
    if (!idx)
      throw InputError(std::string(ctx) + ": unknown label '" + values[i].get<std::string>() +
                       "'");
    t[i] = *idx;
  }
  return t;
}

AffineMap affine_from_json(const json& j, const Job& job, const char* ctx) {
  AffineMap m{j.value("c", 1.0), j.value("d", 0.0)};
  if (!job.finite) {
    // A self-map must keep the interval; affine maps attain extrema at the ends.
    double lo = job.config.at("space").value("low", 0.0);
    double hi = job.config.at("space").value("high", 1.0);
    for (double e : {m(lo), m(hi)}) {
      if (e < lo - 1e-12 || e > hi + 1e-12)
        throw InputError(std::string(ctx) + ": affine map leaves the interval");
    }
  }
  return m;
}

BilinearMap bilinear_from_json(const json& j, const Job& job) {
  BilinearMap m{j.value("u", 0.0), j.value("v", 0.0), j.value("w", 0.0)};
  double lo = job.config.at("space").value("low", 0.0);
  double hi = job.config.at("space").value("high", 1.0);
  for (double x : {lo, hi})
    for (double y : {lo, hi}) {
      double e = m(x, y);
      if (e < lo - 1e-12 || e > hi + 1e-12)
        throw InputError("map: bilinear map leaves the interval");
    }
  return m;
}

struct FiniteMaps {
  std::vector<std::size_t> self;
  std::vector<std::vector<std::size_t>> F;
  std::vector<std::size_t> g;  // identity when empty
  bool has_self = false, has_coupled = false;
};

FiniteMaps finite_maps(const Job& job) {
  FiniteMaps m;
  const json& spec = map_spec(job);
  std::string kind = map_kind(job);
  if (kind == "table") {
    m.self = table_from_labels(job.space, spec.at("values"), "map");
    m.has_self = true;
  } else if (kind == "pair_table") {
    const json& F = spec.at("F");
    if (!F.is_array() || F.size() != job.space.size())
      throw InputError("map: pair_table needs a square matrix of labels");
    m.F.resize(job.space.size());
    for (std::size_t i = 0; i < job.space.size(); ++i)
      m.F[i] = table_from_labels(job.space, F[i], "map.F");
    m.has_coupled = true;
    if (job.config.contains("g"))
      m.g = table_from_labels(job.space, job.config.at("g").at("values"), "g");
  } else {
    throw InputError("map: kind '" + kind + "' is not usable on a finite space");
  }
  return m;
}

struct ContinuousMaps {
  std::function<double(double)> self;
  std::vector<std::function<double(double)>> family;
  std::function<double(double, double)> F;
  std::function<double(double)> g;
  std::function<double(double)> g_inv;
  bool has_self = false, has_family = false, has_coupled = false;
};

ContinuousMaps continuous_maps(const Job& job) {
  ContinuousMaps m;
  const json& spec = map_spec(job);
  std::string kind = map_kind(job);
  if (kind == "affine") {
    AffineMap a = affine_from_json(spec, job, "map");
    m.self = a;
    m.has_self = true;
  } else if (kind == "affine_family") {
    for (const json& member : spec.at("members"))
      m.family.push_back(affine_from_json(member, job, "map.members"));
    if (m.family.empty()) throw InputError("map: empty affine family");
    m.has_family = true;
  } else if (kind == "bilinear") {
    m.F = bilinear_from_json(spec, job);
    m.has_coupled = true;
    AffineMap g{1.0, 0.0};
    if (job.config.contains("g")) g = affine_from_json(job.config.at("g"), job, "g");
    m.g = g;
    m.g_inv = affine_section(g);
  } else {
    throw InputError("map: kind '" + kind + "' is not usable on an interval space");
  }
  return m;
}

Certificate certificate(const Job& job) {
  if (!job.config.contains("certificate")) throw InputError("config: missing \"certificate\"");
  return certificate_from_json(job.config.at("certificate"));
}

CoupledCoefficients coupled_coefficients(const Certificate& cert, const char* ctx) {
  if (const auto* c = std::get_if<CoupledCoefficients>(&cert)) return *c;
  if (const auto* cc = std::get_if<CoupledCorollaryCoefficients>(&cert)) return embed(*cc);
  throw InputError(std::string(ctx) + ": a coupled map needs a coupled certificate");
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_verify_space(const Job& job) {
  AxiomReport rep;
  FiniteSpace reported;
  if (job.finite) {
    reported = job.space;
    rep = verify_axioms(job.space);
  } else {
    int chain_len = job.config.at("space").value("chain_len", 1);
    reported = materialize(job.cont, job.pair_samples, job.seed, chain_len);
    rep = verify_axioms(reported);
    rep.exhaustive = false;
  }
  std::cout << "axioms " << (rep.ok() ? (rep.exhaustive ? "hold" : "not refuted") : "FAIL")
            << " on " << rep.samples << " points (alpha " << format_double(rep.alpha)
            << ", chain length " << rep.chain_len << ")\n";
  for (const auto& v : rep.d1)
    std::cout << "  D1 violated at " << reported.points[v.i] << ": self distance "
              << format_double(v.value) << "\n";
  for (const auto& v : rep.d2)
    std::cout << "  D2 violated at (" << reported.points[v.i] << ", " << reported.points[v.j]
              << "): " << format_double(v.dij) << " vs " << format_double(v.dji) << "\n";
  std::size_t shown = 0;
  for (const auto& v : rep.d3) {
    if (shown++ >= 10) {
      std::cout << "  ... " << rep.d3.size() - 10 << " more D3 violations\n";
      break;
    }
    std::cout << "  D3 violated at (" << reported.points[v.i] << ", " << reported.points[v.j]
              << ") via (";
    for (std::size_t t = 0; t < v.chain.size(); ++t)
      std::cout << (t ? ", " : "") << reported.points[v.chain[t]];
    std::cout << "): " << format_double(v.lhs) << " > alpha * " << format_double(v.chain_sum)
              << "\n";
  }
  maybe_write_json(job, "report", "report.json", to_json(rep, reported));
  return rep.ok() ? 0 : 1;
}

int cmd_min_alpha(const Job& job) {
  FiniteSpace s = job.finite ? job.space
                             : materialize(job.cont, job.pair_samples, job.seed,
                                           job.config.at("space").value("chain_len", 1));
  MinimalAlphaResult res = minimal_alpha(s, s.chain_len);
  if (res.bounded) {
    std::cout << "minimal alpha = " << format_double(res.alpha) << " attained at ("
              << s.points[res.arg_i] << ", " << s.points[res.arg_j] << ")\n";
  } else {
    std::cout << "no finite alpha: (" << s.points[res.arg_i] << ", " << s.points[res.arg_j]
              << ") has positive distance but zero chain cost\n";
  }
  maybe_write_json(job, "report", "report.json", to_json(res, s));
  return res.bounded ? 0 : 1;
}

int cmd_epsilon_net(const Job& job) {
  if (!job.config.contains("epsilon")) throw InputError("config: missing \"epsilon\"");
  double eps = job.config.at("epsilon").get<double>();
  FiniteSpace s = job.finite ? job.space
                             : materialize(job.cont, job.pair_samples, job.seed,
                                           job.config.at("space").value("chain_len", 1));
  EpsilonNet net = greedy_epsilon_net(s, eps);
  std::cout << net.centers.size() << " centers cover the space at radius " << format_double(eps)
            << ":";
  for (std::size_t c : net.centers) std::cout << " " << s.points[c];
  std::cout << "\n";
  maybe_write_json(job, "report", "report.json", to_json(net, s));
  return 0;
}

int cmd_check(const Job& job) {
  ViolationReport rep;
  if (job.finite) {
    FiniteMaps fm = finite_maps(job);
    SpaceView<std::size_t> view = view_of(job.space);
    MapBundle<std::size_t> maps;
    if (fm.has_self) {
      auto t = fm.self;
      maps.self = [t](std::size_t i) { return t[i]; };
    }
    if (fm.has_coupled) {
      auto F = fm.F;
      maps.F = [F](std::size_t x, std::size_t y) { return F[x][y]; };
      auto g = fm.g;
      if (g.empty()) {
        maps.g = [](std::size_t i) { return i; };
      } else {
        maps.g = [g](std::size_t i) { return g[i]; };
      }
    }
    rep = run_check(view, maps, certificate(job));
  } else {
    ContinuousMaps cm = continuous_maps(job);
    // Coupled conditions quantify over 4-tuples; keep that point set smaller.
    std::size_t samples = cm.has_coupled ? job.tuple_samples : job.pair_samples;
    SpaceView<double> view = view_of(job.cont, samples, job.seed);
    MapBundle<double> maps;
    maps.self = cm.self;
    maps.family = cm.family;
    maps.F = cm.F;
    maps.g = cm.g;
    rep = run_check(view, maps, certificate(job));
  }
  std::cout << report_table(rep);
  maybe_write_json(job, "report", "report.json", to_json(rep));
  return rep.ok() ? 0 : 1;
}

template <class P>
std::optional<double> solve_lambda(const Job& job, const SpaceView<P>& view,
                                   std::optional<std::size_t> x0_index) {
  if (job.config.contains("solver") && job.config.at("solver").contains("lambda"))
    return job.config.at("solver").at("lambda").get<double>();
  if (!job.config.contains("certificate")) return std::nullopt;
  return certified_lambda(certificate(job), view, x0_index);
}

json trace_summary(Termination t, std::size_t iterations, double lambda, const SolverConfig& sc) {
  json j;
  j["terminated"] = to_string(t);
  j["iterations"] = iterations;
  j["lambda"] = lambda;
  j["ratio_source"] = sc.ratio_source == RatioSource::certified ? "certified" : "empirical";
  j["tol"] = sc.tol;
  j["seed"] = sc.seed;
  return j;
}

int finish_solve(const Job& job, const json& summary, const std::string& csv, bool ok) {
  std::cout << "solve " << summary.at("terminated").get<std::string>() << " after "
            << summary.at("iterations").get<std::size_t>() << " iterations (lambda "
            << format_double(summary.at("lambda").get<double>()) << ")"
            << (ok ? "" : " [FAILED]") << "\n";
  maybe_write(job, "trace_csv", "trace.csv", csv);
  maybe_write_json(job, "summary", "summary.json", summary);
  return ok ? 0 : 1;
}

int cmd_solve(const Job& job) {
  SolverConfig sc = solver_config(job);
  const json solver = job.config.contains("solver") ? job.config.at("solver") : json::object();

  if (job.finite) {
    FiniteMaps fm = finite_maps(job);
    SpaceView<std::size_t> view = view_of(job.space);
    std::function<std::string(const std::size_t&)> label_fn = [&](const std::size_t& i) {
      return job.space.points[i];
    };
    auto point_index = [&](const char* key) -> std::size_t {
      if (!solver.contains(key)) throw InputError(std::string("solver: missing \"") + key + "\"");
      std::string l = solver.at(key).get<std::string>();
      auto idx = job.space.index_of(l);
      if (!idx) throw InputError("solver: unknown start label '" + l + "'");
      return *idx;
    };
    if (fm.has_self) {
      std::size_t x0 = point_index("x0");
      auto t = fm.self;
      std::function<std::size_t(std::size_t)> f = [t](std::size_t i) { return t[i]; };
      SolveResult<std::size_t> res =
          picard<std::size_t>(view, f, x0, solve_lambda(job, view, x0), sc);
      json summary =
          trace_summary(res.trace.terminated, res.trace.iterates.size() - 1, res.trace.ratio, sc);
      summary["solver"] = "picard";
      summary["fixed_point"] = job.space.points[res.fixed_point];
      summary["residual"] = res.residual;
      return finish_solve(job, summary, trace_csv(res.trace, label_fn),
                          res.converged() && res.residual <= sc.tol);
    }
    // pair_table: coupled solve through the smallest-preimage section of g.
    auto F = fm.F;
    std::vector<std::size_t> g = fm.g;
    if (g.empty()) {
      g.resize(job.space.size());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
    }
    auto sec = table_section(g);
    std::function<std::size_t(std::size_t, std::size_t)> Ff = [F](std::size_t x, std::size_t y) {
      return F[x][y];
    };
    std::function<std::size_t(std::size_t)> gf = [g](std::size_t i) { return g[i]; };
    std::function<std::size_t(std::size_t)> gsec = [sec](std::size_t z) {
      if (!sec[z]) throw SectionError("g section: value outside the range of g");
      return *sec[z];
    };
    CoupledCoefficients coeffs = coupled_coefficients(certificate(job), "solve");
    CoupledResult<std::size_t> res = coupled_solve<std::size_t>(
        view, Ff, gf, gsec, point_index("x0"), point_index("y0"), coeffs, sc);
    json summary =
        trace_summary(res.trace.terminated, res.trace.iterates.size() - 1, res.trace.ratio, sc);
    summary["solver"] = "coupled";
    summary["pair"] = {job.space.points[res.x], job.space.points[res.y]};
    summary["residuals"] = {{"x", res.residual_x}, {"y", res.residual_y}};
    CommonFixedPointResult<std::size_t> common =
        coupled_common_fixed_point<std::size_t>(view, Ff, gf, res.x, res.y, sc);
    json cj{{"status", to_string(common.status)},
            {"w_compat_residual", common.w_compat_residual},
            {"diagonal_residual", common.diagonal_residual}};
    if (common.z) {
      cj["z"] = job.space.points[*common.z];
      cj["z_fixed_residual"] = common.z_fixed_residual;
      cj["z_g_residual"] = common.z_g_residual;
    }
    summary["common_fixed_point"] = cj;
    return finish_solve(job, summary, trace_csv(res.trace, label_fn),
                        res.converged() && res.residuals_within_tol);
  }

  ContinuousMaps cm = continuous_maps(job);
  SpaceView<double> view = view_of(job.cont, job.pair_samples, job.seed);
  std::function<std::string(const double&)> label_fn = [](const double& x) {
    return format_double(x);
  };
  auto start = [&](const char* key) -> double {
    if (!solver.contains(key)) throw InputError(std::string("solver: missing \"") + key + "\"");
    return solver.at(key).get<double>();
  };

  if (cm.has_self) {
    SolveResult<double> res =
        picard<double>(view, cm.self, start("x0"), solve_lambda(job, view, std::nullopt), sc);
    json summary =
        trace_summary(res.trace.terminated, res.trace.iterates.size() - 1, res.trace.ratio, sc);
    summary["solver"] = "picard";
    summary["fixed_point"] = res.fixed_point;
    summary["residual"] = res.residual;
    return finish_solve(job, summary, trace_csv(res.trace, label_fn),
                        res.converged() && res.residual <= sc.tol);
  }
  if (cm.has_family) {
    Certificate cert = certificate(job);
    const auto* fam = std::get_if<FamilyCoefficients>(&cert);
    if (!fam) throw InputError("solve: an indexed family needs a family certificate");
    std::size_t alpha_index = solver.value("alpha_index", std::size_t{0});
    FamilyResult<double> res =
        family_solve<double>(view, cm.family, alpha_index, fam->beta_index, start("x0"), *fam, sc);
    json summary =
        trace_summary(res.trace.terminated, res.trace.iterates.size() - 1, res.trace.ratio, sc);
    summary["solver"] = "family";
    summary["fixed_point"] = res.fixed_point;
    summary["residuals"] = {{"alpha", res.residual_alpha}, {"beta", res.residual_beta}};
    return finish_solve(job, summary, trace_csv(res.trace, label_fn),
                        res.converged() && res.residuals_within_tol);
  }
  CoupledCoefficients coeffs = coupled_coefficients(certificate(job), "solve");
  CoupledResult<double> res =
      coupled_solve<double>(view, cm.F, cm.g, cm.g_inv, start("x0"), start("y0"), coeffs, sc);
  json summary =
      trace_summary(res.trace.terminated, res.trace.iterates.size() - 1, res.trace.ratio, sc);
  summary["solver"] = "coupled";
  summary["pair"] = {res.x, res.y};
  summary["residuals"] = {{"x", res.residual_x}, {"y", res.residual_y}};
  CommonFixedPointResult<double> common =
      coupled_common_fixed_point<double>(view, cm.F, cm.g, res.x, res.y, sc);
  json cj{{"status", to_string(common.status)},
          {"w_compat_residual", common.w_compat_residual},
          {"diagonal_residual", common.diagonal_residual}};
  if (common.z) {
    cj["z"] = *common.z;
    cj["z_fixed_residual"] = common.z_fixed_residual;
    cj["z_g_residual"] = common.z_g_residual;
  }
  summary["common_fixed_point"] = cj;
  return finish_solve(job, summary, trace_csv(res.trace, label_fn),
                      res.converged() && res.residuals_within_tol);
}

int cmd_oracle(const Job& job) {
  if (!job.finite) throw InputError("oracle: brute-force scans need a finite space");
  FiniteMaps fm = finite_maps(job);
  FixedPointInventory inv = fm.has_self ? enumerate_fixed_points(job.space, fm.self)
                                        : enumerate_coupled(job.space, fm.F, fm.g);
  json j = to_json(inv, job.space);
  std::cout << "fixed points: " << j["fixed_points"].dump()
            << "\ncoupled: " << j["coupled_points"].dump()
            << "\ncoincidence: " << j["coincidence_points"].dump()
            << "\ncommon: " << j["common_points"].dump() << "\n";
  maybe_write_json(job, "inventory", "inventory.json", j);
  return 0;
}

int cmd_cross_check(const Job& job) {
  if (!job.finite) throw InputError("cross-check: needs a finite space");
  SolverConfig sc = solver_config(job);
  FiniteMaps fm = finite_maps(job);
  SpaceView<std::size_t> view = view_of(job.space);
  Certificate cert = certificate(job);
  const json solver = job.config.contains("solver") ? job.config.at("solver") : json::object();
  auto point_index = [&](const char* key) -> std::size_t {
    if (!solver.contains(key)) throw InputError(std::string("solver: missing \"") + key + "\"");
    auto idx = job.space.index_of(solver.at(key).get<std::string>());
    if (!idx) throw InputError("solver: unknown start label");
    return *idx;
  };

  CrossCheckResult res;
  if (fm.has_self) {
    auto t = fm.self;
    std::function<std::size_t(std::size_t)> f = [t](std::size_t i) { return t[i]; };
    std::size_t x0 = point_index("x0");
    SolveResult<std::size_t> sol = picard<std::size_t>(view, f, x0, solve_lambda(job, view, x0), sc);
    if (!sol.converged()) {
      std::cout << "solver did not converge: " << to_string(sol.trace.terminated) << "\n";
      return 1;
    }
    res = cross_check(job.space, fm.self, cert, sol.fixed_point);
  } else {
    std::vector<std::size_t> g = fm.g;
    if (g.empty()) {
      g.resize(job.space.size());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
    }
    auto sec = table_section(g);
    auto F = fm.F;
    std::function<std::size_t(std::size_t, std::size_t)> Ff = [F](std::size_t x, std::size_t y) {
      return F[x][y];
    };
    std::function<std::size_t(std::size_t)> gf = [g](std::size_t i) { return g[i]; };
    std::function<std::size_t(std::size_t)> gsec = [sec](std::size_t z) {
      if (!sec[z]) throw SectionError("g section: value outside the range of g");
      return *sec[z];
    };
    CoupledCoefficients coeffs = coupled_coefficients(cert, "cross-check");
    CoupledResult<std::size_t> sol = coupled_solve<std::size_t>(
        view, Ff, gf, gsec, point_index("x0"), point_index("y0"), coeffs, sc);
    if (!sol.converged()) {
      std::cout << "solver did not converge: " << to_string(sol.trace.terminated) << "\n";
      return 1;
    }
    CommonFixedPointResult<std::size_t> common =
        coupled_common_fixed_point<std::size_t>(view, Ff, gf, sol.x, sol.y, sc);
    if (!common.ok()) {
      std::cout << "common fixed point step failed: " << to_string(common.status) << "\n";
      return 1;
    }
    res = cross_check_coupled(job.space, fm.F, fm.g, cert, *common.z);
  }

  json verdict{{"ok", res.ok},
               {"reason", res.reason},
               {"inventory", to_json(res.inventory, job.space)},
               {"certificate_report", to_json(res.certificate_report)}};
  std::cout << "cross-check " << (res.ok ? "OK" : ("FAILED: " + res.reason)) << "\n";
  maybe_write_json(job, "verdict", "verdict.json", verdict);
  if (!res.ok) {
    maybe_write_json(
        job, "bundle", "bundle.json",
        counterexample_bundle(job.space, map_spec(job), cert, res.inventory,
                              res.certificate_report));
  }
  return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric type spaces: axiom checks, contraction certificates, fixed-point solvers"};
  app.require_subcommand(1);

  Options opts;
  int code = 0;
  auto add_common = [&](CLI::App* cmd, int (*handler)(const Job&)) {
    cmd->add_option("--config", opts.config_path, "job config (JSON, schema 1)")->required();
    cmd->add_option("--out", opts.out_dir, "directory for output files");
    auto* t = cmd->add_option("--tol", opts.tol, "override solver tolerance");
    auto* m = cmd->add_option("--max-iter", opts.max_iter, "override iteration budget");
    auto* s = cmd->add_option("--seed", opts.seed, "override sampling seed");
    cmd->callback([&opts, &code, t, m, s, handler]() {
      opts.has_tol = t->count() > 0;
      opts.has_max_iter = m->count() > 0;
      opts.has_seed = s->count() > 0;
      code = handler(load_job(opts));
    });
  };

  add_common(app.add_subcommand("verify-space", "check the distance axioms"), cmd_verify_space);
  add_common(app.add_subcommand("min-alpha", "smallest admissible relaxation coefficient"),
             cmd_min_alpha);
  add_common(app.add_subcommand("epsilon-net", "greedy covering net"), cmd_epsilon_net);
  add_common(app.add_subcommand("check", "verify a contraction certificate"), cmd_check);
  add_common(app.add_subcommand("solve", "run the matching fixed-point iteration"), cmd_solve);
  add_common(app.add_subcommand("oracle", "brute-force fixed-point inventory"), cmd_oracle);
  add_common(app.add_subcommand("cross-check", "solver vs oracle under a certificate"),
             cmd_cross_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
