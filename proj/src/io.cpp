#include "mtfp/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace mtfp {

namespace {

const json& require(const json& j, const char* key, const char* ctx) {
  if (!j.contains(key))
    throw InputError(std::string(ctx) + ": missing field '" + key + "'");
  return j.at(key);
}

double require_number(const json& j, const char* key, const char* ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_number()) throw InputError(std::string(ctx) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

Coeff coeff_from_json(const json& j, const char* key, const char* ctx) {
  if (!j.contains(key)) return Coeff(0.0);
  const json& v = j.at(key);
  if (v.is_number()) return Coeff(v.get<double>());
  if (v.is_array()) return Coeff(v.get<std::vector<double>>());
  throw InputError(std::string(ctx) + ": field '" + key + "' must be a number or an array");
}

json coeff_to_json(const Coeff& c) {
  if (c.is_table()) return json(c.table);
  return json(c.value);
}

PairCoeff pair_coeff_from_json(const json& j, const char* key, const char* ctx) {
  if (!j.contains(key)) return PairCoeff(0.0);
  const json& v = j.at(key);
  if (v.is_number()) return PairCoeff(v.get<double>());
  if (v.is_array()) return PairCoeff(v.get<std::vector<std::vector<double>>>());
  throw InputError(std::string(ctx) + ": field '" + key + "' must be a number or a matrix");
}

json pair_coeff_to_json(const PairCoeff& c) {
  if (c.is_table()) return json(c.table);
  return json(c.value);
}

}  // namespace

json to_json(const FiniteSpace& space) {
  return json{{"points", space.points},
              {"dist", space.dist},
              {"alpha", space.alpha},
              {"chain_len", space.chain_len}};
}

FiniteSpace finite_space_from_json(const json& j) {
  FiniteSpace s;
  const json& pts = require(j, "points", "space");
  if (!pts.is_array() || pts.empty()) throw InputError("space: 'points' must be a non-empty array");
  s.points = pts.get<std::vector<std::string>>();
  const json& dist = require(j, "dist", "space");
  if (!dist.is_array()) throw InputError("space: 'dist' must be a matrix");
  s.dist = dist.get<std::vector<std::vector<double>>>();
  s.alpha = number_or(j, "alpha", 1.0);
  s.chain_len = j.contains("chain_len") ? j.at("chain_len").get<int>() : 1;
  s.validate_structure();
  return s;
}

json to_json(const AxiomReport& rep, const FiniteSpace& space) {
  json d1 = json::array();
  for (const auto& v : rep.d1) d1.push_back({{"point", space.points[v.i]}, {"value", v.value}});
  json d2 = json::array();
  for (const auto& v : rep.d2)
    d2.push_back({{"i", space.points[v.i]}, {"j", space.points[v.j]}, {"dij", v.dij}, {"dji", v.dji}});
  json d3 = json::array();
  for (const auto& v : rep.d3) {
    json chain = json::array();
    for (std::size_t z : v.chain) chain.push_back(space.points[z]);
    d3.push_back({{"i", space.points[v.i]},
                  {"j", space.points[v.j]},
                  {"chain", chain},
                  {"lhs", v.lhs},
                  {"chain_sum", v.chain_sum},
                  {"bound", rep.alpha * v.chain_sum}});
  }
  return json{{"ok", rep.ok()},
              {"alpha", rep.alpha},
              {"chain_len", rep.chain_len},
              {"exhaustive", rep.exhaustive},
              {"samples", rep.samples},
              {"d1", json{{"ok", rep.d1_ok()}, {"violations", d1}}},
              {"d2", json{{"ok", rep.d2_ok()}, {"violations", d2}}},
              {"d3", json{{"ok", rep.d3_ok()}, {"violations", d3}}}};
}

namespace {

std::size_t resolve_label(const FiniteSpace& space, const json& label, const char* ctx) {
  auto idx = space.index_of(label.get<std::string>());
  if (!idx)
    throw InputError(std::string(ctx) + ": unknown point label '" + label.get<std::string>() + "'");
  return *idx;
}

}  // namespace

AxiomReport axiom_report_from_json(const json& j, const FiniteSpace& space) {
  AxiomReport rep;
  rep.alpha = j.at("alpha").get<double>();
  rep.chain_len = j.at("chain_len").get<int>();
  rep.exhaustive = j.at("exhaustive").get<bool>();
  rep.samples = j.at("samples").get<std::size_t>();
  for (const auto& v : j.at("d1").at("violations"))
    rep.d1.push_back({resolve_label(space, v.at("point"), "axiom report"), v.at("value").get<double>()});
  for (const auto& v : j.at("d2").at("violations"))
    rep.d2.push_back({resolve_label(space, v.at("i"), "axiom report"),
                      resolve_label(space, v.at("j"), "axiom report"), v.at("dij").get<double>(),
                      v.at("dji").get<double>()});
  for (const auto& v : j.at("d3").at("violations")) {
    D3Violation d3;
    d3.i = resolve_label(space, v.at("i"), "axiom report");
    d3.j = resolve_label(space, v.at("j"), "axiom report");
    for (const auto& z : v.at("chain")) d3.chain.push_back(resolve_label(space, z, "axiom report"));
    d3.lhs = v.at("lhs").get<double>();
    d3.chain_sum = v.at("chain_sum").get<double>();
    rep.d3.push_back(std::move(d3));
  }
  return rep;
}

json to_json(const MinimalAlphaResult& res, const FiniteSpace& space) {
  json j{{"bounded", res.bounded},
         {"pair", {space.points[res.arg_i], space.points[res.arg_j]}}};
  if (res.bounded) j["alpha"] = res.alpha;
  return j;
}

MinimalAlphaResult minimal_alpha_from_json(const json& j, const FiniteSpace& space) {
  MinimalAlphaResult res;
  res.bounded = j.at("bounded").get<bool>();
  res.alpha = res.bounded ? j.at("alpha").get<double>() : std::numeric_limits<double>::infinity();
  res.arg_i = resolve_label(space, j.at("pair")[0], "min-alpha report");
  res.arg_j = resolve_label(space, j.at("pair")[1], "min-alpha report");
  return res;
}

json to_json(const EpsilonNet& net, const FiniteSpace& space) {
  json centers = json::array();
  for (std::size_t c : net.centers) centers.push_back(space.points[c]);
  return json{{"epsilon", net.epsilon}, {"centers", centers}};
}

EpsilonNet epsilon_net_from_json(const json& j, const FiniteSpace& space) {
  EpsilonNet net;
  net.epsilon = j.at("epsilon").get<double>();
  for (const auto& c : j.at("centers"))
    net.centers.push_back(resolve_label(space, c, "epsilon net"));
  return net;
}

json to_json(const Certificate& cert) {
  json j;
  j["kind"] = kind_of(cert);
  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, FunctionCoefficients>) {
          j["eta"] = coeff_to_json(c.eta);
          j["lambda"] = coeff_to_json(c.lam);
          j["zeta"] = coeff_to_json(c.zeta);
          j["mu"] = coeff_to_json(c.mu);
          j["xi"] = coeff_to_json(c.xi);
        } else if constexpr (std::is_same_v<C, CorollaryCoefficients>) {
          switch (c.variant) {
            case CorollaryVariant::cor1:
              j["eta"] = coeff_to_json(c.eta);
              j["lambda"] = coeff_to_json(c.lam);
              j["mu"] = coeff_to_json(c.mu);
              break;
            case CorollaryVariant::cor2:
              j["a"] = c.a;
              j["beta"] = c.beta;
              j["gamma"] = c.gamma;
              j["k"] = c.k;
              j["l"] = c.l;
              break;
            case CorollaryVariant::cor3:
            case CorollaryVariant::cor4:
              j["beta"] = c.beta;
              break;
            case CorollaryVariant::cor5:
              j["a"] = c.a;
              j["beta"] = c.beta;
              break;
            case CorollaryVariant::cor6:
              j["a"] = c.a;
              break;
          }
        } else if constexpr (std::is_same_v<C, ImplicitCoefficients>) {
          j["a"] = c.a;
          j["beta"] = c.beta;
          j["gamma"] = c.gamma;
          j["k"] = c.k;
          j["l"] = c.l;
          j["s"] = c.s;
          j["t"] = c.t;
        } else if constexpr (std::is_same_v<C, GeneralizedCoefficients>) {
          j["alpha"] = pair_coeff_to_json(c.alpha_fn);
          j["beta"] = pair_coeff_to_json(c.beta_fn);
          j["gamma"] = pair_coeff_to_json(c.gamma_fn);
          j["delta"] = pair_coeff_to_json(c.delta_fn);
        } else if constexpr (std::is_same_v<C, Eq10Coefficients>) {
          j["lambda"] = c.lambda;
        } else if constexpr (std::is_same_v<C, Eq1mCoefficients>) {
          j["lambda1"] = c.l1;
          j["lambda2"] = c.l2;
          j["lambda3"] = c.l3;
          j["lambda4"] = c.l4;
        } else if constexpr (std::is_same_v<C, FamilyCoefficients>) {
          j["lambdas"] = c.lambda_of;
          j["beta_index"] = c.beta_index;
        } else if constexpr (std::is_same_v<C, CoupledCoefficients>) {
          j["a1"] = c.a1;
          j["a2"] = c.a2;
          j["a3"] = c.a3;
          j["a4"] = c.a4;
          j["a5"] = c.a5;
          j["a6"] = c.a6;
        } else {
          static_assert(std::is_same_v<C, CoupledCorollaryCoefficients>);
          j["alpha"] = c.alpha;
          j["beta"] = c.beta;
          if (c.variant == CoupledVariant::cor24) j["gamma"] = c.gamma;
        }
      },
      cert);
  return j;
}

Certificate certificate_from_json(const json& j) {
  std::string kind = require(j, "kind", "certificate").get<std::string>();
  const char* ctx = "certificate";
  if (kind == "theorem1") {
    FunctionCoefficients c;
    c.eta = coeff_from_json(j, "eta", ctx);
    c.lam = coeff_from_json(j, "lambda", ctx);
    c.zeta = coeff_from_json(j, "zeta", ctx);
    c.mu = coeff_from_json(j, "mu", ctx);
    c.xi = coeff_from_json(j, "xi", ctx);
    return c;
  }
  if (kind.rfind("corollary", 0) == 0 && kind.size() == 10) {
    int n = kind[9] - '0';
    if (n < 1 || n > 6) throw InputError("certificate: unknown kind '" + kind + "'");
    CorollaryCoefficients c;
    c.variant = static_cast<CorollaryVariant>(n);
    switch (c.variant) {
      case CorollaryVariant::cor1:
        c.eta = coeff_from_json(j, "eta", ctx);
        c.lam = coeff_from_json(j, "lambda", ctx);
        c.mu = coeff_from_json(j, "mu", ctx);
        break;
      case CorollaryVariant::cor2:
        c.a = number_or(j, "a", 0.0);
        c.beta = number_or(j, "beta", 0.0);
        c.gamma = number_or(j, "gamma", 0.0);
        c.k = number_or(j, "k", 0.0);
        c.l = number_or(j, "l", 0.0);
        break;
      case CorollaryVariant::cor3:
      case CorollaryVariant::cor4:
        c.beta = require_number(j, "beta", ctx);
        break;
      case CorollaryVariant::cor5:
        c.a = require_number(j, "a", ctx);
        c.beta = require_number(j, "beta", ctx);
        break;
      case CorollaryVariant::cor6:
        c.a = require_number(j, "a", ctx);
        break;
    }
    return c;
  }
  if (kind == "theorem2") {
    ImplicitCoefficients c;
    c.a = number_or(j, "a", 0.0);
    c.beta = number_or(j, "beta", 0.0);
    c.gamma = number_or(j, "gamma", 0.0);
    c.k = number_or(j, "k", 0.0);
    c.l = number_or(j, "l", 0.0);
    c.s = number_or(j, "s", 0.0);
    c.t = number_or(j, "t", 0.0);
    return c;
  }
  if (kind == "generalized") {
    GeneralizedCoefficients c;
    c.alpha_fn = pair_coeff_from_json(j, "alpha", ctx);
    c.beta_fn = pair_coeff_from_json(j, "beta", ctx);
    c.gamma_fn = pair_coeff_from_json(j, "gamma", ctx);
    c.delta_fn = pair_coeff_from_json(j, "delta", ctx);
    return c;
  }
  if (kind == "eq10") return Eq10Coefficients{require_number(j, "lambda", ctx)};
  if (kind == "eq1m") {
    Eq1mCoefficients c;
    c.l1 = number_or(j, "lambda1", 0.0);
    c.l2 = number_or(j, "lambda2", 0.0);
    c.l3 = number_or(j, "lambda3", 0.0);
    c.l4 = number_or(j, "lambda4", 0.0);
    return c;
  }
  if (kind == "family") {
    FamilyCoefficients c;
    c.lambda_of = require(j, "lambdas", ctx).get<std::vector<double>>();
    c.beta_index = require(j, "beta_index", ctx).get<std::size_t>();
    return c;
  }
  if (kind == "coupled") {
    CoupledCoefficients c;
    c.a1 = number_or(j, "a1", 0.0);
    c.a2 = number_or(j, "a2", 0.0);
    c.a3 = number_or(j, "a3", 0.0);
    c.a4 = number_or(j, "a4", 0.0);
    c.a5 = number_or(j, "a5", 0.0);
    c.a6 = number_or(j, "a6", 0.0);
    return c;
  }
  if (kind == "coupled_cor24" || kind == "coupled_cor25" || kind == "coupled_cor26") {
    CoupledCorollaryCoefficients c;
    c.variant = kind == "coupled_cor24"   ? CoupledVariant::cor24
                : kind == "coupled_cor25" ? CoupledVariant::cor25
                                          : CoupledVariant::cor26;
    c.alpha = require_number(j, "alpha", ctx);
    c.beta = require_number(j, "beta", ctx);
    if (c.variant == CoupledVariant::cor24) c.gamma = number_or(j, "gamma", 0.0);
    return c;
  }
  throw InputError("certificate: unknown kind '" + kind + "'");
}

json to_json(const ViolationReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back({{"witness", v.witness}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  json budget = json::array();
  for (const auto& b : rep.budget_failures)
    budget.push_back(
        {{"constraint", b.constraint}, {"witness", b.witness}, {"lhs", b.lhs}, {"rhs", b.rhs}});
  json j{{"kind", rep.kind},
         {"ok", rep.ok()},
         {"budget_ok", rep.budgets_ok()},
         {"exhaustive", rep.exhaustive},
         {"samples_checked", rep.samples_checked},
         {"violations", violations},
         {"budget_failures", budget}};
  if (rep.lambda) j["lambda"] = *rep.lambda;
  if (!rep.derived.empty()) j["derived"] = rep.derived;
  return j;
}

ViolationReport violation_report_from_json(const json& j) {
  ViolationReport rep;
  rep.kind = j.at("kind").get<std::string>();
  rep.exhaustive = j.at("exhaustive").get<bool>();
  rep.samples_checked = j.at("samples_checked").get<std::size_t>();
  for (const auto& v : j.at("violations"))
    rep.violations.push_back({v.at("witness").get<std::vector<std::string>>(),
                              v.at("lhs").get<double>(), v.at("rhs").get<double>()});
  for (const auto& b : j.at("budget_failures"))
    rep.budget_failures.push_back({b.at("constraint").get<std::string>(),
                                   b.at("witness").get<std::vector<std::string>>(),
                                   b.at("lhs").get<double>(), b.at("rhs").get<double>()});
  if (j.contains("lambda")) rep.lambda = j.at("lambda").get<double>();
  if (j.contains("derived"))
    rep.derived = j.at("derived").get<std::map<std::string, double>>();
  return rep;
}

std::string report_table(const ViolationReport& rep, std::size_t max_rows) {
  std::ostringstream out;
  out << "certificate " << rep.kind << (rep.ok() ? ": PASS" : ": FAIL")
      << (rep.exhaustive ? " (exhaustive, " : " (sampled, ") << rep.samples_checked
      << " tuples)\n";
  if (rep.lambda) out << "  lambda = " << format_double(*rep.lambda) << "\n";
  for (const auto& [k, v] : rep.derived) out << "  " << k << " = " << format_double(v) << "\n";
  for (const auto& b : rep.budget_failures) {
    out << "  budget failure: " << b.constraint;
    if (!b.witness.empty()) {
      out << " at (";
      for (std::size_t i = 0; i < b.witness.size(); ++i) out << (i ? ", " : "") << b.witness[i];
      out << ")";
    }
    out << "  [" << format_double(b.lhs) << " vs " << format_double(b.rhs) << "]\n";
  }
  std::size_t shown = 0;
  for (const auto& v : rep.violations) {
    if (shown++ >= max_rows) {
      out << "  ... " << (rep.violations.size() - max_rows) << " more violations\n";
      break;
    }
    out << "  violated at (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) out << (i ? ", " : "") << v.witness[i];
    out << "): lhs " << format_double(v.lhs) << " > rhs " << format_double(v.rhs) << "\n";
  }
  return out.str();
}

json to_json(const FixedPointInventory& inv, const FiniteSpace& space) {
  auto pairs = [&](const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
    json arr = json::array();
    for (auto [a, b] : ps) arr.push_back({space.points[a], space.points[b]});
    return arr;
  };
  json fixed = json::array();
  for (std::size_t p : inv.fixed_points) fixed.push_back(space.points[p]);
  return json{{"fixed_points", fixed},
              {"coupled_points", pairs(inv.coupled_points)},
              {"coincidence_points", pairs(inv.coincidence_points)},
              {"common_points", pairs(inv.common_points)}};
}

FixedPointInventory inventory_from_json(const json& j, const FiniteSpace& space) {
  FixedPointInventory inv;
  for (const auto& p : j.at("fixed_points"))
    inv.fixed_points.push_back(resolve_label(space, p, "inventory"));
  auto pairs = [&](const char* key, std::vector<std::pair<std::size_t, std::size_t>>& out) {
    for (const auto& pr : j.at(key))
      out.push_back({resolve_label(space, pr[0], "inventory"), resolve_label(space, pr[1], "inventory")});
  };
  pairs("coupled_points", inv.coupled_points);
  pairs("coincidence_points", inv.coincidence_points);
  pairs("common_points", inv.common_points);
  return inv;
}

json counterexample_bundle(const FiniteSpace& space, const json& map_spec,
                           const Certificate& cert, const FixedPointInventory& inv,
                           const ViolationReport& rep) {
  return json{{"space", to_json(space)},
              {"map", map_spec},
              {"certificate", to_json(cert)},
              {"inventory", to_json(inv, space)},
              {"certificate_report", to_json(rep)}};
}

ParsedTrace parse_trace_csv(const std::string& csv) {
  ParsedTrace tr;
  std::istringstream in(csv);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    out.push_back(cur);
    return out;
  };
  if (!std::getline(in, line)) throw InputError("trace csv: empty file");
  tr.header = split(line);
  const std::size_t cols = tr.header.size();
  const std::size_t point_cols = cols - 3;  // iter, points..., step_dist, apriori_bound
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != cols) throw InputError("trace csv: ragged row");
    tr.points.push_back({fields.begin() + 1, fields.begin() + 1 + point_cols});
    if (!fields[cols - 2].empty()) tr.step_dists.push_back(std::stod(fields[cols - 2]));
    if (!fields[cols - 1].empty()) tr.apriori_bounds.push_back(std::stod(fields[cols - 1]));
  }
  return tr;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

}  // namespace mtfp
