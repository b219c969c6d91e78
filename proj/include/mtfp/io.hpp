#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mtfp/certificates.hpp"
#include "mtfp/oracle.hpp"
#include "mtfp/solvers.hpp"
#include "mtfp/space.hpp"

namespace mtfp {

using json = nlohmann::json;

// Spaces. The distance matrix must be given fully (both triangles); the
// loader verifies shape only and never mirrors — symmetry is an axiom checked
// by verify_axioms.
json to_json(const FiniteSpace& space);
FiniteSpace finite_space_from_json(const json& j);

json to_json(const AxiomReport& rep, const FiniteSpace& space);
AxiomReport axiom_report_from_json(const json& j, const FiniteSpace& space);
json to_json(const MinimalAlphaResult& res, const FiniteSpace& space);
MinimalAlphaResult minimal_alpha_from_json(const json& j, const FiniteSpace& space);
json to_json(const EpsilonNet& net, const FiniteSpace& space);
EpsilonNet epsilon_net_from_json(const json& j, const FiniteSpace& space);

// Certificates: tagged union keyed on "kind".
Certificate certificate_from_json(const json& j);
json to_json(const Certificate& cert);

json to_json(const ViolationReport& rep);
ViolationReport violation_report_from_json(const json& j);
std::string report_table(const ViolationReport& rep, std::size_t max_rows = 10);

json to_json(const FixedPointInventory& inv, const FiniteSpace& space);
FixedPointInventory inventory_from_json(const json& j, const FiniteSpace& space);

/// Counterexample bundle: one document embedding space, map table,
/// certificate and inventory for offline inspection.
json counterexample_bundle(const FiniteSpace& space, const json& map_spec,
                           const Certificate& cert, const FixedPointInventory& inv,
                           const ViolationReport& rep);

// Trace CSV: columns iter,point[,point_y],step_dist,apriori_bound with
// 17-significant-digit values and '.' decimal.
template <class P>
std::string trace_csv(const ConvergenceTrace<P>& tr,
                      const std::function<std::string(const P&)>& label) {
  std::string out = "iter,point,step_dist,apriori_bound\n";
  for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += label(tr.iterates[n]);
    out += ',';
    if (n < tr.step_dists.size()) out += format_double(tr.step_dists[n]);
    out += ',';
    if (n < tr.apriori_bounds.size()) out += format_double(tr.apriori_bounds[n]);
    out += '\n';
  }
  return out;
}

template <class P>
std::string trace_csv(const ConvergenceTrace<std::pair<P, P>>& tr,
                      const std::function<std::string(const P&)>& label) {
  std::string out = "iter,point_x,point_y,step_dist,apriori_bound\n";
  for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += label(tr.iterates[n].first);
    out += ',';
    out += label(tr.iterates[n].second);
    out += ',';
    if (n < tr.step_dists.size()) out += format_double(tr.step_dists[n]);
    out += ',';
    if (n < tr.apriori_bounds.size()) out += format_double(tr.apriori_bounds[n]);
    out += '\n';
  }
  return out;
}

/// Re-parsed trace file; point columns stay textual, numeric columns parse
/// back to the doubles that produced them.
struct ParsedTrace {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> points;  // one entry per row
  std::vector<double> step_dists;                // rows with a step value
  std::vector<double> apriori_bounds;
};
ParsedTrace parse_trace_csv(const std::string& csv);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mtfp
