#include "dhm/reports.hpp"

#include <iomanip>

#include "dhm/errors.hpp"

namespace dhm {

using nlohmann::json;

namespace {

json node_value(const NodeValue& v) { return {{"node", v.node}, {"value", v.value}}; }

json bivariate(const BivariatePolynomial& p) {
  json rows = json::array();
  for (const auto& row : p.coeffs()) {
    json r = json::array();
    for (const cplx& c : row) r.push_back(to_json(c));
    rows.push_back(r);
  }
  return rows;
}

void write_value(std::ostream& out, double v) { out << std::setprecision(17) << v; }

}  // namespace

json to_json(const SpherePoint& p) { return p.at_infinity ? json("infinity") : to_json(p.z); }

json to_json(const MetricSpec& m) {
  if (m.type == "round") return {{"type", "round"}, {"c", m.c}};
  return {{"type", "conformal"}, {"lambda_num", bivariate(m.num)}, {"lambda_den", bivariate(m.den)}};
}

json to_json(const AdmissibilityReport& r) {
  json poles = json::array();
  for (const PoleVerdict& v : r.poles)
    poles.push_back({{"function", v.function},
                     {"location", to_json(v.location)},
                     {"pole_order", v.pole_order},
                     {"branch_order", v.branch_order},
                     {"verdict", v.accepted ? "accept" : "reject"}});
  json j{{"verdict", r.accepted() ? "accept" : "reject"}, {"poles", poles}, {"offending", nullptr}};
  if (const PoleVerdict* bad = r.offending())
    j["offending"] = {{"function", bad->function},
                      {"location", to_json(bad->location)},
                      {"pole_order", bad->pole_order},
                      {"branch_order", bad->branch_order}};
  return j;
}

json to_json(const ELResidualReport& r) {
  return {{"max_dirac_residual", r.max_dirac_residual},
          {"relative_dirac_residual", r.relative_dirac_residual()},
          {"max_tension_residual", r.max_tension_residual},
          {"max_coupling_residual", r.max_coupling_residual},
          {"field_scale", r.field_scale},
          {"worst_dirac", node_value(r.worst_dirac)},
          {"worst_tension", node_value(r.worst_tension)},
          {"worst_coupling", node_value(r.worst_coupling)},
          {"excluded_nodes", r.excluded_nodes},
          {"exclusions_within_limit", r.exclusions_within_limit},
          {"grid", {{"n_radial", r.n_radial}, {"n_angular", r.n_angular}, {"nodes", r.node_count}}}};
}

json to_json(const EnergyReport& r) {
  return {{"energy", r.energy},
          {"map_energy", r.map_energy},
          {"spinor_energy", r.spinor_energy},
          {"max_spinor_norm", r.max_spinor_norm},
          {"excluded_nodes", r.excluded_nodes}};
}

json to_json(const ZeroCensusReport& r) {
  json zeros = json::array();
  for (const ZeroRecord& z : r.zeros)
    zeros.push_back({{"chart", static_cast<int>(z.chart)}, {"z", to_json(z.z)}, {"order", z.order}});
  return {{"slot", to_string(r.slot)},
          {"zeros", zeros},
          {"total", r.total_order},
          {"predicted", r.predicted_total},
          {"identically_zero", r.identically_zero},
          {"max_magnitude", r.max_magnitude},
          {"matches_prediction", r.matches_prediction()}};
}

json to_json(const KernelReport& r) {
  return {{"singular_values", r.singular_values}, {"dimension", r.dimension}, {"gap_ratio", r.gap_ratio}};
}

json to_json(const DescentResult& r) {
  json theta = json::array();
  for (int i = 0; i < kThetaSize; ++i) theta.push_back(r.theta(i));
  return {{"terminal_residual", r.residual},
          {"iterations", r.trace.empty() ? 0 : static_cast<int>(r.trace.size()) - 1},
          {"accepted_steps", r.accepted_steps},
          {"converged", r.converged},
          {"budget_exhausted", r.budget_exhausted},
          {"theta", theta}};
}

json describe_pair(const DiracHarmonicPair& pair, const RunConfig& config) {
  const SurfaceMap& phi = pair.map();
  json singular = json::array();
  for (const SingularPoint& s : pair.singular_points)
    singular.push_back({{"location", to_json(s.location)}, {"type", s.type}});
  json components = json::array();
  for (Chart d : {Chart::Finite, Chart::Infinite})
    for (Chart t : {Chart::Finite, Chart::Infinite}) {
      if (!pair.psi.has(d, t)) continue;
      json c{{"domain_chart", static_cast<int>(d)}, {"target_chart", static_cast<int>(t)}};
      const SlotExprs& e = pair.psi.components(d, t);
      for (Slot s : kAllSlots) c[std::string(to_string(s))] = e[index(s)].to_string();
      components.push_back(c);
    }
  json j{{"metric_M", to_json(config.metric_m)},
         {"metric_N", to_json(config.metric_n)},
         {"map",
          {{"orientation", to_string(phi.orientation())},
           {"rational", phi.rational() ? to_json(*phi.rational()) : json(nullptr)},
           {"degree", phi.degree()}}},
         {"provenance", pair.provenance},
         {"singular_points", singular},
         {"components", components}};
  if (pair.twistor) {
    j["u1"] = to_json(pair.twistor->first);
    j["u2"] = to_json(pair.twistor->second);
  } else {
    j["u1"] = to_json(config.u1);
    j["u2"] = to_json(config.u2);
  }
  return j;
}

void write_components_csv(std::ostream& out, const TwistedSpinorField& psi, const SphereGrid& grid) {
  out << "chart,z_re,z_im,slot,value_re,value_im\n";
  for (const GridNode& node : grid.nodes()) {
    const ChartPoint& p = node.point;
    SlotValues v{};
    bool ok = true;
    try {
      v = psi.values(p);
    } catch (const Error&) {
      ok = false;
    }
    for (Slot s : kAllSlots) {
      out << static_cast<int>(p.chart) << ',';
      write_value(out, p.z.real());
      out << ',';
      write_value(out, p.z.imag());
      out << ',' << to_string(s) << ',';
      if (ok) {
        write_value(out, v[index(s)].real());
        out << ',';
        write_value(out, v[index(s)].imag());
      } else {
        out << "nan,nan";
      }
      out << '\n';
    }
  }
}

void write_trace_csv(std::ostream& out, const std::vector<DescentStep>& trace) {
  out << "iteration,residual,step_norm,accepted\n";
  for (const DescentStep& s : trace) {
    out << s.iteration << ',';
    write_value(out, s.residual);
    out << ',';
    write_value(out, s.step_norm);
    out << ',' << (s.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace dhm
