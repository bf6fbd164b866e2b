#include "dhm/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + " must be a JSON object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail("unknown field '" + it.key() + "' in " + where);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<int>();
}

double positive(const json& j, const std::string& where) {
  const double v = number(j, where);
  if (!(v > 0.0)) fail(where + " must be positive");
  return v;
}

cplx complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(where + " must be a number or [re, im]");
}

BivariatePolynomial bivariate_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + " must be a non-empty 2D coefficient array");
  std::vector<std::vector<cplx>> a;
  for (const json& row : j) {
    if (!row.is_array() || row.empty()) fail(where + " rows must be non-empty arrays");
    std::vector<cplx> r;
    for (const json& c : row) r.push_back(complex_from_json(c, where));
    a.push_back(std::move(r));
  }
  return BivariatePolynomial(std::move(a));
}

MetricSpec metric_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  MetricSpec m;
  if (!j.contains("type") || !j["type"].is_string()) fail(where + ".type must be \"round\" or \"conformal\"");
  m.type = j["type"].get<std::string>();
  if (m.type == "round") {
    reject_unknown(j, {"type", "c"}, where);
    if (j.contains("c")) m.c = positive(j["c"], where + ".c");
  } else if (m.type == "conformal") {
    reject_unknown(j, {"type", "lambda_num", "lambda_den"}, where);
    if (!j.contains("lambda_num") || !j.contains("lambda_den"))
      fail(where + " needs lambda_num and lambda_den");
    m.num = bivariate_from_json(j["lambda_num"], where + ".lambda_num");
    m.den = bivariate_from_json(j["lambda_den"], where + ".lambda_den");
  } else {
    fail(where + ".type must be \"round\" or \"conformal\"");
  }
  try {
    (void)m.build();
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
  return m;
}

}  // namespace

ChartedSphere MetricSpec::build() const {
  return type == "round" ? ChartedSphere::round(c) : ChartedSphere::conformal(num, den);
}

SurfaceMap MapSpec::build() const {
  return orientation == Orientation::Antiholomorphic ? SurfaceMap::antiholomorphic(rational)
                                                     : SurfaceMap::holomorphic(rational);
}

Polynomial polynomial_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail("polynomial coefficients must be a non-empty array");
  std::vector<cplx> c;
  for (const json& x : j) c.push_back(complex_from_json(x, "polynomial coefficient"));
  return Polynomial(std::move(c));
}

RationalFunction rational_from_json(const json& j) {
  if (j.is_number()) return RationalFunction::constant(j.get<double>());
  if (j.is_array()) return RationalFunction(polynomial_from_json(j));
  if (!j.is_object()) fail("rational function must be an object {\"num\": [...], \"den\": [...]}");
  reject_unknown(j, {"num", "den"}, "rational function");
  if (!j.contains("num")) fail("rational function needs \"num\"");
  const Polynomial num = polynomial_from_json(j["num"]);
  const Polynomial den = j.contains("den") ? polynomial_from_json(j["den"]) : Polynomial::constant(1.0);
  if (den.is_zero()) fail("rational function has a zero denominator");
  return RationalFunction(num, den);
}

json to_json(cplx c) { return json::array({c.real() + 0.0, c.imag() + 0.0}); }

json to_json(const Polynomial& p) {
  json a = json::array();
  if (p.is_zero()) a.push_back(to_json(cplx{}));
  for (int k = 0; k <= p.degree(); ++k) a.push_back(to_json(p.coeff(k)));
  return a;
}

json to_json(const RationalFunction& r) { return {{"num", to_json(r.numerator())}, {"den", to_json(r.denominator())}}; }

RunConfig parse_config(const json& j) {
  require_object(j, "config");
  reject_unknown(j, {"metric_M", "metric_N", "map", "u1", "u2", "grid", "tolerances", "seed", "perturbation", "search"},
                 "config");
  RunConfig c;
  if (j.contains("metric_M")) c.metric_m = metric_from_json(j["metric_M"], "metric_M");
  if (j.contains("metric_N")) c.metric_n = metric_from_json(j["metric_N"], "metric_N");
  if (!j.contains("map")) fail("config needs a \"map\"");
  {
    const json& m = j["map"];
    require_object(m, "map");
    reject_unknown(m, {"orientation", "rational"}, "map");
    if (!m.contains("orientation") || !m["orientation"].is_string()) fail("map.orientation must be \"holo\" or \"anti\"");
    const std::string o = m["orientation"].get<std::string>();
    if (o == "holo")
      c.map.orientation = Orientation::Holomorphic;
    else if (o == "anti")
      c.map.orientation = Orientation::Antiholomorphic;
    else
      fail("map.orientation must be \"holo\" or \"anti\"");
    if (!m.contains("rational")) fail("map needs \"rational\"");
    c.map.rational = rational_from_json(m["rational"]);
  }
  c.u1 = j.contains("u1") ? rational_from_json(j["u1"]) : RationalFunction();
  c.u2 = j.contains("u2") ? rational_from_json(j["u2"]) : RationalFunction();
  if (j.contains("grid")) {
    const json& g = j["grid"];
    require_object(g, "grid");
    reject_unknown(g, {"n_radial", "n_angular"}, "grid");
    if (g.contains("n_radial")) c.grid.n_radial = integer(g["n_radial"], "grid.n_radial");
    if (g.contains("n_angular")) c.grid.n_angular = integer(g["n_angular"], "grid.n_angular");
    if (c.grid.n_radial < 8 || c.grid.n_angular < 8) fail("grid sizes must be at least 8");
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    require_object(t, "tolerances");
    reject_unknown(t, {"dirac", "bochner", "quadrature"}, "tolerances");
    if (t.contains("dirac")) c.tolerances.dirac = positive(t["dirac"], "tolerances.dirac");
    if (t.contains("bochner")) c.tolerances.bochner = positive(t["bochner"], "tolerances.bochner");
    if (t.contains("quadrature")) c.tolerances.quadrature = positive(t["quadrature"], "tolerances.quadrature");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("perturbation")) {
    const json& p = j["perturbation"];
    require_object(p, "perturbation");
    reject_unknown(p, {"slot", "amplitude"}, "perturbation");
    PerturbationSpec s;
    if (p.contains("slot")) {
      if (!p["slot"].is_string()) fail("perturbation.slot must be a slot label");
      try {
        s.slot = slot_from_string(p["slot"].get<std::string>());
      } catch (const Error& e) {
        fail(std::string("perturbation.slot: ") + e.what());
      }
    }
    if (p.contains("amplitude")) s.amplitude = number(p["amplitude"], "perturbation.amplitude");
    c.perturbation = s;
  }
  if (j.contains("search")) {
    const json& s = j["search"];
    require_object(s, "search");
    reject_unknown(s, {"mode", "epsilon", "perturbation", "budget", "grid", "tolerance"}, "search");
    if (s.contains("mode")) {
      if (!s["mode"].is_string()) fail("search.mode must be a string");
      c.search.mode = s["mode"].get<std::string>();
      if (c.search.mode != "probe" && c.search.mode != "holomorphic")
        fail("search.mode must be \"probe\" or \"holomorphic\"");
    }
    if (s.contains("epsilon")) c.search.epsilon = number(s["epsilon"], "search.epsilon");
    if (s.contains("perturbation")) c.search.perturbation = number(s["perturbation"], "search.perturbation");
    if (s.contains("budget")) c.search.budget = integer(s["budget"], "search.budget");
    if (s.contains("grid")) c.search.grid = integer(s["grid"], "search.grid");
    if (s.contains("tolerance")) c.search.tolerance = positive(s["tolerance"], "search.tolerance");
    if (c.search.budget < 0) fail("search.budget must be non-negative");
    if (c.search.grid < 2) fail("search.grid must be at least 2");
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace dhm
