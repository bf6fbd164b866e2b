#pragma once

// Run configuration files (JSON). Unknown fields are rejected; every error is
// reported as ErrorKind::Config.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "dhm/constructor.hpp"

namespace dhm {

struct MetricSpec {
  std::string type = "round";  // "round" | "conformal"
  double c = 1.0;
  BivariatePolynomial num;
  BivariatePolynomial den;

  ChartedSphere build() const;
};

struct MapSpec {
  Orientation orientation = Orientation::Holomorphic;
  RationalFunction rational = RationalFunction::identity();

  SurfaceMap build() const;
};

struct GridSpec {
  int n_radial = 64;
  int n_angular = 64;
};

struct Tolerances {
  double dirac = 1e-9;
  double bochner = 1e-3;
  double quadrature = 1e-2;
};

/// Adds amplitude * zbar to one slot of the constructed field.
struct PerturbationSpec {
  Slot slot = Slot::OnePlus;
  double amplitude = 1e-2;
};

struct SearchSpec {
  std::string mode = "probe";  // "probe" | "holomorphic"
  double epsilon = 0.1;
  double perturbation = 1e-3;
  int budget = 500;
  int grid = 6;
  double tolerance = 1e-10;
};

struct RunConfig {
  MetricSpec metric_m;
  MetricSpec metric_n;
  MapSpec map;
  RationalFunction u1;
  RationalFunction u2;
  GridSpec grid;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::optional<PerturbationSpec> perturbation;
  SearchSpec search;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// [[re, im], ...] ascending coefficients (plain numbers allowed for real entries).
Polynomial polynomial_from_json(const nlohmann::json& j);
/// {"num": [...], "den": [...]}, or a bare coefficient array for a polynomial.
RationalFunction rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Polynomial& p);
nlohmann::json to_json(const RationalFunction& r);
nlohmann::json to_json(cplx c);

}  // namespace dhm
