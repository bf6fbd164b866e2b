#pragma once

// JSON and CSV renderings of library results.

#include <ostream>
#include <vector>

#include <json.hpp>

#include "dhm/census.hpp"
#include "dhm/config.hpp"
#include "dhm/operators.hpp"
#include "dhm/spectral.hpp"

namespace dhm {

nlohmann::json to_json(const SpherePoint& p);
nlohmann::json to_json(const MetricSpec& m);
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const ELResidualReport& r);
nlohmann::json to_json(const EnergyReport& r);
nlohmann::json to_json(const ZeroCensusReport& r);
nlohmann::json to_json(const KernelReport& r);
nlohmann::json to_json(const DescentResult& r);

/// Map, twistor data, provenance, singular points and per-chart component expressions.
nlohmann::json describe_pair(const DiracHarmonicPair& pair, const RunConfig& config);

/// chart, z_re, z_im, slot, value_re, value_im at every grid node.
void write_components_csv(std::ostream& out, const TwistedSpinorField& psi, const SphereGrid& grid);
/// iteration, residual, step_norm, accepted
void write_trace_csv(std::ostream& out, const std::vector<DescentStep>& trace);

}  // namespace dhm
