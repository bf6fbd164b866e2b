#include "dhm/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <iostream>
#include <random>

#include "dhm/errors.hpp"
#include "dhm/reports.hpp"

namespace dhm {

using nlohmann::json;

namespace {

constexpr double kBochnerStep = 1e-2;
constexpr double kZeroClearance = 0.1;
constexpr int kBochnerSamples = 20;
constexpr int kKernelGrid = 41;

struct Run {
  RunConfig config;
  SphereGrid grid;
  ChartedSphere m;
  ChartedSphere n;
};

Run load(const CliOptions& o) {
  RunConfig c = load_config(o.config);
  if (o.grid_override) {
    if (*o.grid_override < 8) throw Error(ErrorKind::Config, "--grid-override must be at least 8");
    c.grid.n_radial = c.grid.n_angular = *o.grid_override;
  }
  if (o.seed) c.seed = *o.seed;
  return {c, SphereGrid(c.grid.n_radial, c.grid.n_angular), c.metric_m.build(), c.metric_n.build()};
}

void emit(const CliOptions& o, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Config, "cannot write '" + o.out + "'");
  f << text;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
  return f;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Config:
      return kExitConfigError;
    case ErrorKind::Inadmissible:
    case ErrorKind::ConstantMapWithNonzeroSpinor:
      return kExitInadmissible;
    case ErrorKind::NoSpectralGap:
      return kExitNoSpectralGap;
    default:
      return kExitGateFailure;
  }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

DiracHarmonicPair build(const Run& r) { return build_pair(r.config.map.build(), r.config.u1, r.config.u2, r.m, r.n); }

SpherePoint sphere_point(const ZeroRecord& z) {
  if (z.chart == Chart::Finite) return SpherePoint::finite(z.z);
  return std::abs(z.z) == 0.0 ? SpherePoint::infinity() : SpherePoint::finite(1.0 / z.z);
}

/// Uniform points on the unit disk of a random chart.
ChartPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Chart c = u(rng) < 0.5 ? Chart::Finite : Chart::Infinite;
  const double r = std::sqrt(u(rng));
  const double a = 2.0 * std::numbers::pi * u(rng);
  return {c, std::polar(r, a)};
}

json gate(bool pass, json detail) {
  detail["pass"] = pass;
  return detail;
}

}  // namespace

int cmd_construct(const CliOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const Run r = load(o);
    const SurfaceMap phi = r.config.map.build();
    json report;
    if (phi.orientation() != Orientation::Constant) {
      const AdmissibilityReport adm = check_admissibility(phi, r.config.u1, r.config.u2);
      report = to_json(adm);
      if (!adm.accepted()) {
        const PoleVerdict& bad = *adm.offending();
        err << "inadmissible: pole of " << bad.function << " of order " << bad.pole_order
            << " exceeds the branch order " << bad.branch_order << "\n";
        emit(o, report);
        return static_cast<int>(kExitInadmissible);
      }
    } else {
      report = {{"verdict", "accept"}, {"poles", json::array()}, {"offending", nullptr}};
    }
    const DiracHarmonicPair pair = build(r);
    report["pair"] = describe_pair(pair, r.config);
    emit(o, report);
    if (!o.components_csv.empty()) {
      std::ofstream f = open_csv(o.components_csv);
      write_components_csv(f, pair.psi, r.grid);
    }
    return static_cast<int>(kExitPass);
  });
}

int cmd_verify(const CliOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const Run r = load(o);
    DiracHarmonicPair pair = build(r);
    std::optional<PerturbationSpec> perturbation = r.config.perturbation;
    if (o.perturb) perturbation = PerturbationSpec{Slot::OnePlus, *o.perturb};
    if (perturbation && perturbation->amplitude != 0.0)
      pair = perturbed(pair, perturbation->slot, cplx{perturbation->amplitude} * MixedExpr::zbar());
    const Tolerances& tol = r.config.tolerances;

    const ELResidualReport el = el_verify(pair, r.grid);
    json gates;
    gates["dirac"] = gate(el.relative_dirac_residual() <= tol.dirac,
                          {{"relative_residual", el.relative_dirac_residual()}, {"tolerance", tol.dirac}});
    gates["map_equation"] = gate(el.max_coupling_residual <= tol.dirac,
                                 {{"max_residual", el.max_coupling_residual}, {"tolerance", tol.dirac}});
    gates["exclusions"] = gate(el.exclusions_within_limit,
                               {{"excluded_nodes", el.excluded_nodes}, {"node_count", el.node_count}});

    // Bochner identity away from zeros and singular points.
    std::mt19937_64 rng(r.config.seed);
    std::vector<SpherePoint> avoid;
    for (const SingularPoint& s : pair.singular_points) avoid.push_back(s.location);
    json bochner{{"tolerance", tol.bochner}, {"step", kBochnerStep}};
    json slots = json::array();
    bool bochner_pass = true;
    for (Slot s : kAllSlots) {
      if (pair.psi.slot_is_structurally_zero(s)) continue;
      json entry{{"slot", to_string(s)}};
      try {
        const ZeroCensusReport zc = census(pair.psi, r.n, s, r.grid);
        if (zc.identically_zero) continue;
        std::vector<SpherePoint> keep_out = avoid;
        for (const ZeroRecord& z : zc.zeros) keep_out.push_back(sphere_point(z));
        double worst = 0.0;
        int samples = 0;
        int skipped = 0;
        for (int attempt = 0; samples < kBochnerSamples && attempt < 50 * kBochnerSamples; ++attempt) {
          const ChartPoint p = random_point(rng);
          bool clear = true;
          for (const SpherePoint& q : keep_out) clear = clear && chart_distance(p, q) >= kZeroClearance;
          if (!clear) continue;
          try {
            worst = std::max(worst, std::abs(bochner_defect(s, pair.psi, r.m, r.n, p, kBochnerStep)));
            ++samples;
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::TooCloseToZeroSet && e.kind() != ErrorKind::PoleAt) throw;
            ++skipped;
          }
        }
        entry["max_defect"] = worst;
        entry["samples"] = samples;
        entry["skipped"] = skipped;
        entry["pass"] = samples > 0 && worst <= tol.bochner;
      } catch (const Error& e) {
        entry["error"] = e.what();
        entry["pass"] = false;
      }
      bochner_pass = bochner_pass && entry["pass"].get<bool>();
      slots.push_back(entry);
    }
    bochner["slots"] = slots;
    gates["bochner"] = gate(bochner_pass, bochner);

    if (pair.twistor) {
      const TwistorSpinor spinor(pair.twistor->first, pair.twistor->second, r.m);
      double worst = 0.0;
      int samples = 0;
      for (int attempt = 0; samples < kBochnerSamples && attempt < 50 * kBochnerSamples; ++attempt) {
        const ChartPoint p = random_point(rng);
        bool clear = true;
        for (const SpherePoint& q : avoid) clear = clear && chart_distance(p, q) >= kZeroClearance;
        if (!clear) continue;
        for (int k = 0; k < 4; ++k) worst = std::max(worst, twistor_residual(spinor, 0.5 * std::numbers::pi * k + 0.3, p));
        ++samples;
      }
      const double bound = tol.dirac * std::max(1.0, el.field_scale);
      gates["twistor"] = gate(worst <= bound, {{"max_residual", worst}, {"tolerance", bound}, {"samples", samples}});
    }

    json energy_detail;
    bool energy_pass = true;
    try {
      const EnergyReport e = energy_report(pair, r.grid);
      energy_detail = to_json(e);
      energy_pass = std::isfinite(e.energy);
      if (pair.psi.is_structurally_zero() && pair.map().orientation() != Orientation::Constant) {
        const double expected = 8.0 * std::numbers::pi * std::abs(pair.map().degree());
        energy_detail["expected"] = expected;
        energy_detail["tolerance"] = tol.quadrature;
        energy_pass = energy_pass && std::abs(e.energy - expected) <= tol.quadrature * expected;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnboundedSpinor) throw;
      energy_detail["error"] = e.what();
      energy_pass = false;
    }
    gates["energy"] = gate(energy_pass, energy_detail);

    bool all = true;
    for (auto it = gates.begin(); it != gates.end(); ++it) all = all && it.value()["pass"].get<bool>();
    json report = to_json(el);
    report["energy"] = energy_detail.contains("energy") ? energy_detail["energy"] : json(nullptr);
    report["provenance"] = pair.provenance;
    report["perturbation"] = perturbation ? json{{"slot", to_string(perturbation->slot)}, {"amplitude", perturbation->amplitude}}
                                          : json(nullptr);
    report["seed"] = r.config.seed;
    report["gates"] = gates;
    report["verdict"] = all ? "pass" : "fail";
    emit(o, report);
    return static_cast<int>(all ? kExitPass : kExitGateFailure);
  });
}

int cmd_census(const CliOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const Run r = load(o);
    const DiracHarmonicPair pair = build(r);
    const int deg = pair.map().degree();
    json slots = json::array();
    bool all = true;
    for (Slot s : kAllSlots) {
      const ZeroCensusReport c = census(pair.psi, r.n, s, r.grid);
      all = all && c.matches_prediction();
      slots.push_back(to_json(c));
    }
    emit(o, {{"degree", deg}, {"genus_M", 0}, {"genus_N", 0}, {"slots", slots}, {"all_match", all}});
    return static_cast<int>(all ? kExitPass : kExitGateFailure);
  });
}

int cmd_kernel(const CliOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    if (o.degree < 0) throw Error(ErrorKind::Config, "--degree must be non-negative");
    const int n = o.grid_override.value_or(kKernelGrid);
    if (n < 8) throw Error(ErrorKind::Config, "--grid-override must be at least 8");
    Slot slot{};
    try {
      slot = slot_from_string(o.slot);
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, e.what());
    }
    const ChartedSphere round = ChartedSphere::round(1.0);
    const SurfaceMap phi = SurfaceMap::holomorphic(RationalFunction::monomial(o.degree));
    const AnsatzSpace space = AnsatzSpace::monomials(phi, round, round, slot, 2 * o.degree);
    json report{{"degree", o.degree},
                {"slot", to_string(slot)},
                {"grid", {{"n_radial", n}, {"n_angular", n}}},
                {"candidates", space.candidates().size()},
                {"basis_size", space.size()}};
    try {
      const KernelReport k = near_kernel(assemble_dirac_matrix(space, round, round, SphereGrid(n, n)));
      report.update(to_json(k));
      emit(o, report);
      return static_cast<int>(kExitPass);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoSpectralGap) throw;
      report["error"] = e.what();
      emit(o, report);
      err << "error: " << e.what() << "\n";
      return static_cast<int>(kExitNoSpectralGap);
    }
  });
}

int cmd_search(const CliOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const Run r = load(o);
    const SearchSpec& s = r.config.search;
    const JointProblem problem{r.m, r.n, SphereGrid(s.grid, s.grid)};
    const Theta golden = theta_holomorphic_line(1.0, -2.0);
    Theta start = golden;
    DescentOptions options;
    options.budget = s.budget;
    if (s.mode == "probe") {
      start(4) = s.epsilon;
      options.fixed = {4, 5};
    } else {
      std::mt19937_64 rng(r.config.seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int i = 6; i < kThetaSize; ++i) start(i) += s.perturbation * u(rng);
    }
    const double initial = joint_residual(problem, start);
    const DescentResult d = descend(problem, start, options);
    const double eps = std::hypot(d.theta(4), d.theta(5));
    const bool confirmed =
        s.mode == "probe" ? d.residual > s.tolerance : (d.residual <= s.tolerance && eps <= 1e-8);
    json report = to_json(d);
    report["mode"] = s.mode;
    report["initial_residual"] = initial;
    report["tolerance"] = s.tolerance;
    report["grid"] = {{"n_radial", s.grid}, {"n_angular", s.grid}};
    report["final_antiholomorphic_part"] = eps;
    report["at_coefficient_bound"] = d.theta.cwiseAbs().maxCoeff() >= problem.coefficient_bound * (1.0 - 1e-12);
    report["family_confirmed"] = confirmed;
    emit(o, report);
    const std::string trace = !o.trace_csv.empty() ? o.trace_csv : (o.out.empty() ? "" : o.out + ".trace.csv");
    if (!trace.empty()) {
      std::ofstream f = open_csv(trace);
      write_trace_csv(f, d.trace);
    }
    return static_cast<int>(confirmed ? kExitPass : kExitGateFailure);
  });
}

}  // namespace dhm
