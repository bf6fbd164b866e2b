#include "dhm/census.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {

PredictedTotals predict_totals(int g_m, int g_n, int deg) {
  if (g_m < 0 || g_n < 0) throw Error(ErrorKind::InvalidArgument, "genera must be non-negative");
  const int a = g_m - 1 - deg * (2 * g_n - 2);
  const int b = g_m - 1 + deg * (2 * g_n - 2);
  return PredictedTotals{{a, b, b, a}};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxSamples = 1 << 16;

// Winding of f along a closed path s in [0, 1) -> path(s). `zero_on_contour`
// decides when a sample counts as a zero given its modulus and the contour max.
WindingResult contour_winding(const std::function<cplx(cplx)>& f, const std::function<cplx(double)>& path, int n0,
                              const std::function<bool(double, double)>& zero_on_contour) {
  for (int n = std::max(n0, 8);; n *= 2) {
    std::vector<cplx> v(static_cast<size_t>(n));
    double vmax = 0.0;
    for (int k = 0; k < n; ++k) {
      v[k] = f(path(static_cast<double>(k) / n));
      const double a = std::abs(v[k]);
      if (!std::isfinite(a)) throw Error(ErrorKind::NonFiniteSample, "non-finite value on a winding contour");
      vmax = std::max(vmax, a);
    }
    for (const cplx& x : v)
      if (zero_on_contour(std::abs(x), vmax)) throw Error(ErrorKind::ZeroOnContour, "function vanishes on the contour");
    double total = 0.0;
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      const double step = std::arg(v[(k + 1) % n] / v[k]);
      total += step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step <= std::numbers::pi / 2.0) {
      const double raw = total / kTwoPi;
      const double rounded = std::round(raw);
      if (std::abs(raw - rounded) > 0.1) {
        std::ostringstream os;
        os << "winding " << raw << " is not within 0.1 of an integer";
        throw Error(ErrorKind::NonIntegralWinding, os.str());
      }
      return {static_cast<int>(rounded), raw, n};
    }
    if (n >= kMaxSamples)
      throw Error(ErrorKind::NonIntegralWinding, "argument steps stay above pi/2 at the maximal sampling");
  }
}

struct Box {
  double x0, x1, y0, y1;
  cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double size() const { return std::max(x1 - x0, y1 - y0); }
  cplx at(double s) const {
    // counter-clockwise perimeter, s in [0, 1)
    const double u = 4.0 * s;
    const int side = std::min(static_cast<int>(u), 3);
    const double f = u - side;
    switch (side) {
      case 0: return {x0 + f * (x1 - x0), y0};
      case 1: return {x1, y0 + f * (y1 - y0)};
      case 2: return {x1 - f * (x1 - x0), y1};
      default: return {x0, y1 - f * (y1 - y0)};
    }
  }
};

int box_winding(const std::function<cplx(cplx)>& f, const Box& b) {
  return contour_winding(f, [&](double s) { return b.at(s); }, 64,
                         [](double a, double vmax) { return a <= 1e-13 * vmax || a == 0.0; })
      .winding;
}

struct Candidate {
  cplx z;
  // 0 when resolved to `tol`, else the size of the box that could not be split
  double spread = 0.0;
};

// Recursive subdivision down to `tol`; appends box centers of nonzero winding.
void localize(const std::function<cplx(cplx)>& f, const Box& b, int winding, double tol, std::vector<Candidate>& out,
              int depth = 0) {
  if (b.size() <= tol || depth > 80) {
    out.push_back({b.center()});
    return;
  }
  // split slightly off-centre so that symmetric zeros avoid the cut lines
  static constexpr std::array<std::pair<double, double>, 3> offsets{{{0.5137, 0.4911}, {0.4733, 0.5289}, {0.5421, 0.4607}}};
  for (const auto& [ox, oy] : offsets) {
    const double xm = b.x0 + ox * (b.x1 - b.x0);
    const double ym = b.y0 + oy * (b.y1 - b.y0);
    const std::array<Box, 4> kids{Box{b.x0, xm, b.y0, ym}, Box{xm, b.x1, b.y0, ym}, Box{b.x0, xm, ym, b.y1},
                                  Box{xm, b.x1, ym, b.y1}};
    std::array<int, 4> w{};
    try {
      for (int i = 0; i < 4; ++i) w[i] = box_winding(f, kids[i]);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ZeroOnContour) continue;
      throw;
    }
    if (w[0] + w[1] + w[2] + w[3] != winding) continue;
    for (int i = 0; i < 4; ++i)
      if (w[i] != 0) localize(f, kids[i], w[i], tol, out, depth + 1);
    return;
  }
  out.push_back({b.center(), b.size()});
}

// Same sphere point expressed in the chart where it lies in the closed unit disk (finite preferred).
ChartPoint canonical(const ChartPoint& p) {
  if (p.chart == Chart::Finite && std::abs(p.z) > 1.0) return {Chart::Infinite, 1.0 / p.z};
  if (p.chart == Chart::Infinite && std::abs(p.z) >= 1.0) return {Chart::Finite, 1.0 / p.z};
  return p;
}

double sphere_coordinate_distance(const ChartPoint& a, const ChartPoint& b) {
  if (a.chart == b.chart) return std::abs(a.z - b.z);
  if (b.z == cplx{}) return std::abs(a.z) > 0.0 ? std::abs(1.0 / a.z) : 0.0;
  return std::abs(a.z - 1.0 / b.z);
}

}  // namespace

WindingResult winding_number(const std::function<cplx(cplx)>& f, cplx center, double radius, int samples) {
  if (!(radius > 0.0) || samples < 3) throw Error(ErrorKind::InvalidArgument, "winding circle needs radius > 0, samples >= 3");
  return contour_winding(
      f, [&](double s) { return center + std::polar(radius, kTwoPi * s); }, samples,
      [](double a, double) { return a <= 1e-10; });
}

int zero_order(const TwistedSpinorField& psi, Slot s, const ChartPoint& p, double radius) {
  const Chart t = psi.target_chart(p);
  const auto f = [&](cplx z) { return psi.values({p.chart, z}, t)[index(s)]; };
  return chirality(s) * winding_number(f, p.z, radius).winding;
}

ZeroCensusReport census(const TwistedSpinorField& psi, const ChartedSphere& target, Slot slot,
                        const SphereGrid& grid, const CensusOptions& options) {
  ZeroCensusReport report;
  report.slot = slot;
  const PredictedTotals predicted = predict_totals(0, 0, psi.map().degree());
  report.predicted_total = predicted.total[index(slot)];
  if (psi.slot_is_structurally_zero(slot)) {
    report.identically_zero = true;
    return report;
  }

  const int n = std::max(16, 2 * grid.n_radial());
  const double extent = 1.1;
  const double h = 2.0 * extent / (n - 1);
  std::array<std::vector<double>, 2> mag;
  for (Chart d : {Chart::Finite, Chart::Infinite}) {
    auto& m = mag[index(d)];
    m.assign(static_cast<size_t>(n) * n, std::nan(""));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cplx z{-extent + i * h, -extent + j * h};
        if (std::abs(z) > extent) continue;
        try {
          const double v = slot_norm(psi, target, {d, z}, slot);
          if (std::isfinite(v)) {
            m[static_cast<size_t>(i) * n + j] = v;
            report.max_magnitude = std::max(report.max_magnitude, v);
          }
        } catch (const Error&) {
          // unevaluable sample: left as a gap in the lattice
        }
      }
  }
  if (report.max_magnitude <= options.zero_threshold) {
    report.identically_zero = true;
    return report;
  }

  struct Found {
    ChartPoint p;
    double spread;
  };
  std::vector<Found> found;
  for (Chart d : {Chart::Finite, Chart::Infinite}) {
    const auto& m = mag[index(d)];
    for (int i = 1; i + 1 < n; ++i)
      for (int j = 1; j + 1 < n; ++j) {
        const double v = m[static_cast<size_t>(i) * n + j];
        if (std::isnan(v)) continue;
        bool minimum = true;
        bool strict = false;
        for (int di = -1; di <= 1 && minimum; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const double u = m[static_cast<size_t>(i + di) * n + (j + dj)];
            if (std::isnan(u) || u < v) {
              minimum = false;
              break;
            }
            if (u > v) strict = true;
          }
        if (!minimum || !strict) continue;

        const cplx c{-extent + i * h, -extent + j * h};
        const Chart t = psi.target_chart({d, c});
        const auto f = [&](cplx z) { return psi.values({d, z}, t)[index(slot)]; };
        const Box box{c.real() - 1.5 * h, c.real() + 1.5 * h, c.imag() - 1.5 * h, c.imag() + 1.5 * h};
        std::vector<Candidate> located;
        try {
          const int w = box_winding(f, box);
          if (w == 0) continue;
          localize(f, box, w, options.location_tolerance, located);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::PoleAt || e.kind() == ErrorKind::NonFiniteSample ||
              e.kind() == ErrorKind::ZeroOnContour)
            continue;
          throw;
        }
        for (const Candidate& c : located) {
          const double v0 = slot_norm(psi, target, {d, c.z}, slot);
          if (v0 <= options.relative_threshold * report.max_magnitude) found.push_back({canonical({d, c.z}), c.spread});
        }
      }
  }

  // merge repeated detections of the same zero
  std::vector<ChartPoint> zeros;
  for (const Found& c : found) {
    if (c.spread > 0.0 && std::any_of(found.begin(), found.end(), [&](const Found& o) {
          return o.spread == 0.0 && sphere_coordinate_distance(c.p, o.p) <= c.spread;
        }))
      continue;
    const bool seen = std::any_of(zeros.begin(), zeros.end(),
                                  [&](const ChartPoint& q) { return sphere_coordinate_distance(c.p, q) < 1e-6; });
    if (!seen) zeros.push_back(c.p);
  }
  for (size_t i = 0; i < zeros.size(); ++i)
    for (size_t j = i + 1; j < zeros.size(); ++j)
      if (sphere_coordinate_distance(zeros[i], zeros[j]) < 2.0 * options.refine_radius) {
        std::ostringstream os;
        os << "zeros at " << zeros[i].z << " and " << zeros[j].z << " are closer than twice the refine radius";
        throw Error(ErrorKind::UnresolvedCluster, os.str());
      }

  for (const ChartPoint& p : zeros) {
    const int order = zero_order(psi, slot, p, options.refine_radius);
    if (order <= 0) {
      std::ostringstream os;
      os << "zero at " << p.z << " (chart " << index(p.chart) << ") has non-positive order " << order;
      throw Error(ErrorKind::NonIntegralWinding, os.str());
    }
    report.zeros.push_back({p.chart, p.z, order});
    report.total_order += order;
  }
  std::sort(report.zeros.begin(), report.zeros.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.chart != b.chart) return index(a.chart) < index(b.chart);
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return report;
}

}  // namespace dhm
