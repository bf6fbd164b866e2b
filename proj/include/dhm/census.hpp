#pragma once

// Zeros of spinor slot components: detection on a sampling grid, quadtree
// localization by the argument principle, and orders from winding numbers.

#include <functional>
#include <vector>

#include "dhm/spinor.hpp"

namespace dhm {

/// Predicted zero totals per slot, in slot order (1+, 0+, 1-, 0-). A negative
/// prediction means the slot must vanish identically.
struct PredictedTotals {
  std::array<int, 4> total{};
  bool forced_zero(Slot s) const { return total[index(s)] < 0; }
};

PredictedTotals predict_totals(int g_m, int g_n, int deg);

struct WindingResult {
  int winding = 0;
  /// Accumulated argument increment divided by 2 pi.
  double raw = 0.0;
  int samples = 0;
};

/// Winding of f around the circle |z - center| = radius. Sampling starts at
/// `samples` and doubles until every argument step is below pi/2.
/// Throws ZeroOnContour, NonIntegralWinding.
WindingResult winding_number(const std::function<cplx(cplx)>& f, cplx center, double radius, int samples = 256);

struct ZeroRecord {
  Chart chart = Chart::Finite;
  cplx z{};
  int order = 0;
};

struct ZeroCensusReport {
  Slot slot = Slot::OnePlus;
  std::vector<ZeroRecord> zeros;
  int total_order = 0;
  bool identically_zero = false;
  int predicted_total = 0;
  double max_magnitude = 0.0;

  /// A slot either vanishes identically or carries the predicted total.
  bool matches_prediction() const {
    return predicted_total < 0 ? identically_zero : (identically_zero || total_order == predicted_total);
  }
};

struct CensusOptions {
  double refine_radius = 1e-3;
  double location_tolerance = 1e-8;
  double relative_threshold = 1e-5;
  double zero_threshold = 1e-12;
};

/// Zero census of one slot over both domain charts. The detection lattice has
/// 2 n_radial points per axis on each chart. Throws UnresolvedCluster.
ZeroCensusReport census(const TwistedSpinorField& psi, const ChartedSphere& target, Slot slot,
                        const SphereGrid& grid, const CensusOptions& options = {});

/// Order of a zero of slot s at p: chirality(s) times the winding of the
/// component (target chart fixed at p) on a circle of the given radius.
int zero_order(const TwistedSpinorField& psi, Slot s, const ChartPoint& p, double radius);

}  // namespace dhm
