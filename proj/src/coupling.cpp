#include "verne/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "verne/errors.hpp"
#include "verne/rootfind.hpp"

namespace verne {

namespace {
constexpr double kSinEps = 1e-12;       // |sin(alpha)| below this is the degenerate case
constexpr double kCosClamp = 1e-12;     // accepted overshoot of |cos| past 1
constexpr double kAngleDedup = 1e-9;    // rad
constexpr double kRadicandRel = 1e-9;   // leg-I radicand tolerance, relative to L1^2

// L1^2 - (R1^2 + r1^2 - 2 R1 r1 cos(alpha)); squared semi-major axis.
double axis_radicand(const MachineGeometry& g, double c) {
  return g.L1 * g.L1 - (g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c);
}
}  // namespace

double coupling_residual(const MachineGeometry& g, double x, double y, double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const double X = x + g.leg1_offset();
  const double R1s2 = g.R1 * g.R1 * s * s;
  const double ycoef = g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c;
  const double raw = R1s2 * X * X + ycoef * y * y - R1s2 * axis_radicand(g, c);
  return raw / (g.R1 * g.R1 * g.L1 * g.L1);
}

CouplingEllipse coupling_ellipse(const MachineGeometry& g, double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const double rad = axis_radicand(g, c);
  if (rad <= 0.0) throw UnreachableOrientation(alpha);
  const double a = std::sqrt(rad);
  if (std::abs(s) <= kSinEps) throw DegenerateOrientation(alpha, a);

  CouplingEllipse e;
  e.a = a;
  e.b = g.R1 * std::abs(s) * a /
        std::sqrt(g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c);
  e.center_x = g.d1 - g.D1;
  e.alpha = alpha;
  return e;
}

OrientationCubic orientation_cubic(const MachineGeometry& g, double x, double y) {
  const double X = x + g.leg1_offset();
  const double R1sq = g.R1 * g.R1;
  const double span = g.L1 * g.L1 - R1sq - g.r1 * g.r1;
  OrientationCubic p;
  p.p1 = 2.0 * R1sq * g.R1 * g.r1;
  p.p2 = R1sq * span - R1sq * X * X;
  p.p3 = -2.0 * R1sq * g.R1 * g.r1 - 2.0 * g.R1 * g.r1 * y * y;
  p.p4 = R1sq * X * X + (R1sq + g.r1 * g.r1) * y * y - R1sq * span;
  return p;
}

std::vector<double> feasible_orientations(const MachineGeometry& g, double x, double y) {
  const OrientationCubic cubic = orientation_cubic(g, x, y);
  const PolynomialReal poly({cubic.p4, cubic.p3, cubic.p2, cubic.p1});
  const double X = x + g.leg1_offset();

  std::vector<double> angles;
  if (!poly.is_zero()) {
    const auto roots =
        real_roots(poly, std::make_pair(-1.0 - kCosClamp, 1.0 + kCosClamp));
    for (const auto& root : roots) {
      const double c = std::clamp(root.value, -1.0, 1.0);
      // A feasible orientation must admit a real leg-I slider value.
      const double leg1_rad = axis_radicand(g, c) - X * X - y * y;
      if (leg1_rad < -kRadicandRel * g.L1 * g.L1) continue;
      const double a = std::acos(c);
      angles.push_back(a);
      if (a > kAngleDedup && a < M_PI - kAngleDedup) angles.push_back(-a);
    }
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double l, double r) { return std::abs(l - r) <= kAngleDedup; }),
               angles.end());
  if (angles.empty()) throw NoFeasibleOrientation();
  return angles;
}

IsoCurveSet iso_orientation_curves(const MachineGeometry& g, double alpha_step,
                                   int samples_per_curve) {
  IsoCurveSet set;
  if (!(alpha_step > 0.0)) return set;
  const int kmax = static_cast<int>(std::floor(M_PI / alpha_step + 1e-9));
  for (int k = -kmax; k <= kmax; ++k) {
    const double alpha = k * alpha_step;
    try {
      const CouplingEllipse e = coupling_ellipse(g, alpha);
      IsoCurve curve;
      curve.alpha = alpha;
      curve.points.reserve(samples_per_curve);
      for (int i = 0; i < samples_per_curve; ++i) {
        const double th = 2.0 * M_PI * i / samples_per_curve;
        curve.points.push_back({e.center_x + e.a * std::cos(th), e.b * std::sin(th)});
      }
      set.curves.push_back(std::move(curve));
    } catch (const DegenerateOrientation&) {
      set.skipped.push_back({alpha, "degenerate (sin alpha = 0)"});
    } catch (const UnreachableOrientation&) {
      set.skipped.push_back({alpha, "unreachable"});
    }
  }
  return set;
}

void write_iso_curves_csv(std::ostream& out, const IsoCurveSet& set) {
  out << "alpha_rad,x_p_mm,y_p_mm\n";
  char line[128];
  for (const auto& curve : set.curves) {
    for (const auto& pt : curve.points) {
      std::snprintf(line, sizeof line, "%.9f,%.6f,%.6f\n", curve.alpha, pt[0], pt[1]);
      out << line;
    }
  }
}

}  // namespace verne
