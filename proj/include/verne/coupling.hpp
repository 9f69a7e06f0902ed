#ifndef VERNE_COUPLING_HPP
#define VERNE_COUPLING_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "verne/geometry.hpp"

namespace verne {

// Leg I couples the platform orientation alpha to its position: for a fixed
// alpha the reachable (x, y) locus is an ellipse centered on the leg-I axis.
struct CouplingEllipse {
  double a = 0;         // semi-major axis along x (mm)
  double b = 0;         // semi-axis along y (mm), b <= a
  double center_x = 0;  // = d1 - D1
  double alpha = 0;     // orientation this ellipse represents (rad)
};

// Quadratic-form value of the coupling constraint at (x, y, alpha),
// normalized by R1^2 * L1^2. Zero on the iso-orientation ellipse, negative
// strictly inside, positive outside.
double coupling_residual(const MachineGeometry& geom, double x, double y, double alpha);

// Throws DegenerateOrientation when sin(alpha) = 0 (the locus collapses to
// the segment y = 0, whose half-length rides along in the exception) and
// UnreachableOrientation when leg I cannot assemble at alpha at all.
CouplingEllipse coupling_ellipse(const MachineGeometry& geom, double alpha);

// Cubic in c = cos(alpha) whose admissible roots are the feasible platform
// orientations at position (x, y).
struct OrientationCubic {
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0;  // p1 c^3 + p2 c^2 + p3 c + p4
  double eval(double c) const { return ((p1 * c + p2) * c + p3) * c + p4; }
};

OrientationCubic orientation_cubic(const MachineGeometry& geom, double x, double y);

// All feasible orientations at (x, y), sorted ascending, at most 4. Real
// cubic roots with |c| <= 1 + 1e-12 are clamped, filtered by the leg-I
// assembly radicand, mapped to +/-acos(c), and deduplicated (alpha = 0 and
// alpha = pi are their own opposites). Throws NoFeasibleOrientation when the
// set is empty.
std::vector<double> feasible_orientations(const MachineGeometry& geom, double x, double y);

struct IsoCurve {
  double alpha = 0;
  std::vector<std::array<double, 2>> points;  // (x, y) samples
};

struct SkippedOrientation {
  double alpha = 0;
  std::string reason;
};

struct IsoCurveSet {
  std::vector<IsoCurve> curves;
  std::vector<SkippedOrientation> skipped;
};

// One parametric polyline per reachable, non-degenerate alpha = k*alpha_step
// covering (-pi, pi]. Degenerate and unreachable orientations are skipped and
// reported in the metadata.
IsoCurveSet iso_orientation_curves(const MachineGeometry& geom, double alpha_step,
                                   int samples_per_curve);

// CSV with header alpha_rad,x_p_mm,y_p_mm and one row per sample.
void write_iso_curves_csv(std::ostream& out, const IsoCurveSet& set);

}  // namespace verne

#endif  // VERNE_COUPLING_HPP
