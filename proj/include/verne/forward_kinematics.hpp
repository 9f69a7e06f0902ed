#ifndef VERNE_FORWARD_KINEMATICS_HPP
#define VERNE_FORWARD_KINEMATICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "verne/geometry.hpp"
#include "verne/inverse_kinematics.hpp"

namespace verne {

struct ModeFeasibility {
  bool within_joint_limits = false;
  bool no_rod_crossing = false;
  bool is_reachable_mode = false;  // all s_i = -1 plus both checks above
};

// One forward-kinematics root: t = tan(alpha/2), +infinity for the
// alpha = pi branch.
struct AssemblyMode {
  double t = 0;
  PlatformPose pose;
  ConfigurationIndices indices;  // recovered from the reconstructed pose
  ModeFeasibility feasibility;
  double max_residual = 0;       // mm^2, verified against all four constraints
};

// Characteristic polynomial in t, coefficients ascending, degree <= 8.
// conditioning records the relative magnitude of the degree > 8 interpolation
// leakage (small is good).
struct FkPolynomial {
  std::vector<double> coeffs;
  double conditioning = 0;
};

// Sequential elimination: y from the leg-I pair difference, z from the
// legs-II/III difference, x from the remaining difference. Throws
// DegenerateChain when a step's denominator vanishes (including the
// geometry-level case D1 - d1 = D2 - d2). The returned pose satisfies the
// three difference equations by construction; the remaining constraint is
// the job of fk_residual.
PlatformPose fk_chain(const MachineGeometry& geom, const JointCoordinates& joints,
                      double alpha);

// The one constraint not consumed by the chain (leg-I rod 1), evaluated at
// the pose reconstructed for alpha = 2 atan(t). Zero iff t is a forward
// kinematics solution. Defined through the removable leg-I degeneracy;
// throws DegenerateChain only at the z-step pole.
double fk_residual(const MachineGeometry& geom, const JointCoordinates& joints, double t);

// fk_residual with its denominators cleared: multiplied by (1 + t^2)^2 and
// the square of the z-step denominator polynomial. A polynomial in t of
// degree <= 8, sampled here exactly.
double fk_residual_cleared(const MachineGeometry& geom, const JointCoordinates& joints,
                           double t);

// Coefficients of the cleared residual, recovered by interpolating 17 nodes
// (twice the degree plus one, so degree inflation is detectable). Throws
// ConditioningFailure when the fit does not collapse to degree <= 8.
FkPolynomial fk_polynomial(const MachineGeometry& geom, const JointCoordinates& joints);

struct FkResult {
  std::vector<AssemblyMode> modes;        // sorted by t, alpha = pi last
  std::vector<std::string> diagnostics;   // skipped branches, degeneracies
};

// All assembly modes: real polynomial roots polished on fk_residual, plus the
// alpha = pi branch and the z-step degenerate branches, every candidate
// verified against all four constraints to 1e-6 mm^2.
FkResult forward_kinematics_all(const MachineGeometry& geom, const JointCoordinates& joints);

struct ModeSelection {
  std::optional<AssemblyMode> mode;
  bool ambiguous = false;
  int candidate_count = 0;
};

// Same filter stack as the working-mode selection: all s_i = -1, no rod
// crossing, sliders within limits.
ModeSelection select_assembly_mode(const std::vector<AssemblyMode>& modes,
                                   const MachineGeometry& geom);

}  // namespace verne

#endif  // VERNE_FORWARD_KINEMATICS_HPP
