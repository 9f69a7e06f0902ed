#ifndef VERNE_INVERSE_KINEMATICS_HPP
#define VERNE_INVERSE_KINEMATICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "verne/geometry.hpp"

namespace verne {

// Square-root branch choices for the three actuator equations: the sign of
// rho1 - z, rho2 - z + R2 sin(alpha), rho3 - z - R2 sin(alpha). At a branch
// boundary (radicand 0) the index records the branch used to generate the
// solution.
struct ConfigurationIndices {
  int s1 = -1;
  int s2 = -1;
  int s3 = -1;
};

struct IkFeasibility {
  bool within_joint_limits = false;
  bool no_rod_crossing = false;  // R1 cos(alpha) > r1
  bool is_working_mode = false;  // all s_i = -1 plus both checks above
};

struct IkSolution {
  PlatformPose pose;
  JointCoordinates joints;
  ConfigurationIndices indices;
  IkFeasibility feasibility;
  double max_residual = 0;  // mm^2, verified by substitution
};

// Slider values for a prescribed pose and branch choice. Throws
// UnreachablePose naming the first leg whose radicand is negative.
JointCoordinates actuator_inputs(const MachineGeometry& geom, const PlatformPose& pose,
                                 const ConfigurationIndices& indices);

// Admissible leg-I branches at a pose. Either a set of sign choices (two at
// alpha in {0, pi}, one generically) or a single forced slider value
// rho1 = z at the degenerate orientations. Throws InconsistentPose when the
// sign relation admits no real slider value.
struct Leg1Branches {
  std::vector<int> signs;
  std::optional<double> forced_rho1;
};

Leg1Branches leg1_sign(const MachineGeometry& geom, const PlatformPose& pose);

struct IkResult {
  std::vector<IkSolution> solutions;            // sorted by (alpha, s1, s2, s3)
  std::vector<std::string> dropped_branches;    // diagnostics, not errors
};

// Enumerates every inverse kinematic branch at position (x, y, z): at most
// four orientations, at most four leg-I postures in total, and both sign
// choices for legs II and III — at most sixteen solutions, each verified by
// substitution. Throws NoFeasibleOrientation when the position is outside
// every iso-orientation ellipse.
IkResult inverse_kinematics_all(const MachineGeometry& geom, double x, double y, double z);

struct WorkingModeSelection {
  std::optional<IkSolution> solution;
  bool ambiguous = false;   // more than one survivor; smallest |alpha| returned
  int candidate_count = 0;
};

// The machine's working mode: s1 = s2 = s3 = -1 (slider anchors above the
// platform anchors), no rod crossing, sliders within travel limits.
WorkingModeSelection select_working_mode(const std::vector<IkSolution>& solutions,
                                         const MachineGeometry& geom);

}  // namespace verne

#endif  // VERNE_INVERSE_KINEMATICS_HPP
