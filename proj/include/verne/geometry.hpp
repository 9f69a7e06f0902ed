#ifndef VERNE_GEOMETRY_HPP
#define VERNE_GEOMETRY_HPP

#include <array>
#include <cstdint>

#include <Eigen/Core>

namespace verne {

// Fixed dimensional model of the 3-DOF parallel module. All lengths in mm.
//
// Frames: the base frame has its z-axis pointing downward; sliders translate
// along vertical guideways, so a smaller z means "higher up". The platform
// frame stays parallel to the base frame in x; the platform carries a coupled
// rotation alpha about the x-axis.
//
// Leg I joins one slider to the platform with two non-parallel rods: the
// slider pair sits at y = -/+ r1 in the plane x = -D1, the platform pair at
// body offsets y = -/+ R1 from the reference point P (body x = -d1). Because
// R1 != r1 the pair is not a parallelogram, which is what couples alpha to the
// position. Legs II and III are parallelograms: slider anchors at y = -/+ r4
// in the plane x = -D2, platform anchors at body y = -/+ R2, body x = -d2.
struct MachineGeometry {
  double D1 = 0;  // leg-I guideway x-offset
  double d1 = 0;  // leg-I platform anchor x-offset (body frame)
  double D2 = 0;  // legs II/III guideway x-offset
  double d2 = 0;  // legs II/III platform anchor x-offset (body frame)
  double R1 = 0;  // leg-I platform half-spacing (rotates with alpha)
  double r1 = 0;  // leg-I slider half-spacing
  double R2 = 0;  // legs II/III platform y-offset (rotates with alpha)
  double r4 = 0;  // legs II/III slider y-offset
  double L1 = 0;  // leg-I rod length
  double L2 = 0;  // leg-II rod length
  double L3 = 0;  // leg-III rod length
  std::array<std::array<double, 2>, 3> rho_limits{};  // [min,max] per slider

  // x-offset differences; the only way D1,d1,D2,d2 enter the constraints.
  double leg1_offset() const { return D1 - d1; }
  double leg23_offset() const { return D2 - d2; }
};

// Throws ConfigError when a type invariant is violated (non-positive lengths,
// leg I not assemblable at alpha = 0, inverted travel limits).
void validate_geometry(const MachineGeometry& geom);

// Platform position of the reference point P plus the coupled orientation.
struct PlatformPose {
  double x = 0;      // mm
  double y = 0;      // mm
  double z = 0;      // mm, z-axis pointing downward
  double alpha = 0;  // rad, rotation about x, normalized to (-pi, pi]
};

// Actuated prismatic joint values along the vertical guideways.
struct JointCoordinates {
  double rho1 = 0;
  double rho2 = 0;
  double rho3 = 0;
};

// Wraps an angle into (-pi, pi].
double normalize_angle(double alpha);

// Grubler mobility bookkeeping.
struct MobilitySummary {
  std::int64_t n_bodies = 0;
  std::int64_t n_joints = 0;
  std::int64_t sum_joint_dof = 0;
  std::int64_t n_internal_dof = 0;
  std::int64_t mobility = 0;
};

// m = 6(N_p - N_i - 1) + sum f_i - m_int, exact integer arithmetic.
std::int64_t grubler_mobility(std::int64_t n_bodies, std::int64_t n_joints,
                              std::int64_t sum_joint_dof, std::int64_t n_internal_dof);

MobilitySummary make_mobility_summary(std::int64_t n_bodies, std::int64_t n_joints,
                                      std::int64_t sum_joint_dof,
                                      std::int64_t n_internal_dof);

// Spherical-joint centers: A[i][j] on slider i, B[i][j] on the platform,
// i = 0..2 (legs I..III), j = 0..1 (rods). Reconstructed so that
// |B[i][j] - A[i][j]|^2 - L_i^2 reproduces the four constraint residuals.
struct AnchorSet {
  std::array<std::array<Eigen::Vector3d, 2>, 3> A;
  std::array<std::array<Eigen::Vector3d, 2>, 3> B;
};

// Rod separation used to place the two parallel rods of legs II and III along
// x. It cancels identically in the constraints; any positive value yields the
// same residuals.
inline constexpr double kParallelogramHalfWidth = 50.0;  // mm

AnchorSet anchor_points(const MachineGeometry& geom, const JointCoordinates& joints,
                        const PlatformPose& pose);

// Left-hand sides of the four distance constraints, in mm^2, ordered as
// (leg I rod 1, leg I rod 2, leg II, leg III). All four vanish iff
// (pose, joints) is a valid configuration.
std::array<double, 4> constraint_residuals(const MachineGeometry& geom,
                                           const PlatformPose& pose,
                                           const JointCoordinates& joints);

// Largest |residual| of the four constraints.
double max_constraint_residual(const MachineGeometry& geom, const PlatformPose& pose,
                               const JointCoordinates& joints);

}  // namespace verne

#endif  // VERNE_GEOMETRY_HPP
