#include "verne/geometry.hpp"

#include <cmath>
#include <string>

#include "verne/errors.hpp"

namespace verne {

void validate_geometry(const MachineGeometry& geom) {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be strictly positive");
  };
  require_positive(geom.R1, "R1");
  require_positive(geom.r1, "r1");
  require_positive(geom.R2, "R2");
  require_positive(geom.r4, "r4");
  require_positive(geom.L1, "L1");
  require_positive(geom.L2, "L2");
  require_positive(geom.L3, "L3");
  const double gap = geom.R1 - geom.r1;
  if (!(geom.L1 * geom.L1 > gap * gap))
    throw ConfigError("L1^2 must exceed (R1 - r1)^2 so leg I assembles at alpha = 0");
  for (int i = 0; i < 3; ++i) {
    if (!(geom.rho_limits[i][0] < geom.rho_limits[i][1]))
      throw ConfigError("rho_limits[" + std::to_string(i) + "] must satisfy min < max");
  }
}

double normalize_angle(double alpha) {
  double a = std::remainder(alpha, 2.0 * M_PI);  // (-pi, pi], except -pi
  if (a <= -M_PI) a = M_PI;
  return a;
}

std::int64_t grubler_mobility(std::int64_t n_bodies, std::int64_t n_joints,
                              std::int64_t sum_joint_dof, std::int64_t n_internal_dof) {
  return 6 * (n_bodies - n_joints - 1) + sum_joint_dof - n_internal_dof;
}

MobilitySummary make_mobility_summary(std::int64_t n_bodies, std::int64_t n_joints,
                                      std::int64_t sum_joint_dof,
                                      std::int64_t n_internal_dof) {
  MobilitySummary s;
  s.n_bodies = n_bodies;
  s.n_joints = n_joints;
  s.sum_joint_dof = sum_joint_dof;
  s.n_internal_dof = n_internal_dof;
  s.mobility = grubler_mobility(n_bodies, n_joints, sum_joint_dof, n_internal_dof);
  return s;
}

namespace {

// Platform body point rotated by alpha about the x-axis through P.
Eigen::Vector3d platform_point(const PlatformPose& pose, double bx, double by, double bz) {
  const double c = std::cos(pose.alpha);
  const double s = std::sin(pose.alpha);
  return {pose.x + bx, pose.y + by * c - bz * s, pose.z + by * s + bz * c};
}

}  // namespace

AnchorSet anchor_points(const MachineGeometry& geom, const JointCoordinates& joints,
                        const PlatformPose& pose) {
  AnchorSet set;
  const double w = kParallelogramHalfWidth;

  // Leg I: slider pair spaced 2*r1 in y, platform pair 2*R1 (not a parallelogram).
  set.A[0][0] = {-geom.D1, +geom.r1, joints.rho1};
  set.A[0][1] = {-geom.D1, -geom.r1, joints.rho1};
  set.B[0][0] = platform_point(pose, -geom.d1, +geom.R1, 0.0);
  set.B[0][1] = platform_point(pose, -geom.d1, -geom.R1, 0.0);

  // Legs II and III: identical parallelograms with rods separated along x,
  // on opposite sides of the platform in y.
  for (int j = 0; j < 2; ++j) {
    const double dx = (j == 0) ? +w : -w;
    set.A[1][j] = {-geom.D2 + dx, -geom.r4, joints.rho2};
    set.B[1][j] = platform_point(pose, -geom.d2 + dx, -geom.R2, 0.0);
    set.A[2][j] = {-geom.D2 + dx, +geom.r4, joints.rho3};
    set.B[2][j] = platform_point(pose, -geom.d2 + dx, +geom.R2, 0.0);
  }
  return set;
}

std::array<double, 4> constraint_residuals(const MachineGeometry& geom,
                                           const PlatformPose& pose,
                                           const JointCoordinates& joints) {
  const double c = std::cos(pose.alpha);
  const double s = std::sin(pose.alpha);
  const double e1 = geom.leg1_offset();
  const double e2 = geom.leg23_offset();
  const double x1 = pose.x + e1;
  const double x2 = pose.x + e2;

  auto sq = [](double v) { return v * v; };
  return {
      sq(x1) + sq(pose.y + geom.R1 * c - geom.r1) + sq(pose.z + geom.R1 * s - joints.rho1) -
          geom.L1 * geom.L1,
      sq(x1) + sq(pose.y - geom.R1 * c + geom.r1) + sq(pose.z - geom.R1 * s - joints.rho1) -
          geom.L1 * geom.L1,
      sq(x2) + sq(pose.y - geom.R2 * c + geom.r4) + sq(pose.z - geom.R2 * s - joints.rho2) -
          geom.L2 * geom.L2,
      sq(x2) + sq(pose.y + geom.R2 * c - geom.r4) + sq(pose.z + geom.R2 * s - joints.rho3) -
          geom.L3 * geom.L3,
  };
}

double max_constraint_residual(const MachineGeometry& geom, const PlatformPose& pose,
                               const JointCoordinates& joints) {
  const auto r = constraint_residuals(geom, pose, joints);
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace verne
