#include "verne/newton_fk.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "verne/errors.hpp"

namespace verne {

Eigen::Matrix4d constraint_jacobian(const MachineGeometry& g, const PlatformPose& pose,
                                    const JointCoordinates& j) {
  const double c = std::cos(pose.alpha);
  const double s = std::sin(pose.alpha);
  const double x1 = pose.x + g.leg1_offset();
  const double x2 = pose.x + g.leg23_offset();

  // Per row: the y-term and z-term of the squared distance, whose alpha
  // derivatives rotate into each other.
  const double y3 = pose.y + g.R1 * c - g.r1, z3 = pose.z + g.R1 * s - j.rho1;
  const double y4 = pose.y - g.R1 * c + g.r1, z4 = pose.z - g.R1 * s - j.rho1;
  const double y5 = pose.y - g.R2 * c + g.r4, z5 = pose.z - g.R2 * s - j.rho2;
  const double y6 = pose.y + g.R2 * c - g.r4, z6 = pose.z + g.R2 * s - j.rho3;

  Eigen::Matrix4d J;
  J.row(0) << 2 * x1, 2 * y3, 2 * z3, 2 * (-y3 * g.R1 * s + z3 * g.R1 * c);
  J.row(1) << 2 * x1, 2 * y4, 2 * z4, 2 * (y4 * g.R1 * s - z4 * g.R1 * c);
  J.row(2) << 2 * x2, 2 * y5, 2 * z5, 2 * (y5 * g.R2 * s - z5 * g.R2 * c);
  J.row(3) << 2 * x2, 2 * y6, 2 * z6, 2 * (-y6 * g.R2 * s + z6 * g.R2 * c);
  return J;
}

IterationReport newton_fk(const MachineGeometry& g, const JointCoordinates& joints,
                          const PlatformPose& initial, int max_iter, double tol) {
  IterationReport report;
  PlatformPose q = initial;

  auto residual_vec = [&](const PlatformPose& p) {
    const auto r = constraint_residuals(g, p, joints);
    return Eigen::Vector4d(r[0], r[1], r[2], r[3]);
  };

  Eigen::Vector4d r = residual_vec(q);
  for (int it = 0; it < max_iter; ++it) {
    report.iterations = it;
    if (r.lpNorm<Eigen::Infinity>() <= tol) {
      report.converged = true;
      break;
    }
    const Eigen::Matrix4d J = constraint_jacobian(g, q, joints);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(J);
    if (lu.rank() < 4) throw SingularJacobian(it);
    const Eigen::Vector4d step = lu.solve(-r);

    // Armijo backtracking on |r|^2.
    const double f0 = r.squaredNorm();
    double lambda = 1.0;
    PlatformPose next = q;
    Eigen::Vector4d rn = r;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      next.x = q.x + lambda * step(0);
      next.y = q.y + lambda * step(1);
      next.z = q.z + lambda * step(2);
      next.alpha = q.alpha + lambda * step(3);
      rn = residual_vec(next);
      if (rn.squaredNorm() <= f0 * (1.0 - 1e-4 * lambda)) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;  // stagnated; report the best point reached
    q = next;
    r = rn;
    report.iterations = it + 1;
  }
  if (!report.converged && r.lpNorm<Eigen::Infinity>() <= tol) report.converged = true;

  q.alpha = normalize_angle(q.alpha);
  report.pose = q;
  report.final_residual = r.lpNorm<Eigen::Infinity>();
  return report;
}

}  // namespace verne
