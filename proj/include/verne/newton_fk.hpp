#ifndef VERNE_NEWTON_FK_HPP
#define VERNE_NEWTON_FK_HPP

#include <Eigen/Core>

#include "verne/geometry.hpp"

namespace verne {

struct IterationReport {
  bool converged = false;
  int iterations = 0;
  double final_residual = 0;  // max |constraint| in mm^2
  PlatformPose pose;
};

// Jacobian of the four constraint residuals with respect to (x, y, z, alpha),
// differentiated analytically. Row order matches constraint_residuals.
Eigen::Matrix4d constraint_jacobian(const MachineGeometry& geom, const PlatformPose& pose,
                                    const JointCoordinates& joints);

// Damped Newton iteration on the four constraints in the four pose unknowns;
// Armijo backtracking on the squared residual norm. Stops when the residual
// max-norm drops below tol (mm^2) or after max_iter steps. Converges to *a*
// solution, not necessarily the mode nearest the initial guess. Throws
// SingularJacobian when a step cannot be computed.
IterationReport newton_fk(const MachineGeometry& geom, const JointCoordinates& joints,
                          const PlatformPose& initial, int max_iter = 50,
                          double tol = 1e-8);

}  // namespace verne

#endif  // VERNE_NEWTON_FK_HPP
