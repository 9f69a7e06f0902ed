#include "verne/inverse_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "verne/coupling.hpp"
#include "verne/errors.hpp"

namespace verne {

namespace {

constexpr double kVerifyTol = 1e-6;    // mm^2, substitution gate for emitted solutions
constexpr double kRadClampRel = 1e-9;  // negative radicand tolerated as 0, rel. to L^2
constexpr double kBoundaryRel = 1e-12; // radicand treated as a branch boundary, rel. to L^2
constexpr double kTinyLength = 1e-9;   // mm / rad scale for exact-case detection

double leg1_radicand(const MachineGeometry& g, const PlatformPose& pose) {
  const double c = std::cos(pose.alpha);
  const double X = pose.x + g.leg1_offset();
  return g.L1 * g.L1 - (g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c) - X * X -
         pose.y * pose.y;
}

double leg2_radicand(const MachineGeometry& g, const PlatformPose& pose) {
  const double c = std::cos(pose.alpha);
  const double X = pose.x + g.leg23_offset();
  const double yterm = pose.y - g.R2 * c + g.r4;
  return g.L2 * g.L2 - X * X - yterm * yterm;
}

double leg3_radicand(const MachineGeometry& g, const PlatformPose& pose) {
  const double c = std::cos(pose.alpha);
  const double X = pose.x + g.leg23_offset();
  const double yterm = pose.y + g.R2 * c - g.r4;
  return g.L3 * g.L3 - X * X - yterm * yterm;
}

int sign_of(double v) { return v < 0.0 ? -1 : +1; }

bool within_limits(const MachineGeometry& g, const JointCoordinates& j) {
  const double rho[3] = {j.rho1, j.rho2, j.rho3};
  for (int i = 0; i < 3; ++i)
    if (rho[i] < g.rho_limits[i][0] || rho[i] > g.rho_limits[i][1]) return false;
  return true;
}

}  // namespace

JointCoordinates actuator_inputs(const MachineGeometry& g, const PlatformPose& pose,
                                 const ConfigurationIndices& idx) {
  const double s = std::sin(pose.alpha);
  const double rads[3] = {leg1_radicand(g, pose), leg2_radicand(g, pose),
                          leg3_radicand(g, pose)};
  const double lens[3] = {g.L1, g.L2, g.L3};
  double sq[3];
  for (int i = 0; i < 3; ++i) {
    double rad = rads[i];
    if (rad < -kRadClampRel * lens[i] * lens[i]) throw UnreachablePose(i + 1);
    sq[i] = std::sqrt(std::max(rad, 0.0));
  }
  JointCoordinates out;
  out.rho1 = pose.z + idx.s1 * sq[0];
  out.rho2 = pose.z - g.R2 * s + idx.s2 * sq[1];
  out.rho3 = pose.z + g.R2 * s + idx.s3 * sq[2];
  return out;
}

Leg1Branches leg1_sign(const MachineGeometry& g, const PlatformPose& pose) {
  const double c = std::cos(pose.alpha);
  const double s = std::sin(pose.alpha);
  const double u = g.R1 * c - g.r1;

  Leg1Branches out;
  if (std::abs(s) <= kTinyLength) {
    out.signs = {-1, +1};
    return out;
  }
  if (std::abs(pose.y) <= kTinyLength || std::abs(u) <= kTinyLength * g.R1) {
    // The sign relation forces rho1 - z = 0 here (Table-II degenerate rows).
    out.signs = {-1};
    out.forced_rho1 = pose.z;
    return out;
  }
  if (leg1_radicand(g, pose) < -kRadClampRel * g.L1 * g.L1) throw InconsistentPose();
  out.signs = {sign_of(u) * sign_of(pose.y) * sign_of(s)};
  return out;
}

IkResult inverse_kinematics_all(const MachineGeometry& g, double x, double y, double z) {
  const std::vector<double> alphas = feasible_orientations(g, x, y);

  IkResult result;
  char note[160];
  for (double alpha : alphas) {
    PlatformPose pose{x, y, z, alpha};
    Leg1Branches leg1;
    try {
      leg1 = leg1_sign(g, pose);
    } catch (const InconsistentPose&) {
      std::snprintf(note, sizeof note, "alpha=%.9f: leg I sign relation unsatisfiable", alpha);
      result.dropped_branches.push_back(note);
      continue;
    }

    // Leg-I branches as (s1, rho1) pairs.
    std::vector<std::pair<int, double>> leg1_branches;
    if (leg1.forced_rho1) {
      leg1_branches.emplace_back(leg1.signs.front(), *leg1.forced_rho1);
    } else {
      const double rad1 = leg1_radicand(g, pose);
      if (rad1 < -kRadClampRel * g.L1 * g.L1) {
        std::snprintf(note, sizeof note, "alpha=%.9f: leg I radicand negative", alpha);
        result.dropped_branches.push_back(note);
        continue;
      }
      const double sq1 = std::sqrt(std::max(rad1, 0.0));
      const bool boundary1 = rad1 <= kBoundaryRel * g.L1 * g.L1;
      for (int s1 : leg1.signs) {
        if (boundary1 && s1 != -1 && leg1.signs.size() > 1) continue;  // branches coincide
        leg1_branches.emplace_back(s1, z + s1 * sq1);
      }
    }

    const double sa = std::sin(alpha);
    const double rad2 = leg2_radicand(g, pose);
    const double rad3 = leg3_radicand(g, pose);
    if (rad2 < -kRadClampRel * g.L2 * g.L2) {
      std::snprintf(note, sizeof note, "alpha=%.9f: leg II radicand negative", alpha);
      result.dropped_branches.push_back(note);
      continue;
    }
    if (rad3 < -kRadClampRel * g.L3 * g.L3) {
      std::snprintf(note, sizeof note, "alpha=%.9f: leg III radicand negative", alpha);
      result.dropped_branches.push_back(note);
      continue;
    }
    const double sq2 = std::sqrt(std::max(rad2, 0.0));
    const double sq3 = std::sqrt(std::max(rad3, 0.0));
    const bool boundary2 = rad2 <= kBoundaryRel * g.L2 * g.L2;
    const bool boundary3 = rad3 <= kBoundaryRel * g.L3 * g.L3;

    for (const auto& [s1, rho1] : leg1_branches) {
      for (int s2 : {-1, +1}) {
        if (boundary2 && s2 != -1) continue;
        for (int s3 : {-1, +1}) {
          if (boundary3 && s3 != -1) continue;
          IkSolution sol;
          sol.pose = pose;
          sol.indices = {s1, s2, s3};
          sol.joints.rho1 = rho1;
          sol.joints.rho2 = z - g.R2 * sa + s2 * sq2;
          sol.joints.rho3 = z + g.R2 * sa + s3 * sq3;
          sol.max_residual = max_constraint_residual(g, sol.pose, sol.joints);
          if (sol.max_residual > kVerifyTol) {
            std::snprintf(note, sizeof note,
                          "alpha=%.9f s=(%+d,%+d,%+d): substitution residual %.3e",
                          alpha, s1, s2, s3, sol.max_residual);
            result.dropped_branches.push_back(note);
            continue;
          }
          sol.feasibility.within_joint_limits = within_limits(g, sol.joints);
          sol.feasibility.no_rod_crossing = g.R1 * std::cos(alpha) > g.r1;
          sol.feasibility.is_working_mode =
              s1 == -1 && s2 == -1 && s3 == -1 && sol.feasibility.no_rod_crossing &&
              sol.feasibility.within_joint_limits;
          result.solutions.push_back(sol);
        }
      }
    }
  }

  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const IkSolution& a, const IkSolution& b) {
              if (a.pose.alpha != b.pose.alpha) return a.pose.alpha < b.pose.alpha;
              if (a.indices.s1 != b.indices.s1) return a.indices.s1 < b.indices.s1;
              if (a.indices.s2 != b.indices.s2) return a.indices.s2 < b.indices.s2;
              return a.indices.s3 < b.indices.s3;
            });
  return result;
}

WorkingModeSelection select_working_mode(const std::vector<IkSolution>& solutions,
                                         const MachineGeometry& geom) {
  (void)geom;  // the filter stack is already folded into the flags
  WorkingModeSelection sel;
  const IkSolution* best = nullptr;
  for (const auto& s : solutions) {
    if (!s.feasibility.is_working_mode) continue;
    ++sel.candidate_count;
    if (best == nullptr || std::abs(s.pose.alpha) < std::abs(best->pose.alpha))
      best = &s;
  }
  if (best != nullptr) sel.solution = *best;
  sel.ambiguous = sel.candidate_count > 1;
  return sel;
}

}  // namespace verne
