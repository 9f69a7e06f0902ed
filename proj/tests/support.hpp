#ifndef VERNE_TESTS_SUPPORT_HPP
#define VERNE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "verne/errors.hpp"
#include "verne/geometry.hpp"
#include "verne/inverse_kinematics.hpp"

namespace verne::testing {

// Synthetic example geometry; not a real machine. D1 = d1 on purpose (the
// leg-I guideway passes through the platform anchor plane) while the
// legs-II/III offsets differ so the x elimination stays regular.
inline MachineGeometry synthetic_geometry() {
  MachineGeometry g;
  g.D1 = 400.0;
  g.d1 = 400.0;
  g.D2 = 300.0;
  g.d2 = 150.0;
  g.R1 = 300.0;
  g.r1 = 100.0;
  g.R2 = 250.0;
  g.r4 = 150.0;
  g.L1 = g.L2 = g.L3 = 800.0;
  g.rho_limits = {{{0.0, 1200.0}, {0.0, 1200.0}, {0.0, 1200.0}}};
  return g;
}

inline int sign_of(double v) { return v < 0.0 ? -1 : +1; }

// A pose on the iso-orientation ellipse of a random alpha, oriented so that
// the leg-I branch forced by the sign relation is the working one (s1 = -1),
// with joints from the all-(-1) branch. Rejection-samples until the pose is
// reachable and within limits.
struct WorkingSample {
  PlatformPose pose;
  JointCoordinates joints;
};

inline WorkingSample sample_working(const MachineGeometry& g, std::mt19937_64& rng) {
  const double alpha_max = 0.9 * std::acos(g.r1 / g.R1);
  std::uniform_real_distribution<double> alpha_dist(-alpha_max, alpha_max);
  std::uniform_real_distribution<double> theta_dist(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> z_dist(g.rho_limits[0][0] + 0.4 * g.L1,
                                                g.rho_limits[0][1] + 0.95 * g.L1);
  for (;;) {
    double alpha = alpha_dist(rng);
    if (std::abs(alpha) < 1e-3) continue;
    const double c = std::cos(alpha);
    const double denom = g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c;
    const double rad = g.L1 * g.L1 - denom;
    if (rad <= 0.0) continue;
    const double a = std::sqrt(rad);
    const double b = g.R1 * std::abs(std::sin(alpha)) * a / std::sqrt(denom);
    const double th = theta_dist(rng);
    const double x = (g.d1 - g.D1) + a * std::cos(th);
    const double y = b * std::sin(th);
    if (std::abs(y) < 1e-6) continue;
    if (sign_of(y) * sign_of(g.R1 * c - g.r1) * sign_of(std::sin(alpha)) > 0)
      alpha = -alpha;
    PlatformPose pose{x, y, z_dist(rng), alpha};
    try {
      const JointCoordinates joints = actuator_inputs(g, pose, {-1, -1, -1});
      const double rho[3] = {joints.rho1, joints.rho2, joints.rho3};
      bool ok = true;
      for (int i = 0; i < 3; ++i)
        ok = ok && rho[i] >= g.rho_limits[i][0] && rho[i] <= g.rho_limits[i][1];
      if (!ok) continue;
      return {pose, joints};
    } catch (const KinematicsError&) {
      continue;
    }
  }
}

// ---------------------------------------------------------------------------
// Independent oracles. These re-derive expected values from first principles
// and stay off the implementation paths they check.

// Coupling constraint evaluated directly (own transcription, unnormalized).
inline double coupling_lhs(const MachineGeometry& g, double x, double y, double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  const double X = x + g.D1 - g.d1;
  const double k = g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c + g.R1 * g.R1;
  return g.R1 * g.R1 * s * s * X * X + k * y * y -
         g.R1 * g.R1 * s * s * (g.L1 * g.L1 - (g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c));
}

// Sign-change scan of the coupling constraint over (-pi, pi] with bisection
// refinement; the dense-scan oracle for feasible_orientations.
inline std::vector<double> scan_orientations(const MachineGeometry& g, double x, double y,
                                             double step = 1e-4) {
  std::vector<double> roots;
  const int n = static_cast<int>(std::ceil(2.0 * M_PI / step));
  double prev_a = -M_PI;
  double prev_f = coupling_lhs(g, x, y, prev_a);
  for (int i = 1; i <= n; ++i) {
    const double a = -M_PI + 2.0 * M_PI * i / n;
    const double f = coupling_lhs(g, x, y, a);
    if ((prev_f < 0.0) != (f < 0.0)) {
      double lo = prev_a, hi = a, flo = prev_f;
      for (int b = 0; b < 100; ++b) {
        const double mid = 0.5 * (lo + hi);
        const double fm = coupling_lhs(g, x, y, mid);
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_a = a;
    prev_f = f;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Closed-form real cubic roots (trigonometric / Cardano), the cross-check
// oracle for the root finder. Coefficients ascending: c0 + c1 x + c2 x^2 + c3 x^3.
inline std::vector<double> cubic_roots_closed_form(double c0, double c1, double c2,
                                                   double c3) {
  std::vector<double> out;
  if (c3 == 0.0) {
    if (c2 != 0.0) {
      const double disc = c1 * c1 - 4.0 * c2 * c0;
      if (disc >= 0.0) {
        out.push_back((-c1 + std::sqrt(disc)) / (2.0 * c2));
        out.push_back((-c1 - std::sqrt(disc)) / (2.0 * c2));
      }
    } else if (c1 != 0.0) {
      out.push_back(-c0 / c1);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + s);
    const double v = std::cbrt(-q / 2.0 - s);
    out.push_back(shift + u + v);
  } else if (p == 0.0 && q == 0.0) {
    out.push_back(shift);
  } else {
    const double r = std::sqrt(-p * p * p / 27.0);
    const double phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
    const double m = 2.0 * std::sqrt(-p / 3.0);
    for (int k = 0; k < 3; ++k)
      out.push_back(shift + m * std::cos((phi + 2.0 * M_PI * k) / 3.0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace verne::testing

#endif  // VERNE_TESTS_SUPPORT_HPP
