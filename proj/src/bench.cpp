#include "verne/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "verne/errors.hpp"
#include "verne/forward_kinematics.hpp"
#include "verne/inverse_kinematics.hpp"
#include "verne/newton_fk.hpp"

namespace verne {

namespace {

int sign_of(double v) { return v < 0.0 ? -1 : +1; }

bool within_limits(const MachineGeometry& g, const JointCoordinates& j) {
  const double rho[3] = {j.rho1, j.rho2, j.rho3};
  for (int i = 0; i < 3; ++i)
    if (rho[i] < g.rho_limits[i][0] || rho[i] > g.rho_limits[i][1]) return false;
  return true;
}

DurationStats finalize(const std::vector<double>& us) {
  DurationStats s;
  if (us.empty()) return s;
  s.min_us = std::numeric_limits<double>::infinity();
  for (double v : us) {
    s.total_us += v;
    s.min_us = std::min(s.min_us, v);
    s.max_us = std::max(s.max_us, v);
  }
  s.mean_us = s.total_us / static_cast<double>(us.size());
  return s;
}

}  // namespace

PlatformPose nominal_seed_pose(const MachineGeometry& g) {
  PlatformPose home;
  home.x = g.d1 - g.D1;
  home.y = 0.0;
  home.alpha = 0.0;
  const double rad = g.L1 * g.L1 - (g.R1 - g.r1) * (g.R1 - g.r1);
  const double rho_mid = 0.5 * (g.rho_limits[0][0] + g.rho_limits[0][1]);
  home.z = rho_mid + std::sqrt(rad);  // s1 = -1 at mid travel
  return home;
}

SampledConfiguration sample_working_configuration(const MachineGeometry& g,
                                                  std::mt19937_64& rng) {
  const double alpha_max =
      g.r1 < g.R1 ? 0.9 * std::acos(g.r1 / g.R1) : 0.5;  // keep rods uncrossed
  std::uniform_real_distribution<double> alpha_dist(-alpha_max, alpha_max);
  std::uniform_real_distribution<double> theta_dist(0.0, 2.0 * M_PI);
  const double z_lo = g.rho_limits[0][0] + 0.4 * g.L1;
  const double z_hi = g.rho_limits[0][1] + 0.95 * g.L1;
  std::uniform_real_distribution<double> z_dist(z_lo, z_hi);

  for (int attempt = 0; attempt < 100000; ++attempt) {
    double alpha = alpha_dist(rng);
    if (std::abs(alpha) < 1e-3) continue;
    const double c = std::cos(alpha);
    const double rad = g.L1 * g.L1 - (g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c);
    if (rad <= 0.0) continue;
    const double a = std::sqrt(rad);
    const double b =
        g.R1 * std::abs(std::sin(alpha)) * a /
        std::sqrt(g.R1 * g.R1 + g.r1 * g.r1 - 2.0 * g.R1 * g.r1 * c);
    const double th = theta_dist(rng);
    const double x = (g.d1 - g.D1) + a * std::cos(th);
    const double y = b * std::sin(th);
    if (std::abs(y) < 1e-6) continue;
    // Keep the branch where leg I's forced sign is the working one.
    if (sign_of(y) * sign_of(g.R1 * c - g.r1) * sign_of(std::sin(alpha)) > 0)
      alpha = -alpha;
    const double z = z_dist(rng);

    PlatformPose pose{x, y, z, alpha};
    JointCoordinates joints;
    try {
      joints = actuator_inputs(g, pose, {-1, -1, -1});
    } catch (const UnreachablePose&) {
      continue;
    }
    if (!within_limits(g, joints)) continue;
    return {pose, joints};
  }
  throw KinematicsError("could not sample a working-mode configuration; check limits");
}

BenchReport compare_solvers(const MachineGeometry& g, int n_samples, std::uint64_t seed) {
  BenchReport report;
  report.n_samples = n_samples;
  report.seed = seed;

  std::mt19937_64 rng(seed);
  std::vector<SampledConfiguration> samples;
  samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i)
    samples.push_back(sample_working_configuration(g, rng));

  const PlatformPose seed_pose = nominal_seed_pose(g);
  std::vector<double> analytic_us, newton_us;
  analytic_us.reserve(n_samples);
  newton_us.reserve(n_samples);

  int agree = 0;
  using clock = std::chrono::steady_clock;
  for (const auto& sample : samples) {
    const auto t0 = clock::now();
    const FkResult fk = forward_kinematics_all(g, sample.joints);
    const ModeSelection selected = select_assembly_mode(fk.modes, g);
    const auto t1 = clock::now();
    analytic_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());

    IterationReport it;
    bool newton_failed = false;
    const auto t2 = clock::now();
    try {
      it = newton_fk(g, sample.joints, seed_pose);
    } catch (const SingularJacobian&) {
      newton_failed = true;
    }
    const auto t3 = clock::now();
    newton_us.push_back(std::chrono::duration<double, std::micro>(t3 - t2).count());

    if (newton_failed || !it.converged) {
      ++report.n_newton_diverged;
      continue;
    }
    if (!selected.mode.has_value() && fk.modes.empty()) {
      ++report.n_analytic_no_mode;
      continue;
    }
    ++report.n_mutual;
    double nearest = std::numeric_limits<double>::infinity();
    bool matched = false;
    for (const auto& mode : fk.modes) {
      const double d = std::max({std::abs(mode.pose.x - it.pose.x),
                                 std::abs(mode.pose.y - it.pose.y),
                                 std::abs(mode.pose.z - it.pose.z)});
      nearest = std::min(nearest, d);
      if (d <= 1e-6 && std::abs(normalize_angle(mode.pose.alpha - it.pose.alpha)) <= 1e-8)
        matched = true;
    }
    report.max_pose_discrepancy = std::max(report.max_pose_discrepancy, nearest);
    if (matched) ++agree;
  }

  report.agreement_rate =
      report.n_mutual > 0 ? static_cast<double>(agree) / report.n_mutual : 1.0;
  report.analytic_time = finalize(analytic_us);
  report.iterative_time = finalize(newton_us);
  return report;
}

}  // namespace verne
