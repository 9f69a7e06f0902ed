#ifndef VERNE_BENCH_HPP
#define VERNE_BENCH_HPP

#include <cstdint>
#include <random>

#include "verne/geometry.hpp"

namespace verne {

struct DurationStats {
  double mean_us = 0;
  double min_us = 0;
  double max_us = 0;
  double total_us = 0;
};

struct BenchReport {
  int n_samples = 0;
  std::uint64_t seed = 0;
  DurationStats analytic_time;
  DurationStats iterative_time;
  // Fraction of mutually-successful trials where the Newton pose matches a
  // verified analytic assembly mode to 1e-6 mm / 1e-8 rad. 1 when vacuous.
  double agreement_rate = 1.0;
  double max_pose_discrepancy = 0;  // mm, worst nearest-mode distance
  int n_mutual = 0;                 // both solvers succeeded
  int n_newton_diverged = 0;        // counted separately from agreement
  int n_analytic_no_mode = 0;
  bool ran_serially = true;         // trials are timed one at a time
};

// A random pose reachable in the working mode (all s_i = -1, within limits),
// plus its joints. Deterministic given the generator state.
struct SampledConfiguration {
  PlatformPose pose;
  JointCoordinates joints;
};

SampledConfiguration sample_working_configuration(const MachineGeometry& geom,
                                                  std::mt19937_64& rng);

// The home-like pose used to seed the iterative solver: platform centered on
// the leg-I axis at alpha = 0, leg-I slider at mid travel.
PlatformPose nominal_seed_pose(const MachineGeometry& geom);

// Times the analytic forward kinematics (all modes + reachable-mode
// selection) against the Newton iteration seeded at the nominal pose, over
// n_samples joint inputs generated from working-mode poses. Sample set and
// agreement statistics are deterministic per seed; timings are not.
BenchReport compare_solvers(const MachineGeometry& geom, int n_samples, std::uint64_t seed);

}  // namespace verne

#endif  // VERNE_BENCH_HPP
