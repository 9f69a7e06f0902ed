#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "verne/errors.hpp"
#include "verne/geometry.hpp"

using namespace verne;
using testing::synthetic_geometry;

TEST_CASE("grubler mobility of the parallel module is 3") {
  CHECK(grubler_mobility(11, 15, 39, 6) == 3);
}

TEST_CASE("grubler mobility trivial counts") {
  CHECK(grubler_mobility(1, 0, 0, 0) == 0);   // free body against ground
  CHECK(grubler_mobility(2, 1, 1, 0) == 1);   // base + slider on one prismatic
}

TEST_CASE("grubler mobility is linear in each count") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> dist(0, 50);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t np = dist(rng) + 1, ni = dist(rng), f = dist(rng), mi = dist(rng);
    const std::int64_t base = grubler_mobility(np, ni, f, mi);
    CHECK(grubler_mobility(np + 1, ni, f, mi) - base == 6);
    CHECK(grubler_mobility(np, ni + 1, f, mi) - base == -6);
    CHECK(grubler_mobility(np, ni, f + 1, mi) - base == 1);
    CHECK(grubler_mobility(np, ni, f, mi + 1) - base == -1);
  }
}

TEST_CASE("mobility summary stores its own identity") {
  const MobilitySummary s = make_mobility_summary(11, 15, 39, 6);
  CHECK(s.mobility == 3);
  CHECK(s.mobility == 6 * (s.n_bodies - s.n_joints - 1) + s.sum_joint_dof - s.n_internal_dof);
}

TEST_CASE("validate_geometry rejects broken configurations") {
  MachineGeometry g = synthetic_geometry();
  CHECK_NOTHROW(validate_geometry(g));

  MachineGeometry bad = g;
  bad.R1 = -1.0;
  CHECK_THROWS_AS(validate_geometry(bad), ConfigError);

  bad = g;
  bad.L1 = 100.0;  // (R1 - r1)^2 = 200^2 > L1^2
  CHECK_THROWS_AS(validate_geometry(bad), ConfigError);

  bad = g;
  bad.rho_limits[1] = {500.0, 100.0};
  CHECK_THROWS_AS(validate_geometry(bad), ConfigError);
}

TEST_CASE("normalize_angle lands in (-pi, pi]") {
  CHECK(normalize_angle(M_PI) == doctest::Approx(M_PI));
  CHECK(normalize_angle(-M_PI) == doctest::Approx(M_PI));
  CHECK(normalize_angle(3.0 * M_PI / 2.0) == doctest::Approx(-M_PI / 2.0));
  CHECK(normalize_angle(0.3) == doctest::Approx(0.3));
}

TEST_CASE("slider anchors ride their slider") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-500.0, 1500.0);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const JointCoordinates j{d(rng), d(rng), d(rng)};
    const PlatformPose pose{d(rng), d(rng), d(rng), ang(rng)};
    const AnchorSet set = anchor_points(g, j, pose);
    const double rho[3] = {j.rho1, j.rho2, j.rho3};
    for (int leg = 0; leg < 3; ++leg)
      for (int rod = 0; rod < 2; ++rod) CHECK(set.A[leg][rod].z() == rho[leg]);
  }
}

TEST_CASE("platform anchors of leg I at zero rotation differ only in y") {
  const MachineGeometry g = synthetic_geometry();
  const PlatformPose pose{25.0, -40.0, 900.0, 0.0};
  const AnchorSet set = anchor_points(g, {100, 200, 300}, pose);
  const Eigen::Vector3d diff = set.B[0][0] - set.B[0][1];
  CHECK(diff.x() == doctest::Approx(0.0));
  CHECK(diff.z() == doctest::Approx(0.0));
  // The rotating pair carries the wide spacing; the slider pair the narrow one.
  CHECK(diff.y() == doctest::Approx(2.0 * g.R1));
  CHECK((set.A[0][0] - set.A[0][1]).norm() == doctest::Approx(2.0 * g.r1));
}

TEST_CASE("legs II and III are parallelograms, leg I is not") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-300.0, 1100.0);
  std::uniform_real_distribution<double> ang(-2.5, 2.5);
  for (int i = 0; i < 50; ++i) {
    const JointCoordinates j{d(rng), d(rng), d(rng)};
    const PlatformPose pose{d(rng), d(rng), d(rng), ang(rng)};
    const AnchorSet set = anchor_points(g, j, pose);
    for (int leg : {1, 2}) {
      const double slider_gap = (set.A[leg][0] - set.A[leg][1]).norm();
      const double platform_gap = (set.B[leg][0] - set.B[leg][1]).norm();
      CHECK(platform_gap == doctest::Approx(slider_gap).epsilon(1e-12));
    }
    const double a_gap = (set.A[0][0] - set.A[0][1]).norm();
    const double b_gap = (set.B[0][0] - set.B[0][1]).norm();
    CHECK(std::abs(a_gap - b_gap) > 1.0);  // R1 != r1 by a wide margin here
  }
}

TEST_CASE("anchor distances reproduce the constraint residuals") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-400.0, 1400.0);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  const double lens[3] = {g.L1, g.L2, g.L3};
  for (int i = 0; i < 1000; ++i) {
    const JointCoordinates j{d(rng), d(rng), d(rng)};
    const PlatformPose pose{d(rng), d(rng), d(rng), ang(rng)};
    const AnchorSet set = anchor_points(g, j, pose);
    const auto res = constraint_residuals(g, pose, j);
    // Leg I's two rods map to the first two residuals; each parallelogram
    // rod of legs II/III reproduces its leg's single residual.
    const double from_anchors[4] = {
        (set.B[0][0] - set.A[0][0]).squaredNorm() - lens[0] * lens[0],
        (set.B[0][1] - set.A[0][1]).squaredNorm() - lens[0] * lens[0],
        (set.B[1][0] - set.A[1][0]).squaredNorm() - lens[1] * lens[1],
        (set.B[2][0] - set.A[2][0]).squaredNorm() - lens[2] * lens[2],
    };
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(from_anchors[k] - res[k]) <= 1e-9 * lens[0] * lens[0]);
    for (int leg : {1, 2})
      CHECK((set.B[leg][1] - set.A[leg][1]).squaredNorm() ==
            doctest::Approx((set.B[leg][0] - set.A[leg][0]).squaredNorm()));
  }
}

TEST_CASE("centered symmetric pose zeroes the leg-I residuals") {
  const MachineGeometry g = synthetic_geometry();
  PlatformPose pose;
  pose.x = g.d1 - g.D1;
  pose.y = 0.0;
  pose.alpha = 0.0;
  const double drop = std::sqrt(g.L1 * g.L1 - (g.R1 - g.r1) * (g.R1 - g.r1));
  pose.z = 950.0;
  const JointCoordinates j{pose.z + drop, 0.0, 0.0};  // z - rho1 = -drop
  const auto res = constraint_residuals(g, pose, j);
  CHECK(std::abs(res[0]) <= 1e-9);
  CHECK(std::abs(res[1]) <= 1e-9);
}

TEST_CASE("unit z perturbation shifts the first residual quadratically") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-200.0, 1200.0);
  std::uniform_real_distribution<double> ang(-1.2, 1.2);
  for (int i = 0; i < 50; ++i) {
    const PlatformPose pose{d(rng), d(rng), d(rng), ang(rng)};
    const JointCoordinates j{d(rng), d(rng), d(rng)};
    PlatformPose bumped = pose;
    bumped.z += 1.0;
    const double delta =
        constraint_residuals(g, bumped, j)[0] - constraint_residuals(g, pose, j)[0];
    const double expected =
        2.0 * (pose.z + g.R1 * std::sin(pose.alpha) - j.rho1) + 1.0;
    CHECK(delta == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("mirror symmetry of the residuals") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> d(-200.0, 1200.0);
  for (int i = 0; i < 100; ++i) {
    const PlatformPose pose{d(rng), 0.0, d(rng), 0.0};
    const double rho23 = d(rng);
    const JointCoordinates j{d(rng), rho23, rho23};
    const auto res = constraint_residuals(g, pose, j);
    CHECK(res[0] == doctest::Approx(res[1]));
    CHECK(res[2] == doctest::Approx(res[3]));  // L2 = L3 in this geometry
  }
}
