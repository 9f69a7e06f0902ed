#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support.hpp"
#include "verne/coupling.hpp"
#include "verne/errors.hpp"

using namespace verne;
using testing::synthetic_geometry;

TEST_CASE("quarter-turn ellipse has the closed-form axes") {
  const MachineGeometry g = synthetic_geometry();
  const CouplingEllipse e = coupling_ellipse(g, M_PI / 2.0);
  const double a = std::sqrt(g.L1 * g.L1 - g.R1 * g.R1 - g.r1 * g.r1);
  CHECK(e.a == doctest::Approx(a).epsilon(1e-12));
  CHECK(e.b == doctest::Approx(g.R1 * a / std::sqrt(g.R1 * g.R1 + g.r1 * g.r1)).epsilon(1e-12));
  CHECK(e.center_x == doctest::Approx(g.d1 - g.D1));
}

TEST_CASE("opposite orientations share one ellipse") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.05, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double alpha = ang(rng);
    const CouplingEllipse plus = coupling_ellipse(g, alpha);
    const CouplingEllipse minus = coupling_ellipse(g, -alpha);
    CHECK(plus.a == doctest::Approx(minus.a).epsilon(1e-14));
    CHECK(plus.b == doctest::Approx(minus.b).epsilon(1e-14));
  }
}

TEST_CASE("sampled ellipse points satisfy the coupling constraint") {
  const MachineGeometry g = synthetic_geometry();
  const CouplingEllipse e = coupling_ellipse(g, 1.0);
  for (int i = 0; i < 64; ++i) {
    const double th = 2.0 * M_PI * i / 64.0;
    const double x = e.center_x + e.a * std::cos(th);
    const double y = e.b * std::sin(th);
    CHECK(std::abs(coupling_residual(g, x, y, 1.0)) <= 1e-6);
  }
}

TEST_CASE("degenerate and unreachable orientations raise typed errors") {
  const MachineGeometry g = synthetic_geometry();
  CHECK_THROWS_AS(coupling_ellipse(g, 0.0), DegenerateOrientation);
  try {
    coupling_ellipse(g, M_PI);
  } catch (const DegenerateOrientation& e) {
    const double expected = std::sqrt(g.L1 * g.L1 - (g.R1 + g.r1) * (g.R1 + g.r1));
    CHECK(e.segment_half_length == doctest::Approx(expected));
  }

  MachineGeometry short_rods = g;
  short_rods.L1 = 300.0;  // reachable near alpha = 0, not near pi
  CHECK_THROWS_AS(coupling_ellipse(short_rods, M_PI / 2.0), UnreachableOrientation);
  CHECK_NOTHROW(coupling_ellipse(short_rods, 0.3));
}

TEST_CASE("cubic leading coefficient is position independent") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-700.0, 700.0);
  for (int i = 0; i < 30; ++i) {
    const OrientationCubic c = orientation_cubic(g, d(rng), d(rng));
    CHECK(c.p1 == doctest::Approx(2.0 * g.R1 * g.R1 * g.R1 * g.r1));
    CHECK(c.p1 > 0.0);
  }
}

TEST_CASE("on-ellipse positions are cubic roots") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(0.1, 2.8);
  std::uniform_real_distribution<double> th(0.0, 2.0 * M_PI);
  for (int i = 0; i < 100; ++i) {
    const double alpha = ang(rng);
    const CouplingEllipse e = coupling_ellipse(g, alpha);
    const double theta = th(rng);
    const double x = e.center_x + e.a * std::cos(theta);
    const double y = e.b * std::sin(theta);
    const OrientationCubic c = orientation_cubic(g, x, y);
    const double maxc = std::max({std::abs(c.p1), std::abs(c.p2), std::abs(c.p3),
                                  std::abs(c.p4)});
    CHECK(std::abs(c.eval(std::cos(alpha))) <= 1e-9 * maxc);
  }
}

TEST_CASE("centered position on the symmetry axis admits both flat orientations") {
  const MachineGeometry g = synthetic_geometry();  // L1 > R1 + r1 here
  const OrientationCubic c = orientation_cubic(g, g.d1 - g.D1, 0.0);
  const double maxc =
      std::max({std::abs(c.p1), std::abs(c.p2), std::abs(c.p3), std::abs(c.p4)});
  CHECK(std::abs(c.eval(1.0)) <= 1e-12 * maxc);
  CHECK(std::abs(c.eval(-1.0)) <= 1e-12 * maxc);

  const auto angles = feasible_orientations(g, g.d1 - g.D1, 0.0);
  bool has_zero = false, has_pi = false;
  for (double a : angles) {
    has_zero = has_zero || std::abs(a) <= 1e-9;
    has_pi = has_pi || std::abs(a - M_PI) <= 1e-9;
  }
  CHECK(has_zero);
  CHECK(has_pi);
}

TEST_CASE("constructed orientations are recovered to 1e-9") {
  const MachineGeometry g = synthetic_geometry();
  const double alpha = 0.7;
  const CouplingEllipse e = coupling_ellipse(g, alpha);
  const double x = e.center_x + e.a * std::cos(2.1);
  const double y = e.b * std::sin(2.1);
  const auto angles = feasible_orientations(g, x, y);
  bool plus = false, minus = false;
  for (double a : angles) {
    plus = plus || std::abs(a - alpha) <= 1e-9;
    minus = minus || std::abs(a + alpha) <= 1e-9;
  }
  CHECK(plus);
  CHECK(minus);
  CHECK(angles.size() <= 4);
}

TEST_CASE("positions outside every ellipse have no orientation") {
  const MachineGeometry g = synthetic_geometry();
  CHECK_THROWS_AS(feasible_orientations(g, 2000.0, 500.0), NoFeasibleOrientation);
  // On the symmetry axis beyond the widest segment.
  CHECK_THROWS_AS(feasible_orientations(g, g.d1 - g.D1 + 900.0, 0.0), NoFeasibleOrientation);
}

TEST_CASE("orientation sets match the dense scan oracle") {
  const MachineGeometry g = synthetic_geometry();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(0.05, 2.9);
  std::uniform_real_distribution<double> th(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> blow(0.2, 1.15);
  int compared = 0;
  for (int i = 0; compared < 100 && i < 500; ++i) {
    // On-, inside- and outside-ellipse positions; y kept away from 0 so the
    // sign-change scan sees every crossing.
    const double alpha = ang(rng);
    double a, b, cx;
    try {
      const CouplingEllipse e = coupling_ellipse(g, alpha);
      a = e.a; b = e.b; cx = e.center_x;
    } catch (const KinematicsError&) {
      continue;
    }
    const double s = blow(rng), t = th(rng);
    const double x = cx + s * a * std::cos(t);
    const double y = s * b * std::sin(t);
    if (std::abs(y) < 5.0) continue;
    std::vector<double> mine;
    try {
      mine = feasible_orientations(g, x, y);
    } catch (const NoFeasibleOrientation&) {
      mine.clear();
    }
    const auto scanned = testing::scan_orientations(g, x, y);
    REQUIRE(mine.size() == scanned.size());
    for (size_t k = 0; k < mine.size(); ++k)
      CHECK(std::abs(mine[k] - scanned[k]) <= 1e-8);
    ++compared;
  }
  CHECK(compared == 100);
}

TEST_CASE("sign convention: negative inside, positive outside") {
  const MachineGeometry g = synthetic_geometry();
  const double alpha = 0.9;
  const CouplingEllipse e = coupling_ellipse(g, alpha);
  for (double th = 0.1; th < 6.2; th += 0.37) {
    const double xin = e.center_x + 0.5 * e.a * std::cos(th);
    const double yin = 0.5 * e.b * std::sin(th);
    CHECK(coupling_residual(g, xin, yin, alpha) < 0.0);
    const double xout = e.center_x + 1.5 * e.a * std::cos(th);
    const double yout = 1.5 * e.b * std::sin(th);
    CHECK(coupling_residual(g, xout, yout, alpha) > 0.0);
  }
}

TEST_CASE("iso-orientation curve families") {
  const MachineGeometry g = synthetic_geometry();
  const IsoCurveSet set = iso_orientation_curves(g, M_PI / 90.0, 32);
  // 181 grid angles in [-pi, pi]; the three sin(alpha) = 0 angles collapse.
  CHECK(set.curves.size() == 178);
  CHECK(set.skipped.size() == 3);
  for (const auto& curve : set.curves) {
    CHECK(curve.points.size() == 32);
    for (const auto& pt : curve.points)
      CHECK(std::abs(coupling_residual(g, pt[0], pt[1], curve.alpha)) <= 1e-6);
  }
  // alpha and -alpha trace the same point set.
  for (const auto& curve : set.curves) {
    if (curve.alpha <= 0.0) continue;
    for (const auto& other : set.curves) {
      if (std::abs(other.alpha + curve.alpha) > 1e-15) continue;
      REQUIRE(other.points.size() == curve.points.size());
      for (size_t i = 0; i < curve.points.size(); ++i) {
        CHECK(other.points[i][0] == doctest::Approx(curve.points[i][0]).epsilon(1e-12));
        CHECK(other.points[i][1] == doctest::Approx(curve.points[i][1]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("iso-curve CSV layout") {
  const MachineGeometry g = synthetic_geometry();
  const IsoCurveSet set = iso_orientation_curves(g, 1.0, 4);
  std::ostringstream os;
  write_iso_curves_csv(os, set);
  const std::string text = os.str();
  CHECK(text.rfind("alpha_rad,x_p_mm,y_p_mm\n", 0) == 0);
  // one row per sample plus the header
  size_t rows = 0;
  for (char c : text) rows += (c == '\n');
  size_t samples = 0;
  for (const auto& c : set.curves) samples += c.points.size();
  CHECK(rows == samples + 1);
}
