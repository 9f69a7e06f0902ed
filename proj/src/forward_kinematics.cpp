#include "verne/forward_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Dense>

#include "verne/errors.hpp"
#include "verne/rootfind.hpp"

namespace verne {

namespace {

constexpr double kVerifyTol = 1e-6;     // mm^2
constexpr double kThetaRel = 1e-11;     // z-step denominator degeneracy, relative
constexpr double kDedupT = 1e-7;
constexpr double kDedupPose = 1e-6;     // mm
constexpr double kHugeT = 1e8;          // beyond this the root belongs to the pi branch
constexpr double kLeakTol = 1e-6;       // degree > 8 leakage triggering ConditioningFailure
constexpr int kNodes = 17;              // 2 * 8 + 1
// Node half-width in t. Kept tight: the cleared residual grows like t^8, so
// wide spans hand the fit a dynamic range that drowns the small mid-range
// values (where the roots live) in the rounding noise of the large ones.
constexpr double kNodeSpan = 2.0;
constexpr double kPoleMargin = 0.05;    // keep nodes this far from denominator zeros

// Intermediate quantities of the elimination chain at a fixed alpha. The
// leg-I denominator p = R1 cos(alpha) - r1 has been cleared analytically from
// the z and y expressions, so the only true pole left is theta_p (the z-step
// denominator, proportional to the cleared residual's m(t) factor).
struct ChainTerms {
  double c, s;      // cos/sin alpha
  double p;         // R1 c - r1
  double w;         // rho3 - rho2 - 2 R2 s
  double g;         // R2 c - r4
  double theta_p;   // 4 R1 s g + 2 p w
  double theta_scale;
};

ChainTerms chain_terms(const MachineGeometry& geom, const JointCoordinates& j,
                       double alpha) {
  ChainTerms t;
  t.c = std::cos(alpha);
  t.s = std::sin(alpha);
  t.p = geom.R1 * t.c - geom.r1;
  t.w = j.rho3 - j.rho2 - 2.0 * geom.R2 * t.s;
  t.g = geom.R2 * t.c - geom.r4;
  t.theta_p = 4.0 * geom.R1 * t.s * t.g + 2.0 * t.p * t.w;
  t.theta_scale = 4.0 * geom.R1 * (std::abs(t.g) + std::abs(t.w)) + 1.0;
  return t;
}

// Solves the remaining linear relation for x given y and z (difference of
// the leg-I and leg-II constraints).
double x_from_yz(const MachineGeometry& geom, const JointCoordinates& j,
                 const ChainTerms& t, double y, double z) {
  const double e1 = geom.leg1_offset();
  const double e2 = geom.leg23_offset();
  const double A = t.p;                        // R1 c - r1
  const double B = -t.g;                       // -(R2 c - r4)
  const double Ap = geom.R1 * t.s - j.rho1;
  const double Bp = -geom.R2 * t.s - j.rho2;
  const double bracket = (e1 * e1 - e2 * e2) + 2.0 * y * (A - B) + (A * A - B * B) +
                         2.0 * z * (Ap - Bp) + (Ap * Ap - Bp * Bp) +
                         geom.L2 * geom.L2 - geom.L1 * geom.L1;
  return -bracket / (2.0 * (e1 - e2));
}

bool x_step_degenerate(const MachineGeometry& geom) {
  const double e1 = geom.leg1_offset();
  const double e2 = geom.leg23_offset();
  return std::abs(e1 - e2) <= 1e-12 * (std::abs(e1) + std::abs(e2) + 1.0);
}

// All candidate poses at a fixed alpha. Generic alpha yields one pose from
// the chain; at a z-step degeneracy the difference equation becomes a
// consistency condition and the pose family collapses to the roots of a
// quadratic in z.
std::vector<PlatformPose> poses_at_alpha(const MachineGeometry& geom,
                                         const JointCoordinates& j, double alpha) {
  std::vector<PlatformPose> out;
  if (x_step_degenerate(geom)) throw DegenerateChain(DegenerateChain::Step::x_elimination);
  const ChainTerms t = chain_terms(geom, j, alpha);
  const double dL = geom.L3 * geom.L3 - geom.L2 * geom.L2;
  const double span = t.w * (2.0 * j.rho1 - j.rho2 - j.rho3) + dL;

  if (std::abs(t.theta_p) > kThetaRel * t.theta_scale) {
    const double psi_p =
        4.0 * geom.R1 * t.s * j.rho1 * t.g + t.p * (t.w * (j.rho2 + j.rho3) - dL);
    const double z = psi_p / t.theta_p;
    const double y = geom.R1 * t.s * span / t.theta_p;
    out.push_back({x_from_yz(geom, j, t, y, z), y, z, normalize_angle(alpha)});
    return out;
  }

  // z-step degenerate: the difference equation must be identically zero.
  if (std::abs(geom.R1 * t.s * span) > 1e-6 * t.theta_scale * (1.0 + std::abs(j.rho1)))
    return out;  // inconsistent, no solution at this alpha
  if (std::abs(t.p) <= 1e-12 * (geom.R1 + geom.r1)) return out;  // doubly degenerate

  // y and x are affine in z; the midpoint constraint closes a quadratic.
  const double k = geom.R1 * t.s / t.p;
  const double ya = k * j.rho1, yb = -k;  // y = ya + yb z
  const double e1 = geom.leg1_offset();
  const double e2 = geom.leg23_offset();
  const double A = t.p, B = -t.g;
  const double Ap = geom.R1 * t.s - j.rho1;
  const double Bp = -geom.R2 * t.s - j.rho2;
  const double C0 = (e1 * e1 - e2 * e2) + (A * A - B * B) + (Ap * Ap - Bp * Bp) +
                    geom.L2 * geom.L2 - geom.L1 * geom.L1;
  const double xa = -(C0 + 2.0 * ya * (A - B)) / (2.0 * (e1 - e2));
  const double xb = -(2.0 * yb * (A - B) + 2.0 * (Ap - Bp)) / (2.0 * (e1 - e2));
  const double rad =
      geom.L1 * geom.L1 -
      (geom.R1 * geom.R1 + geom.r1 * geom.r1 - 2.0 * geom.R1 * geom.r1 * t.c);
  const double qa = xb * xb + yb * yb + 1.0;
  const double qb = 2.0 * ((xa + e1) * xb + ya * yb - j.rho1);
  const double qc = (xa + e1) * (xa + e1) + ya * ya + j.rho1 * j.rho1 - rad;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return out;
  const double sq = std::sqrt(disc);
  for (double sgn : {+1.0, -1.0}) {
    const double z = (-qb + sgn * sq) / (2.0 * qa);
    out.push_back({xa + xb * z, ya + yb * z, z, normalize_angle(alpha)});
  }
  return out;
}

// z-step denominator as a quadratic in t (descending: a2 t^2 + a1 t + a0).
// theta_p = 2 m(t) / (1 + t^2).
struct MQuadratic {
  double a2, a1, a0;
  double eval(double t) const { return (a2 * t + a1) * t + a0; }
};

MQuadratic m_quadratic(const MachineGeometry& geom, const JointCoordinates& j) {
  const double drho = j.rho2 - j.rho3;
  return {drho * (geom.R1 + geom.r1), -4.0 * (geom.r4 * geom.R1 - geom.r1 * geom.R2),
          -drho * (geom.R1 - geom.r1)};
}

std::vector<double> m_real_roots(const MQuadratic& m) {
  std::vector<double> roots;
  const double scale = std::abs(m.a2) + std::abs(m.a1) + std::abs(m.a0);
  if (scale == 0.0) return roots;
  if (std::abs(m.a2) > 1e-14 * scale) {
    const double disc = m.a1 * m.a1 - 4.0 * m.a2 * m.a0;
    if (disc < 0.0) return roots;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (m.a1 + (m.a1 >= 0.0 ? sq : -sq));
    roots.push_back(q / m.a2);
    if (q != 0.0) roots.push_back(m.a0 / q);
    else roots.push_back(0.0);
  } else if (std::abs(m.a1) > 1e-14 * scale) {
    roots.push_back(-m.a0 / m.a1);
  }
  return roots;
}

int sign_of(double v) { return v < 0.0 ? -1 : +1; }

bool joints_within_limits(const MachineGeometry& g, const JointCoordinates& j) {
  const double rho[3] = {j.rho1, j.rho2, j.rho3};
  for (int i = 0; i < 3; ++i)
    if (rho[i] < g.rho_limits[i][0] || rho[i] > g.rho_limits[i][1]) return false;
  return true;
}

AssemblyMode make_mode(const MachineGeometry& g, const JointCoordinates& j, double t,
                       const PlatformPose& pose, double residual) {
  AssemblyMode mode;
  mode.t = t;
  mode.pose = pose;
  mode.max_residual = residual;
  const double s = std::sin(pose.alpha);
  mode.indices.s1 = sign_of(j.rho1 - pose.z);
  mode.indices.s2 = sign_of(j.rho2 - pose.z + g.R2 * s);
  mode.indices.s3 = sign_of(j.rho3 - pose.z - g.R2 * s);
  mode.feasibility.within_joint_limits = joints_within_limits(g, j);
  mode.feasibility.no_rod_crossing = g.R1 * std::cos(pose.alpha) > g.r1;
  mode.feasibility.is_reachable_mode =
      mode.indices.s1 == -1 && mode.indices.s2 == -1 && mode.indices.s3 == -1 &&
      mode.feasibility.no_rod_crossing && mode.feasibility.within_joint_limits;
  return mode;
}

}  // namespace

PlatformPose fk_chain(const MachineGeometry& geom, const JointCoordinates& joints,
                      double alpha) {
  if (x_step_degenerate(geom)) throw DegenerateChain(DegenerateChain::Step::x_elimination);
  const ChainTerms t = chain_terms(geom, joints, alpha);
  if (std::abs(t.p) <= 1e-12 * (geom.R1 + geom.r1))
    throw DegenerateChain(DegenerateChain::Step::y_elimination);
  if (std::abs(t.theta_p) <= kThetaRel * t.theta_scale)
    throw DegenerateChain(DegenerateChain::Step::z_elimination);
  const auto poses = poses_at_alpha(geom, joints, alpha);
  return poses.front();
}

double fk_residual(const MachineGeometry& geom, const JointCoordinates& joints, double t) {
  const double alpha = 2.0 * std::atan(t);
  if (x_step_degenerate(geom)) throw DegenerateChain(DegenerateChain::Step::x_elimination);
  const ChainTerms ct = chain_terms(geom, joints, alpha);
  if (std::abs(ct.theta_p) <= kThetaRel * ct.theta_scale)
    throw DegenerateChain(DegenerateChain::Step::z_elimination);
  const auto poses = poses_at_alpha(geom, joints, alpha);
  const PlatformPose& pose = poses.front();
  const double x1 = pose.x + geom.leg1_offset();
  const double yterm = pose.y + geom.R1 * ct.c - geom.r1;
  const double zterm = pose.z + geom.R1 * ct.s - joints.rho1;
  return x1 * x1 + yterm * yterm + zterm * zterm - geom.L1 * geom.L1;
}

double fk_residual_cleared(const MachineGeometry& geom, const JointCoordinates& joints,
                           double t) {
  const double u = 1.0 + t * t;
  const MQuadratic m = m_quadratic(geom, joints);
  const double mv = m.eval(t);
  return fk_residual(geom, joints, t) * u * u * mv * mv;
}

FkPolynomial fk_polynomial(const MachineGeometry& geom, const JointCoordinates& joints) {
  // Chebyshev nodes, nudged off the z-step and leg-I denominator zeros where
  // the chain evaluation loses accuracy.
  std::vector<double> bad = m_real_roots(m_quadratic(geom, joints));
  const double q2 = (geom.R1 - geom.r1) / (geom.R1 + geom.r1);
  if (q2 > 0.0) {
    bad.push_back(std::sqrt(q2));
    bad.push_back(-std::sqrt(q2));
  }
  std::array<double, kNodes> nodes;
  for (int i = 0; i < kNodes; ++i) {
    double t = kNodeSpan * std::cos((2.0 * i + 1.0) * M_PI / (2.0 * kNodes));
    bool moved = true;
    while (moved) {
      moved = false;
      for (double b : bad)
        if (std::abs(t - b) < kPoleMargin) { t += 1.3 * kPoleMargin; moved = true; }
    }
    nodes[i] = t;
  }

  // Fit in the Chebyshev basis of tau = t / span (well conditioned at these
  // nodes), then convert only the degree <= 8 part to monomials.
  Eigen::MatrixXd Phi(kNodes, kNodes);
  Eigen::VectorXd F(kNodes);
  for (int i = 0; i < kNodes; ++i) {
    const double tau = nodes[i] / kNodeSpan;
    Phi(i, 0) = 1.0;
    Phi(i, 1) = tau;
    for (int k = 2; k < kNodes; ++k) Phi(i, k) = 2.0 * tau * Phi(i, k - 1) - Phi(i, k - 2);
    F(i) = fk_residual_cleared(geom, joints, nodes[i]);
  }
  const Eigen::VectorXd coef = Phi.colPivHouseholderQr().solve(F);

  double maxc = 0.0;
  for (int k = 0; k < kNodes; ++k) maxc = std::max(maxc, std::abs(coef(k)));
  double leak = 0.0;
  for (int k = 9; k < kNodes; ++k) leak = std::max(leak, std::abs(coef(k)));
  const double leakage = maxc > 0.0 ? leak / maxc : 0.0;
  if (leakage > kLeakTol) throw ConditioningFailure(leakage);

  // Chebyshev-to-monomial via the T_{k+1} = 2 tau T_k - T_{k-1} recurrence.
  std::array<std::array<double, 9>, 9> T{};
  T[0][0] = 1.0;
  T[1][1] = 1.0;
  for (int k = 2; k <= 8; ++k)
    for (int j = 0; j <= 8; ++j)
      T[k][j] = (j > 0 ? 2.0 * T[k - 1][j - 1] : 0.0) - T[k - 2][j];

  FkPolynomial poly;
  poly.conditioning = leakage;
  poly.coeffs.assign(9, 0.0);
  for (int k = 0; k <= 8; ++k)
    for (int j = 0; j <= 8; ++j) poly.coeffs[j] += coef(k) * T[k][j];
  double scale = 1.0;
  for (int j = 0; j <= 8; ++j) {
    poly.coeffs[j] /= scale;
    scale *= kNodeSpan;
  }
  return poly;
}

FkResult forward_kinematics_all(const MachineGeometry& geom, const JointCoordinates& joints) {
  FkResult result;
  char note[160];

  auto try_emit = [&](double t, double alpha) {
    std::vector<PlatformPose> poses;
    try {
      poses = poses_at_alpha(geom, joints, alpha);
    } catch (const DegenerateChain& e) {
      result.diagnostics.push_back(std::string("skipped branch: ") + e.what());
      return;
    }
    for (const auto& pose : poses) {
      const double res = max_constraint_residual(geom, pose, joints);
      if (res <= kVerifyTol) result.modes.push_back(make_mode(geom, joints, t, pose, res));
    }
  };

  // Generic branch: characteristic polynomial roots, polished on the residual.
  bool have_poly = true;
  FkPolynomial poly;
  try {
    poly = fk_polynomial(geom, joints);
  } catch (const ConditioningFailure& e) {
    have_poly = false;
    std::snprintf(note, sizeof note, "polynomial fit conditioning failure (leak %.2e)",
                  e.leakage);
    result.diagnostics.push_back(note);
  } catch (const DegenerateChain& e) {
    have_poly = false;
    result.diagnostics.push_back(std::string("generic branch unavailable: ") + e.what());
  }
  if (have_poly) {
    const PolynomialReal p(poly.coeffs);
    if (!p.is_zero() && p.degree() >= 1) {
      for (const auto& root : real_roots(p)) {
        double t = root.value;
        // Polish on the residual itself; the fitted coefficients carry the
        // interpolation error, the residual does not.
        for (int it = 0; it < 80; ++it) {
          double f, fp;
          try {
            const double h = 1e-7 * std::max(1.0, std::abs(t));
            f = fk_residual(geom, joints, t);
            fp = (fk_residual(geom, joints, t + h) - fk_residual(geom, joints, t - h)) /
                 (2.0 * h);
          } catch (const DegenerateChain&) {
            break;
          }
          if (fp == 0.0 || !std::isfinite(fp)) break;
          const double dt = f / fp;
          if (!std::isfinite(dt)) break;
          t -= dt;
          if (std::abs(dt) <= 1e-13 * std::max(1.0, std::abs(t))) break;
        }
        if (!std::isfinite(t) || std::abs(t) > kHugeT) continue;  // pi branch territory
        try_emit(t, 2.0 * std::atan(t));
      }
    }
  }

  // z-step degenerate branch: orientations where the elimination denominator
  // vanishes are invisible to the chain and handled by the fixed-alpha solver.
  for (double tm : m_real_roots(m_quadratic(geom, joints)))
    try_emit(tm, 2.0 * std::atan(tm));

  // alpha = pi branch (t is not finite there).
  try_emit(std::numeric_limits<double>::infinity(), M_PI);

  std::sort(result.modes.begin(), result.modes.end(),
            [](const AssemblyMode& a, const AssemblyMode& b) {
              if (a.t != b.t) return a.t < b.t;
              return a.pose.z < b.pose.z;
            });
  std::vector<AssemblyMode> unique;
  for (const auto& mode : result.modes) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const AssemblyMode& u) {
      const bool t_close = (std::isinf(mode.t) && std::isinf(u.t)) ||
                           std::abs(mode.t - u.t) <= kDedupT * std::max(1.0, std::abs(u.t));
      return t_close && std::abs(mode.pose.x - u.pose.x) <= kDedupPose &&
             std::abs(mode.pose.y - u.pose.y) <= kDedupPose &&
             std::abs(mode.pose.z - u.pose.z) <= kDedupPose;
    });
    if (!dup) unique.push_back(mode);
  }
  result.modes = std::move(unique);
  return result;
}

ModeSelection select_assembly_mode(const std::vector<AssemblyMode>& modes,
                                   const MachineGeometry& geom) {
  (void)geom;
  ModeSelection sel;
  const AssemblyMode* best = nullptr;
  for (const auto& m : modes) {
    if (!m.feasibility.is_reachable_mode) continue;
    ++sel.candidate_count;
    if (best == nullptr || std::abs(m.pose.alpha) < std::abs(best->pose.alpha)) best = &m;
  }
  if (best != nullptr) sel.mode = *best;
  sel.ambiguous = sel.candidate_count > 1;
  return sel;
}

}  // namespace verne
