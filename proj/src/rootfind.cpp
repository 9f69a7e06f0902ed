#include "verne/rootfind.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "verne/errors.hpp"

namespace verne {

namespace {
constexpr double kTrimRel = 1e-13;
constexpr double kImagRel = 1e-9;    // |Im| <= kImagRel * (1 + |Re|) classifies as real
constexpr double kSalvageRel = 1e-3; // widest imaginary part worth polishing from Re
constexpr double kValueRel = 1e-10;  // accepted |p(r)| relative bound
}  // namespace

PolynomialReal::PolynomialReal(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  double maxc = 0.0;
  for (double c : coeffs_) maxc = std::max(maxc, std::abs(c));
  if (maxc == 0.0) {
    coeffs_.clear();
    return;
  }
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimRel * maxc) coeffs_.pop_back();
}

double PolynomialReal::eval(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double PolynomialReal::eval_derivative(double t) const {
  double acc = 0.0;
  for (int k = degree(); k >= 1; --k) acc = acc * t + k * coeffs_[k];
  return acc;
}

PolynomialReal PolynomialReal::derivative() const {
  std::vector<double> d;
  for (int k = 1; k <= degree(); ++k) d.push_back(k * coeffs_[k]);
  return PolynomialReal(std::move(d));
}

namespace {

// Newton on p/p' (simple roots there even where p has multiple ones), so
// multiple roots are polished at the same quadratic rate.
double polish_real(const PolynomialReal& p, const PolynomialReal& dp,
                   const PolynomialReal& ddp, double t) {
  for (int it = 0; it < 60; ++it) {
    const double f = p.eval(t);
    const double f1 = dp.is_zero() ? 0.0 : dp.eval(t);
    const double f2 = ddp.is_zero() ? 0.0 : ddp.eval(t);
    const double denom = f1 * f1 - f * f2;
    double dt;
    if (denom != 0.0 && std::isfinite(denom)) {
      dt = f * f1 / denom;
    } else if (f1 != 0.0 && std::isfinite(f1)) {
      dt = f / f1;
    } else {
      break;
    }
    if (!std::isfinite(dt)) break;
    t -= dt;
    if (std::abs(dt) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

double value_bound(const PolynomialReal& p, double r) {
  double maxc = 0.0;
  for (double c : p.coeffs()) maxc = std::max(maxc, std::abs(c));
  return kValueRel * maxc * std::pow(std::max(1.0, std::abs(r)), p.degree());
}

}  // namespace

std::vector<RealRoot> real_roots(const PolynomialReal& p,
                                 std::optional<std::pair<double, double>> domain) {
  if (p.is_zero()) throw DegenerateInput();

  const int n = p.degree();
  std::vector<RealRoot> roots;
  if (n == 0) return roots;

  // Scale coefficients before forming the companion matrix; the FK
  // coefficients in particular span many orders of magnitude.
  double maxc = 0.0;
  for (double c : p.coeffs()) maxc = std::max(maxc, std::abs(c));
  std::vector<double> sc(p.coeffs());
  for (double& c : sc) c /= maxc;

  std::vector<double> candidates;
  if (n == 1) {
    candidates.push_back(-sc[0] / sc[1]);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -sc[i] / sc[n];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    for (int i = 0; i < n; ++i) {
      const std::complex<double> ev = solver.eigenvalues()[i];
      const double cls = std::abs(ev.imag()) / (1.0 + std::abs(ev.real()));
      if (cls <= kImagRel) {
        candidates.push_back(ev.real());
      } else if (cls <= kSalvageRel) {
        // Nearly-real pair (typical signature of a double real root):
        // try to land it from the real part and gate on the value bound below.
        candidates.push_back(ev.real());
      }
    }
  }

  const PolynomialReal dp = p.derivative();
  const PolynomialReal ddp = dp.derivative();
  std::vector<double> accepted;
  for (double cand : candidates) {
    const double r = polish_real(p, dp, ddp, cand);
    if (!std::isfinite(r)) continue;
    if (std::abs(p.eval(r)) > value_bound(p, r)) continue;
    accepted.push_back(r);
  }
  std::sort(accepted.begin(), accepted.end());

  for (double r : accepted) {
    if (!roots.empty() && std::abs(r - roots.back().value) <=
                              1e-7 * std::max(1.0, std::abs(r))) {
      roots.back().multiple = true;  // collapsed pair
      continue;
    }
    RealRoot root;
    root.value = r;
    if (!dp.is_zero()) {
      double maxdc = 0.0;
      for (double c : dp.coeffs()) maxdc = std::max(maxdc, std::abs(c));
      const double dbound =
          1e-7 * maxdc * std::pow(std::max(1.0, std::abs(r)), dp.degree());
      root.multiple = std::abs(dp.eval(r)) <= dbound;
    } else {
      root.multiple = true;
    }
    roots.push_back(root);
  }

  if (domain) {
    std::vector<RealRoot> in;
    for (const auto& r : roots)
      if (r.value >= domain->first && r.value <= domain->second) in.push_back(r);
    roots = std::move(in);
  }
  return roots;
}

}  // namespace verne
