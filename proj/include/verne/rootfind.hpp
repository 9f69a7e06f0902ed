#ifndef VERNE_ROOTFIND_HPP
#define VERNE_ROOTFIND_HPP

#include <optional>
#include <utility>
#include <vector>

namespace verne {

// Dense real polynomial, coefficients in ascending degree order. Trailing
// coefficients below 1e-13 of the largest magnitude are trimmed on
// construction, so the leading coefficient is meaningful.
class PolynomialReal {
 public:
  explicit PolynomialReal(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  double eval(double t) const;                 // Horner
  double eval_derivative(double t) const;
  PolynomialReal derivative() const;

 private:
  std::vector<double> coeffs_;
};

struct RealRoot {
  double value = 0;
  bool multiple = false;  // derivative also vanishes at the root's tolerance scale
};

// All real roots of p, sorted ascending, optionally restricted to a closed
// interval. Companion-matrix eigenvalues followed by real-line Newton
// polishing; near-real eigenvalue pairs (as produced by double roots) are
// salvaged by polishing from their real part and kept only when the polished
// point satisfies |p(r)| <= 1e-10 * max|coeff| * max(1, |r|)^degree.
// Throws DegenerateInput for the zero polynomial.
std::vector<RealRoot> real_roots(
    const PolynomialReal& p,
    std::optional<std::pair<double, double>> domain = std::nullopt);

}  // namespace verne

#endif  // VERNE_ROOTFIND_HPP
