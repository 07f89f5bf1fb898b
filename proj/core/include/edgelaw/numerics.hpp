#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace edgelaw {

using cplx = std::complex<double>;

enum class ContourKind { vertical, circle, rectangle, wedge };

// Nodes and weights of a path integral. Weights carry dz; the 1/(2 pi i)
// prefactor is left to the kernels.
struct Contour {
  ContourKind kind = ContourKind::circle;
  std::vector<cplx> nodes;
  std::vector<cplx> weights;
  double truncation = 0.0;  // half-height, ray length or left extent; 0 if closed

  std::size_t size() const { return nodes.size(); }
  cplx weight_sum() const;
};

struct ContourSpec {
  ContourKind kind = ContourKind::circle;
  int nodes = 64;
  // vertical: real part d, half-height T
  // circle: center, radius
  // rectangle: left, right, half_height (per side panels derived from nodes)
  // wedge: apex, angle, length; rays apex + e^{+-i angle} s, traversed from
  //        the lower ray towards the apex and out along the upper ray
  double d = 0.0;
  double half_height = 0.0;
  cplx center = 0.0;
  double radius = 1.0;
  double left = 0.0;
  double right = 0.0;
  double apex = 0.0;
  double angle = 0.0;
  double length = 0.0;
};

Contour make_contour(const ContourSpec& spec);

// Periodic trapezoid, counter clockwise.
Contour circle_contour(cplx center, double radius, int n);
// Trapezoid on d + i s, |s| <= half_height, oriented upwards.
Contour vertical_contour(double d, double half_height, int n);
// Composite Gauss-Legendre on the boundary of [left,right] x [-h,h],
// counter clockwise, panels no longer than panel_len.
Contour rectangle_contour(double left, double right, double half_height, double panel_len = 0.25,
                          int per_panel = 16);
// Composite Gauss-Legendre on the two rays of a wedge.
Contour wedge_contour(double apex, double angle, double length, int panels, int per_panel = 16);

// Gauss-Legendre nodes and weights on [-1,1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

// Quadrature on [a, a+L] for functions on [a, inf). An optional breakpoint
// inside the interval splits the rule so integrands with a jump there are
// integrated exactly piecewise.
struct SemiInfiniteRule {
  double threshold = 0.0;
  double length = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};
SemiInfiniteRule semi_infinite_rule(double a, double length, int n, double breakpoint = std::nan(""));

// Composite Gauss-Legendre integral of f on [a,b] with the given panel count.
template <class F>
auto integrate(F&& f, double a, double b, int panels = 1, int per_panel = 16) {
  const GaussRule& g = gauss_legendre(per_panel);
  const double h = (b - a) / panels;
  decltype(f(a)) s{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < per_panel; ++i) s += g.w[i] * 0.5 * h * f(lo + 0.5 * h * (g.x[i] + 1.0));
  }
  return s;
}

cplx complex_gamma(cplx z);
cplx log_gamma(cplx z);
// 1/Gamma from the Weierstrass product truncated after n factors.
cplx inv_gamma_weierstrass(cplx z, long n);

double heat_kernel(double t, double x, double y);
double normal_cdf(double x);

double airy_ai(double x);
double airy_ai_prime(double x);
inline double airy_function(double x) { return airy_ai(x); }

double hermitian_eigen_max(const Eigen::MatrixXcd& m);
double symmetric_eigen_max(const Eigen::MatrixXd& m);
// No Hermiticity check; used by samplers on matrices they built themselves.
double eigen_max_unchecked(const Eigen::MatrixXcd& m);

}  // namespace edgelaw
