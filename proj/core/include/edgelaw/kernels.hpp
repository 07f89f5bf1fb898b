#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "edgelaw/estimate.hpp"
#include "edgelaw/numerics.hpp"
#include "edgelaw/rng.hpp"

namespace edgelaw {

// Drifts mu_1..mu_m. Rate vectors (beta_i = -mu_i) use the same type.
using DriftVector = std::vector<double>;

struct BoundaryFunction {
  enum class Kind { narrow_wedge, flat, linear, sampled };
  Kind kind = Kind::flat;
  double slope = 0.0;  // linear: b(t) = -slope * t
  std::vector<double> grid_t;
  std::vector<double> grid_b;

  static BoundaryFunction narrow_wedge();
  static BoundaryFunction flat();
  static BoundaryFunction linear(double slope);
  static BoundaryFunction sampled(std::vector<double> t, std::vector<double> b);

  // -inf for the narrow wedge at t > 0.
  double operator()(double t) const;
};


// Placement of the two contours of a double contour kernel: a circle for w
// and either a vertical line for z or, for the Airy kernel, wedges.
struct ContourGeometry {
  cplx w_center = 0.0;
  double w_radius = 1.0;
  int w_nodes = 0;  // 0: chosen from the integrand
  double z_line = 2.0;
  double z_half = 0.0;  // 0: chosen from the integrand
  int z_nodes = 0;
  // flat kernel only: z line at Re z = 0 with the circle in Re w < 0 and
  // the crossed pole of 1/(z+w) added back as a single contour residue
  bool split = false;
};

double s_minus(const DriftVector& mu, double t, double x, double y);
double s_bar(const DriftVector& mu, double t, double x, double y);
// prod (d_u - mu_i) applied to the heat kernel in u = x - y, through
// derivatives of the Gaussian (probabilists' Hermite polynomials).
double s_bar_hermite(const DriftVector& mu, double t, double x, double y);
double s_hypo_flat(const DriftVector& mu, double t, double x, double y);

struct HypoMCOptions {
  int paths = 10000;
  double step = 0.0;  // 0: t / 2000
  bool antithetic = true;
};
MCEstimate s_hypo_mc(const BoundaryFunction& b, const DriftVector& mu, double t, double x, double y,
                     RngStream& stream, const HypoMCOptions& opt = {});

// Narrow-wedge and flat composed kernels S_{m,-t1} S^{hypo}_{m,t2} over a
// list of time slots, evaluated in blocks. Contours are chosen per block
// from the argument ranges unless a geometry is supplied.
class ProductKernel {
 public:
  enum class Boundary { narrow_wedge, flat };
  ProductKernel(DriftVector mu, std::vector<double> times, Boundary boundary,
                std::optional<ContourGeometry> geometry = std::nullopt);

  Eigen::MatrixXd block(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const;
  double operator()(int i, double x, int j, double y) const;
  ContourGeometry geometry_for(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const;

  const DriftVector& drifts() const { return mu_; }
  const std::vector<double>& times() const { return times_; }

 private:
  DriftVector mu_;
  std::vector<double> times_;
  Boundary boundary_;
  std::optional<ContourGeometry> fixed_;
};

double k_nw(const DriftVector& mu, double t1, double x, double t2, double y);
double k_flat(const DriftVector& mu, double t1, double x, double t2, double y);

// Single closed contour kernels of the form
//   -(1/2 pi i) oint e^{-(x+y) w} prod (beta_i + w)/(beta_i - w) dw.
class RateKernel {
 public:
  // Arguments enter as x + shift, y + shift. nodes = 0 sizes the circle
  // from the argument range of each block.
  explicit RateKernel(std::vector<double> beta, double shift = 0.0, int nodes = 0);
  Eigen::MatrixXd block(const std::vector<double>& x, const std::vector<double>& y) const;
  double operator()(double x, double y) const;
  Contour contour_for(double smin, double smax) const;

 private:
  std::vector<double> beta_;
  double shift_;
  int nodes_;
};

double k_piflat(const std::vector<double>& beta, double x, double y);
double k_loe(int n, double x, double y);
double k_bridge(const std::vector<double>& nu, double r, double x, double y);

// -e^{(t_j-t_i) d^2/2}(x,y) 1{t_i<t_j} + S_{m,-t_i} S^{hypo(b)}_{m,t_j}(x,y).
// Narrow wedge and flat use the closed forms; other boundaries compose
// s_minus with s_hypo_mc numerically.
double brownian_block_kernel(const BoundaryFunction& b, const DriftVector& mu, const std::vector<double>& times,
                             int i, double x, int j, double y);

// Time-inverted narrow-wedge kernel for lambda_max(H(t) + diag(nu)).
double hermitian_block_kernel(const std::vector<double>& nu, const std::vector<double>& times,
                              const std::vector<double>& a, int i, double x, int j, double y);

// Arithmetic-spectrum limit kernel. weierstrass_factors > 0 replaces Gamma
// by its truncated product.
struct DeltaOptions {
  double rect_left = 0.0;  // 0: chosen from the integrand (as a negative extent)
  long weierstrass_factors = 0;
  bool return_imag = false;
};
class DeltaKernel {
 public:
  explicit DeltaKernel(double delta, DeltaOptions opt = {});
  Eigen::MatrixXcd block_complex(const std::vector<double>& x, const std::vector<double>& y) const;
  Eigen::MatrixXd block(const std::vector<double>& x, const std::vector<double>& y) const;
  double operator()(double x, double y) const;
  double delta() const { return delta_; }

 private:
  double delta_;
  DeltaOptions opt_;
};
double k_delta(double delta, double x, double y);

// Extended Airy kernel through the Ai product integral.
double airy_kernel_ext(double t1, double x, double t2, double y);
// The direct integral of the t2 <= t1 branch for any sign of t2 - t1,
// truncated at upper limit zmax (test hook for the t2 > t1 identity).
double airy_product_integral(double t1, double x, double t2, double y, double zmin, double zmax);

// Blocks of the extended Airy kernel at fixed times through a z quadrature
// of the Ai product integral. Ai comes from a quintic Hermite table on
// [lo, 25]; arguments below lo fall back to airy_ai.
class AiryProductKernel {
 public:
  AiryProductKernel(std::vector<double> times, double lo);
  Eigen::MatrixXd block(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const;
  double ai(double u) const;

 private:
  std::vector<double> times_;
  double lo_, h_;
  std::vector<double> f_, d_;
};

struct AiryOptions {
  bool vertical = false;
  double delta1 = std::nan("");  // z contour apex / line
  double delta2 = std::nan("");  // w contour apex / line at -delta2 when vertical
};
class AiryJKernel {
 public:
  AiryJKernel(std::vector<double> times, AiryOptions opt = {});
  Eigen::MatrixXd block(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const;
  double operator()(int i, double x, int j, double y) const;

 private:
  std::vector<double> times_;
  AiryOptions opt_;
};
double j_airy(double t1, double x, double t2, double y, const AiryOptions& opt = {});

double airy_block_kernel(const std::vector<double>& times, const std::vector<double>& xi, int i, double x, int j,
                         double y);

}  // namespace edgelaw
