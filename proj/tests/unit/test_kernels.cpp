#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "edgelaw/errors.hpp"
#include "edgelaw/fredholm.hpp"
#include "edgelaw/kernels.hpp"
#include "edgelaw/numerics.hpp"

using namespace edgelaw;

namespace {

// Residues of e^{-t w^2/2 + u w} / prod (w - mu_i) at simple poles.
double s_minus_residues(const std::vector<double>& mu, double t, double x, double y) {
  const double u = x - y;
  double s = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    double den = 1.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (i != k) den *= mu[k] - mu[i];
    s += std::exp(-0.5 * t * mu[k] * mu[k] + u * mu[k]) / den;
  }
  return s;
}

double piflat_residues(const std::vector<double>& beta, double x, double y) {
  const double s = x + y;
  double K = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    double p = 2.0 * beta[k] * std::exp(-s * beta[k]);
    for (std::size_t i = 0; i < beta.size(); ++i)
      if (i != k) p *= (beta[i] + beta[k]) / (beta[i] - beta[k]);
    K += p;
  }
  return K;
}

// Order-n pole at w = 1 of e^{-s w} ((1+w)/(1-w))^n.
double loe_residue(int n, double x, double y) {
  const double s = x + y;
  double sum = 0.0;
  std::vector<double> f(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) f[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k - 1)] * k;
  for (int j = 0; j < n; ++j) {
    const int p = n - 1 - j;
    const double binom = f[static_cast<std::size_t>(n)] / (f[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(n - j)]);
    sum += std::pow(-s, p) / f[static_cast<std::size_t>(p)] * binom * std::pow(2.0, n - j);
  }
  return -std::pow(-1.0, n) * std::exp(-s) * sum;
}

double gue2_cdf(double a) {
  const double P = normal_cdf(a), p = std::exp(-0.5 * a * a) / std::sqrt(2.0 * M_PI);
  return P * (P - a * p) - p * p;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("s_minus against residues") {
    const std::vector<double> mu{0.4, -0.3, 1.1};
    for (double x : {-1.0, 0.0, 0.5, 2.0})
      for (double y : {-0.7, 0.2, 1.3}) CHECK(rel(s_minus(mu, 0.8, x, y), s_minus_residues(mu, 0.8, x, y)) < 1e-10);
    CHECK(std::abs(s_minus({0.3}, 1.0, 0.5, 0.0) - std::exp(-0.045 + 0.15)) < 1e-12);
    CHECK_THROWS_AS(s_minus({}, 1.0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(s_minus({0.0}, 0.0, 0.0, 0.0), DomainError);
  }

  TEST_CASE("s_bar reduces to derivatives of the heat kernel") {
    for (double x : {-1.0, 0.3, 2.0})
      for (double y : {-0.5, 0.4}) {
        const double t = 0.7, u = x - y, h = heat_kernel(t, x, y);
        CHECK(std::abs(s_bar({}, t, x, y) - h) < 1e-12);
        // (d_u - mu) heat
        CHECK(std::abs(s_bar({0.6}, t, x, y) - (-u / t - 0.6) * h) < 1e-12);
      }
    const std::vector<double> mu{0.2, -0.5, 0.9};
    for (double x : {-2.0, 0.0, 1.5})
      for (double y : {-1.0, 0.5}) CHECK(std::abs(s_bar(mu, 1.3, x, y) - s_bar_hermite(mu, 1.3, x, y)) < 1e-11);
  }

  TEST_CASE("flat hypo kernel branches") {
    const std::vector<double> mu{-0.4, 0.1};
    CHECK(s_hypo_flat(mu, 1.0, -0.5, 0.3) == s_bar(mu, 1.0, -0.5, 0.3));
    CHECK(s_hypo_flat(mu, 1.0, 0.5, -0.3) == s_bar(mu, 1.0, 0.5, -0.3));
    CHECK(s_hypo_flat(mu, 1.0, 0.5, 0.3) == s_bar(mu, 1.0, -0.5, 0.3));
    // both branches meet at x = 0
    CHECK(std::abs(s_hypo_flat(mu, 1.0, 1e-9, 0.3) - s_hypo_flat(mu, 1.0, 0.0, 0.3)) < 1e-8);
  }

  TEST_CASE("hypo Monte Carlo estimator") {
    const std::vector<double> mu{-0.4, 0.1};
    RngStream stream(default_seed(), 100);
    const MCEstimate hit = s_hypo_mc(BoundaryFunction::flat(), mu, 1.0, -0.2, 0.3, stream);
    CHECK(hit.value == s_bar_hermite(mu, 1.0, -0.2, 0.3));

    // flat boundary: reflection gives the same value as s_hypo_flat; the
    // grid detects crossings late, which biases the estimate by O(sqrt(step))
    HypoMCOptions opt;
    opt.paths = 20000;
    const MCEstimate flat = s_hypo_mc(BoundaryFunction::flat(), mu, 1.0, 0.5, 0.4, stream, opt);
    const double exact = s_hypo_flat(mu, 1.0, 0.5, 0.4);
    CHECK(std::abs(flat.value - exact) < 3.0 * flat.std_error + 0.03 * std::abs(exact));

    // a boundary running away at speed 1000 is essentially never reached
    const MCEstimate far = s_hypo_mc(BoundaryFunction::linear(1e3), mu, 1.0, 0.5, 0.4, stream, opt);
    CHECK(std::abs(far.value) < 1e-6);
  }

  TEST_CASE("narrow wedge kernel: drift order and composition") {
    const std::vector<double> mu{-0.4, 0.1, 0.5};
    std::vector<double> p = mu;
    const double ref = k_nw(mu, 1.0, 0.3, 1.5, 0.7);
    do {
      CHECK(rel(k_nw(p, 1.0, 0.3, 1.5, 0.7), ref) < 1e-11);
    } while (std::next_permutation(p.begin(), p.end()));

    const double comp = integrate([&](double u) { return s_minus(mu, 1.0, 0.3, u) * s_bar(mu, 1.5, u, 0.7); },
                                  -30.0, 0.0, 60);
    CHECK(rel(ref, comp) < 1e-8);
  }

  TEST_CASE("flat kernel") {
    const std::vector<double> mu{-0.4, 0.1, 0.5};
    CHECK(k_flat(mu, 1.0, 0.3, 1.0, -0.2) == 0.0);
    CHECK(k_flat(mu, 1.0, 0.3, 1.0, 0.0) == 0.0);
    std::vector<double> p = mu;
    const double ref = k_flat(mu, 1.0, 0.3, 1.0, 0.7);
    do {
      CHECK(rel(k_flat(p, 1.0, 0.3, 1.0, 0.7), ref) < 1e-10);
    } while (std::next_permutation(p.begin(), p.end()));
    // long times with drift -1 approach the single-rate point-to-line kernel
    for (double x : {0.2, 1.0})
      for (double y : {0.3, 1.5}) CHECK(rel(k_flat({-1.0}, 30.0, x, 30.0, y), 2.0 * std::exp(-(x + y))) < 1e-6);
  }

  TEST_CASE("point-to-line kernel against residues") {
    CHECK(std::abs(k_piflat({1.5}, 0.2, 0.4) - 3.0 * std::exp(-0.9)) < 1e-12);
    const std::vector<double> beta{0.7, 1.3, 2.0};
    for (double x : {0.0, 0.5, 2.0})
      for (double y : {0.1, 1.0, 4.0}) CHECK(rel(k_piflat(beta, x, y), piflat_residues(beta, x, y)) < 1e-11);
    CHECK_THROWS_AS(k_piflat({1.0, -1.0}, 0.0, 0.0), DomainError);
  }

  TEST_CASE("LOE kernel against the higher-order residue") {
    CHECK(std::abs(k_loe(1, 0.3, 0.2) - 2.0 * std::exp(-0.5)) < 1e-12);
    for (int n : {2, 3, 5})
      for (double s : {0.1, 1.0, 3.0}) {
        CHECK(rel(k_loe(n, s, 0.5), loe_residue(n, s, 0.5)) < 1e-9);
        CHECK(k_loe(n, s, 0.5) == doctest::Approx(k_piflat(std::vector<double>(n, 1.0), s, 0.5)).epsilon(1e-14));
      }
    CHECK_THROWS_AS(k_loe(0, 0.0, 0.0), ParameterError);
  }

  TEST_CASE("bridge kernel depends on x + y") {
    const std::vector<double> nu{-0.5, 0.0, 0.3};
    const double r = 1.2;
    CHECK(rel(k_bridge(nu, r, 0.3, 0.9), k_bridge(nu, r, 0.7, 0.5)) < 1e-12);
    std::vector<double> beta;
    for (double v : nu) beta.push_back(1.0 - v / r);
    CHECK(rel(k_bridge(nu, r, 0.3, 0.9), piflat_residues(beta, 0.3 + r * r, 0.9 + r * r)) < 1e-10);
    CHECK_THROWS_AS(k_bridge(nu, 0.2, 0.0, 0.0), DomainError);
  }

  TEST_CASE("Brownian block kernel") {
    const std::vector<double> mu{-0.4, 0.1};
    const std::vector<double> t{0.5, 1.0};
    const auto nw = BoundaryFunction::narrow_wedge();
    const auto fl = BoundaryFunction::flat();
    CHECK(rel(brownian_block_kernel(nw, mu, t, 0, 0.2, 1, 0.4), k_nw(mu, 0.5, 0.2, 1.0, 0.4) - heat_kernel(0.5, 0.2, 0.4)) < 1e-12);
    CHECK(rel(brownian_block_kernel(nw, mu, t, 1, 0.2, 0, 0.4), k_nw(mu, 1.0, 0.2, 0.5, 0.4)) < 1e-12);
    CHECK(rel(brownian_block_kernel(fl, mu, t, 0, 0.2, 1, 0.4), k_flat(mu, 0.5, 0.2, 1.0, 0.4) - heat_kernel(0.5, 0.2, 0.4)) < 1e-12);
    CHECK(brownian_block_kernel(fl, mu, t, 0, 0.2, 1, -0.4) == -heat_kernel(0.5, 0.2, -0.4));
    CHECK_THROWS_AS(brownian_block_kernel(nw, mu, {1.0, 0.5}, 0, 0.0, 1, 0.0), ParameterError);
  }

  TEST_CASE("Hermitian block kernel") {
    const std::vector<double> nu{0.0, 0.0};
    // time inversion: single time t is the narrow wedge kernel at 1/t, shifted by a/t
    CHECK(rel(hermitian_block_kernel(nu, {2.0}, {1.0}, 0, 0.3, 0, 0.6), k_nw(nu, 0.5, 0.8, 0.5, 1.1)) < 1e-12);
    // the heat correction sits on the reversed pair of times
    const double kij = hermitian_block_kernel(nu, {1.0, 2.0}, {0.0, 0.0}, 1, 0.3, 0, 0.6);
    const double raw = ProductKernel(nu, {1.0, 0.5}, ProductKernel::Boundary::narrow_wedge)(1, 0.3, 0, 0.6);
    CHECK(rel(kij, raw - heat_kernel(0.5, 0.3, 0.6)) < 1e-12);
    CHECK_THROWS_AS(hermitian_block_kernel(nu, {0.0}, {0.0}, 0, 0.0, 0, 0.0), DomainError);

    // single time determinant is the law of lambda_max of a 2x2 GUE
    for (double t : {1.0, 2.0})
      for (double a : {-0.5, 1.0, 2.0}) {
        BlockKernel K = single_slot(0.0, 14.0, [&](int, const std::vector<double>& x, int, const std::vector<double>& y) {
          Eigen::MatrixXd M(x.size(), y.size());
          for (std::size_t p = 0; p < x.size(); ++p)
            for (std::size_t q = 0; q < y.size(); ++q)
              M(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
                  hermitian_block_kernel(nu, {t}, {a}, 0, x[p], 0, y[q]);
          return M;
        });
        CHECK(std::abs(det_nystrom(K, 40).value - gue2_cdf(a / std::sqrt(t))) < 1e-8);
      }
  }

  TEST_CASE("extended Airy kernel") {
    const double aip0 = -std::pow(3.0, -1.0 / 3.0) / complex_gamma(1.0 / 3.0).real();
    CHECK(std::abs(airy_kernel_ext(0.0, 0.0, 0.0, 0.0) - aip0 * aip0) < 1e-10);
    CHECK(std::abs(airy_kernel_ext(0.3, 0.5, 0.3, -0.4) - airy_kernel_ext(0.3, -0.4, 0.3, 0.5)) < 1e-13);
    // for t2 > t1 the kernel is minus the integral over the negative half line
    const double direct = -airy_product_integral(0.0, 0.3, 1.0, -0.2, -29.7, 0.0);
    CHECK(std::abs(airy_kernel_ext(0.0, 0.3, 1.0, -0.2) - direct) < 1e-9);
  }

  TEST_CASE("Airy J kernel: conjugate of the Ai product and contour independence") {
    for (double t : {-0.5, 0.0, 0.7})
      for (double x : {-1.0, 0.0, 1.5})
        for (double y : {-0.5, 0.8}) {
          const double j = j_airy(t, x, t, y);
          const double k = std::exp(t * (y - x)) * airy_kernel_ext(t, x + t * t, t, y + t * t);
          CHECK(std::abs(j - k) < 1e-9 * std::max(1.0, std::abs(k)));
        }
    AiryOptions v;
    v.vertical = true;
    for (double x : {-1.0, 0.5})
      for (double y : {-0.3, 1.0}) CHECK(std::abs(j_airy(-0.3, x, 0.4, y, v) - j_airy(-0.3, x, 0.4, y)) < 1e-9);
    AiryOptions bad;
    bad.delta1 = 0.5;
    bad.delta2 = 1.0;
    CHECK_THROWS_AS(j_airy(0.0, 0.0, 0.0, 0.0, bad), ParameterError);
  }

  TEST_CASE("Ai product blocks") {
    const AiryProductKernel K({-0.4, 0.0, 0.9}, -6.0);
    double err = 0.0;
    for (double u = -8.0; u < 24.0; u += 0.0173) err = std::max(err, std::abs(K.ai(u) - airy_ai(u)));
    CHECK(err < 1e-13);
    const std::vector<double> x{-5.0, -1.2, 0.0, 2.5}, y{-4.1, 0.3, 3.0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Eigen::MatrixXd B = K.block(i, x, j, y);
        const std::vector<double> t{-0.4, 0.0, 0.9};
        for (std::size_t a = 0; a < x.size(); ++a)
          for (std::size_t b = 0; b < y.size(); ++b) {
            const double ref = airy_kernel_ext(t[static_cast<std::size_t>(i)], x[a], t[static_cast<std::size_t>(j)], y[b]);
            CHECK(std::abs(B(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - ref) < 1e-10);
          }
      }
  }

  TEST_CASE("two-time J form against the Ai product form") {
    // J - heat equals the Ai product kernel at x + t^2 up to e^{2t^3/3 + t x}
    const std::vector<double> t{-0.3, 0.5}, xi{0.2, -0.6};
    auto c = [&](int i, double x) {
      const double s = t[static_cast<std::size_t>(i)];
      return std::exp(2.0 / 3.0 * s * s * s + s * x);
    };
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (double x : {0.0, 0.7})
          for (double y : {0.1, 1.4}) {
            const double X = x + xi[static_cast<std::size_t>(i)], Y = y + xi[static_cast<std::size_t>(j)];
            const double lhs = airy_block_kernel(t, xi, i, x, j, y) * c(i, X) / c(j, Y);
            const double rhs = airy_kernel_ext(t[static_cast<std::size_t>(i)], X + t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)],
                                               t[static_cast<std::size_t>(j)], Y + t[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(j)]);
            CHECK(std::abs(lhs - rhs) < 1e-8);
          }
  }

  TEST_CASE("arithmetic spectrum kernel") {
    DeltaOptions im;
    im.return_imag = true;
    const DeltaKernel K(2.0), Ki(2.0, im);
    const std::vector<double> x{-1.0, 0.0, 1.5, 3.0};
    CHECK(Ki.block(x, x).cwiseAbs().maxCoeff() < 1e-9);

    // Gamma through its truncated product; the product is accurate to |z|^2/n
    DeltaOptions w;
    w.weierstrass_factors = 100000;
    const Eigen::MatrixXd A = K.block(x, x), B = DeltaKernel(2.0, w).block(x, x);
    CHECK((A - B).cwiseAbs().maxCoeff() < 1e-3 * std::max(1.0, A.cwiseAbs().maxCoeff()));

    // moving the left side of the rectangle across more poles changes nothing
    DeltaOptions l1, l2;
    l1.rect_left = -12.5;
    l2.rect_left = -25.5;
    const Eigen::MatrixXd C = DeltaKernel(2.0, l1).block(x, x), D = DeltaKernel(2.0, l2).block(x, x);
    CHECK((C - D).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((C - A).cwiseAbs().maxCoeff() < 1e-9);
    CHECK_THROWS_AS(DeltaKernel(0.0), DomainError);
  }
}
