#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "edgelaw/errors.hpp"
#include "edgelaw/numerics.hpp"
#include "edgelaw/rng.hpp"

using namespace edgelaw;

namespace {

// Largest root of the characteristic polynomial, built by Faddeev-LeVerrier
// and bracketed by bisection from above the Gershgorin bound.
double charpoly_max_root(const Eigen::MatrixXcd& A) {
  const auto n = A.rows();
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1.0;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    M = A * M + c[static_cast<std::size_t>(n - k + 1)] * I;
    c[static_cast<std::size_t>(n - k)] = -(A * M).trace() / static_cast<double>(k);
  }
  auto p = [&](double x) {
    cplx v = 0.0;
    for (auto k = static_cast<long>(n); k >= 0; --k) v = v * x + c[static_cast<std::size_t>(k)];
    return v.real();
  };
  double bound = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) bound = std::max(bound, A.row(i).cwiseAbs().sum());
  // scan down for the first sign change, then bisect
  double hi = bound + 1.0, step = 1e-3;
  double lo = hi - step;
  while (p(lo) * p(hi) > 0.0) {
    hi = lo;
    lo -= step;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) * p(hi) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cplx(g(gen), g(gen));
  return 0.5 * (A + A.adjoint());
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("circle contour with four nodes") {
    const Contour c = circle_contour(0.0, 1.0, 4);
    const cplx expect[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    REQUIRE(c.size() == 4);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(c.nodes[k] - expect[k]) < 1e-15);
      CHECK(std::abs(c.weights[k] - cplx(0, 2.0 * M_PI / 4.0) * expect[k]) < 1e-15);
    }
  }

  TEST_CASE("closed contours integrate constants to zero") {
    CHECK(std::abs(circle_contour(cplx(0.3, -0.2), 2.0, 64).weight_sum()) < 1e-12);
    CHECK(std::abs(rectangle_contour(-3.5, 0.5, 0.5).weight_sum()) < 1e-12);
    ContourSpec s;
    s.kind = ContourKind::rectangle;
    s.left = -2.0;
    s.right = 1.0;
    s.half_height = 0.75;
    CHECK(std::abs(make_contour(s).weight_sum()) < 1e-12);
  }

  TEST_CASE("vertical line reproduces the Gaussian integral") {
    // int e^{z^2/2} dz upward along Re z = 1 equals i sqrt(2 pi)
    const Contour c = vertical_contour(1.0, 14.0, 801);
    cplx s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c.weights[k] * std::exp(0.5 * c.nodes[k] * c.nodes[k]);
    CHECK(std::abs(s - cplx(0.0, std::sqrt(2.0 * M_PI))) < 1e-10);
  }

  TEST_CASE("contour parameter errors") {
    ContourSpec s;
    s.radius = -1.0;
    CHECK_THROWS_AS(make_contour(s), ParameterError);
    s.radius = 1.0;
    s.nodes = 4;
    CHECK_THROWS_AS(make_contour(s), ParameterError);
  }

  TEST_CASE("semi-infinite rule integrates the exponential") {
    const SemiInfiniteRule r = semi_infinite_rule(1.5, 40.0, 64);
    double s = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
      CHECK(r.nodes[k] >= 1.5);
      CHECK(r.weights[k] > 0.0);
      s += r.weights[k] * std::exp(-(r.nodes[k] - 1.5));
    }
    CHECK(std::abs(s - 1.0) < 1e-8);
  }

  TEST_CASE("gamma function values") {
    CHECK(std::abs(complex_gamma(1.0) - 1.0) < 1e-14);
    CHECK(std::abs(complex_gamma(0.5) - std::sqrt(M_PI)) < 1e-13);
    CHECK(std::abs(std::norm(complex_gamma(cplx(1.0, 1.0))) - M_PI / std::sinh(M_PI)) < 1e-13);
    CHECK(std::abs(complex_gamma(cplx(-2.5, 0.0)).real() - (-8.0 / 15.0) * std::sqrt(M_PI)) < 1e-12);
    CHECK_THROWS_AS(complex_gamma(-3.0), PoleError);
  }

  TEST_CASE("gamma functional equation on random points") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> re(-40.0, 40.0), im(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) {
      const cplx z(re(gen), im(gen));
      const cplx lhs = complex_gamma(z + 1.0), rhs = z * complex_gamma(z);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    }
  }

  TEST_CASE("truncated Weierstrass product") {
    const cplx z(0.5, 1.0);
    const long n = 1'000'000;
    const cplx g = 1.0 / inv_gamma_weierstrass(z, n);
    // error of the truncated product is of order |z|^2 sum_{i>=n} i^{-2} ~ |z|^2 / n
    CHECK(std::abs(g / complex_gamma(z) - 1.0) <= 2.0 * std::norm(z) / static_cast<double>(n));
  }

  TEST_CASE("heat kernel") {
    CHECK(heat_kernel(1.0, 0.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
    CHECK(heat_kernel(0.7, 0.3, -1.1) == heat_kernel(0.7, -1.1, 0.3));
    const double mass = integrate([](double y) { return heat_kernel(1.0, 0.0, y); }, -12.0, 12.0, 48);
    CHECK(std::abs(mass - 1.0) < 1e-10);
    CHECK_THROWS_AS(heat_kernel(0.0, 0.0, 0.0), DomainError);
  }

  TEST_CASE("Airy function") {
    const double ai0 = std::pow(3.0, -2.0 / 3.0) / complex_gamma(2.0 / 3.0).real();
    CHECK(std::abs(airy_ai(0.0) - ai0) < 1e-12);
    // int_0^inf Ai^2 = Ai'(0)^2 with Ai'(0) = -3^{-1/3} / Gamma(1/3)
    const double aip0 = -std::pow(3.0, -1.0 / 3.0) / complex_gamma(1.0 / 3.0).real();
    const double sq = integrate([](double t) { return airy_ai(t) * airy_ai(t); }, 0.0, 20.0, 40);
    CHECK(std::abs(sq - aip0 * aip0) < 1e-10);
    CHECK(airy_ai(10.0) > 0.0);
    CHECK(airy_ai(10.0) < 1e-9);
    CHECK(airy_ai(10.0) < std::exp(-2.0 / 3.0 * std::pow(10.0, 1.5)));
    CHECK_THROWS_AS(airy_ai(31.0), RangeError);
  }

  TEST_CASE("Airy equation by finite differences") {
    // fourth order stencil; the three point one is off by ~2e-6 at x = -8
    const double h = 1e-2;
    for (double x = -8.0; x <= 4.0; x += 0.5) {
      const double d2 = (-airy_ai(x + 2 * h) + 16.0 * airy_ai(x + h) - 30.0 * airy_ai(x) + 16.0 * airy_ai(x - h) -
                         airy_ai(x - 2 * h)) /
                        (12.0 * h * h);
      CHECK(std::abs(d2 - x * airy_ai(x)) < 1e-6);
    }
  }

  TEST_CASE("Hermitian largest eigenvalue") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    CHECK(hermitian_eigen_max(d) == doctest::Approx(3.0).epsilon(1e-14));
    Eigen::MatrixXcd s(2, 2);
    s << 0.0, 1.0, 1.0, 0.0;
    CHECK(hermitian_eigen_max(s) == doctest::Approx(1.0).epsilon(1e-14));
    Eigen::MatrixXcd bad = s;
    bad(0, 1) = 2.0;
    CHECK_THROWS_AS(hermitian_eigen_max(bad), ValidationError);
  }

  TEST_CASE("eigenvalue against characteristic polynomial and under unitary conjugation") {
    std::mt19937_64 gen(11);
    const Eigen::MatrixXcd A = random_hermitian(5, gen);
    const double top = hermitian_eigen_max(A);
    CHECK(std::abs(top - charpoly_max_root(A)) < 1e-9);

    std::normal_distribution<double> g;
    Eigen::MatrixXcd G(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) G(i, j) = cplx(g(gen), g(gen));
    const Eigen::MatrixXcd U = Eigen::HouseholderQR<Eigen::MatrixXcd>(G).householderQ();
    Eigen::MatrixXcd B = U * A * U.adjoint();
    B = 0.5 * (B + B.adjoint());
    CHECK(std::abs(hermitian_eigen_max(B) - top) < 1e-10 * std::max(1.0, A.norm()));
  }

  TEST_CASE("Philox known answer") {
    // Random123 reference vector for philox4x32-10 with zero counter and key
    const auto out = RngStream::philox({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }

  TEST_CASE("Gaussian stream determinism and moments") {
    RngStream a(123, 4), b(123, 4), c(123, 5);
    const auto x = rng_gaussian(a, 1000), y = rng_gaussian(b, 1000), z = rng_gaussian(c, 1000);
    CHECK(x == y);
    CHECK(x != z);

    RngStream s(default_seed(), 0);
    const auto v = rng_gaussian(s, 1'000'000);
    double m = 0.0, q = 0.0;
    for (double t : v) m += t;
    m /= static_cast<double>(v.size());
    for (double t : v) q += (t - m) * (t - m);
    q /= static_cast<double>(v.size() - 1);
    CHECK(std::abs(m) < 0.004);
    CHECK(std::abs(q - 1.0) < 0.005);
  }
}
