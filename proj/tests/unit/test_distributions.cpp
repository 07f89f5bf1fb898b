#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "edgelaw/distributions.hpp"
#include "edgelaw/errors.hpp"

using namespace edgelaw;

namespace {

double gue2_cdf(double a) {
  const double P = normal_cdf(a), p = std::exp(-0.5 * a * a) / std::sqrt(2.0 * M_PI);
  return P * (P - a * p) - p * p;
}

// F_2(s) from the Christoffel-Darboux form of the Airy kernel on [s, s+16].
double tracy_widom2(double s) {
  const int n = 80;
  const GaussRule& g = gauss_legendre(n);
  const double L = 16.0;
  std::vector<double> x(n), w(n), ai(n), aip(n);
  for (int k = 0; k < n; ++k) {
    x[k] = s + 0.5 * L * (g.x[k] + 1.0);
    w[k] = 0.5 * L * g.w[k];
    ai[k] = airy_ai(x[k]);
    aip[k] = airy_ai_prime(x[k]);
  }
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double K = i == j ? aip[i] * aip[i] - x[i] * ai[i] * ai[i]
                              : (ai[i] * aip[j] - aip[i] * ai[j]) / (x[i] - x[j]);
      M(i, j) = (i == j ? 1.0 : 0.0) - std::sqrt(w[i]) * K * std::sqrt(w[j]);
    }
  return M.determinant();
}

double bisect(double lo, double hi, double (*f)(double)) {
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    ((f(lo) > 0.0) == (f(mid) > 0.0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("distributions") {
  TEST_CASE("edge scaling") {
    const EdgeScaling one = edge_scaling({0.0});
    CHECK(std::abs(one.b - 1.0) < 1e-12);
    CHECK(std::abs(one.a - 2.0) < 1e-12);
    CHECK(std::abs(one.d - 1.0) < 1e-12);

    // two points at +-1: 1/2 [(b+1)^-2 + (b-1)^-2] = 1
    const double b = bisect(1.0 + 1e-9, 10.0, [](double v) { return 0.5 * (std::pow(v + 1, -2) + std::pow(v - 1, -2)) - 1.0; });
    const EdgeScaling two = edge_scaling({-1.0, 1.0});
    CHECK(std::abs(two.b - b) < 1e-10);
    CHECK(std::abs(two.a - (b + 0.5 * (1.0 / (b + 1.0) + 1.0 / (b - 1.0)))) < 1e-10);
    CHECK(two.residual < 1e-12);

    // translation moves b and a, not d
    const EdgeScaling moved = edge_scaling({2.0, 4.0});
    CHECK(std::abs(moved.b - (b + 3.0)) < 1e-10);
    CHECK(std::abs(moved.d - two.d) < 1e-10);
    CHECK_THROWS_AS(edge_scaling({}), ParameterError);
  }

  TEST_CASE("admissible class bounds") {
    const FClassBounds single = f_class_bounds({0.0});
    CHECK(single.alpha == doctest::Approx(0.5));
    CHECK(single.beta == doctest::Approx(2.0));

    // uniform on [0,1]: sup (sqrt(eta) - eta)/2 = 1/8 at eta = 1/4
    std::vector<double> u;
    for (int k = 0; k < 4000; ++k) u.push_back((k + 0.5) / 4000.0);
    const FClassBounds fb = f_class_bounds(u);
    CHECK(std::abs(fb.alpha - 0.125) < 2e-3);
    CHECK(fb.beta == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(in_f_class(u, 0.0, 10.0));
    CHECK_FALSE(in_f_class(u, 5.0, 10.0));
  }

  TEST_CASE("arithmetic limit law") {
    double prev = 0.0;
    for (double a : {-3.0, -1.0, 0.0, 1.0, 3.0, 8.0}) {
      const DetResult r = cdf_arithmetic_limit(2.0, a);
      CHECK(r.converged);
      CHECK(r.value >= prev - 1e-10);
      CHECK(r.value <= 1.0 + 1e-10);
      prev = r.value;
    }
    CHECK(prev > 0.99);
    CHECK(arithmetic_gamma_threshold(5, 0.0) == doctest::Approx(4.0 + 0.5 * std::log(4.0)));
    CHECK_THROWS_AS(arithmetic_gamma_threshold(1, 0.0), DomainError);
  }

  TEST_CASE("narrow wedge single line and two lines") {
    const auto nw = BoundaryFunction::narrow_wedge();
    for (double mu : {-0.5, 0.0, 0.7})
      for (double a : {-1.0, 0.0, 1.5}) {
        const double t = 2.0;
        CHECK(std::abs(cdf_blpp(nw, {mu}, {t}, {a}).value - normal_cdf((a - mu * t) / std::sqrt(t))) < 1e-9);
      }
    for (double a : {-1.0, 0.5, 2.0, 3.5}) CHECK(std::abs(cdf_blpp(nw, {0.0, 0.0}, {1.0}, {a}).value - gue2_cdf(a)) < 1e-9);
  }

  TEST_CASE("flat single line at long times") {
    // sup of a Brownian motion with drift -1 is Exp(2)
    for (double a : {0.2, 1.0, 2.5})
      CHECK(std::abs(cdf_blpp(BoundaryFunction::flat(), {-1.0}, {50.0}, {a}).value - (1.0 - std::exp(-2.0 * a))) < 1e-8);
    CHECK_THROWS_AS(cdf_blpp(BoundaryFunction::linear(1.0), {0.0}, {1.0}, {0.0}), ParameterError);
    CHECK_THROWS_AS(cdf_blpp(BoundaryFunction::flat(), {0.0}, {1.0, 0.5}, {0.0, 0.0}), ParameterError);
  }

  TEST_CASE("point-to-line and LOE") {
    CHECK(cdf_piflat({1.0, 2.0}, -1.0).value < 1e-10);
    const std::vector<double> beta{0.7, 1.3, 2.0};
    std::vector<double> p = beta;
    const double ref = cdf_piflat(beta, 1.1).value;
    do {
      CHECK(std::abs(cdf_piflat(p, 1.1).value - ref) < 1e-11);
    } while (std::next_permutation(p.begin(), p.end()));
    for (double a : {0.3, 1.0}) {
      CHECK(std::abs(cdf_piflat({0.8}, a).value - (1.0 - std::exp(-1.6 * a))) < 1e-12);
      CHECK(std::abs(cdf_loe_max(1, a).value - (1.0 - std::exp(-2.0 * a))) < 1e-12);
      CHECK(std::abs(cdf_loe_max(3, a).value - cdf_piflat({1.0, 1.0, 1.0}, a).value) < 1e-13);
    }
    CHECK_THROWS_AS(cdf_piflat({}, 1.0), ParameterError);
    CHECK_THROWS_AS(cdf_piflat({1.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(cdf_loe_max(0, 1.0), ParameterError);
  }

  TEST_CASE("Hermitian bridge laws") {
    double prev = 0.0;
    for (double r : {0.6, 1.0, 1.5, 2.5}) {
      const double v = cdf_bridge_allmax({-0.5, 0.0, 0.3}, r).value;
      CHECK(v >= prev);
      prev = v;
      CHECK(std::abs(cdf_bridge_allmax({0.0, 0.0}, r).value - cdf_loe_max(2, r * r).value) < 1e-10);
    }
    CHECK_THROWS_AS(cdf_bridge_allmax({0.5}, 0.4), DomainError);

    const double a = 1.2;
    const double loe = cdf_loe_max(2, a * a).value;
    CHECK(std::abs(cdf_bridge_runningmax(2, 0.999, a).value - loe) < 2e-3);
    CHECK(cdf_bridge_runningmax(2, 1.0, a).value == loe);
    CHECK(cdf_bridge_runningmax(2, 1e-4, a).value >= 0.99);
    CHECK(cdf_bridge_runningmax(2, 0.0, a).value == 1.0);
    double last = 1.0;
    for (double s : {0.1, 0.3, 0.6, 0.9}) {
      const double v = cdf_bridge_runningmax(2, s, a).value;
      CHECK(v <= last + 1e-10);
      CHECK(v >= loe - 1e-10);
      last = v;
    }
    CHECK_THROWS_AS(cdf_bridge_runningmax(2, 1.5, a), DomainError);
    CHECK_THROWS_AS(cdf_bridge_runningmax(2, 0.5, 0.0), DomainError);
  }

  TEST_CASE("Airy process one-point law is Tracy-Widom") {
    // A(t) + t^2 is Tracy-Widom at every t
    for (double s : {-3.0, -1.77, 0.0, 1.0})
      for (double t : {-0.5, 0.0, 0.7}) CHECK(std::abs(airy_fdd({t}, {s - t * t}).value - tracy_widom2(s)) < 1e-8);
  }

  TEST_CASE("Airy process two-point laws") {
    // thresholds for A(t) + t^2 <= s
    auto law = [](double t1, double s1, double t2, double s2) {
      return airy_fdd({t1, t2}, {s1 - t1 * t1, s2 - t2 * t2}).value;
    };
    const double both = law(0.0, -1.0, 0.4, 0.5);
    CHECK(std::abs(law(-0.7, -1.0, -0.3, 0.5) - both) < 1e-8);
    CHECK(std::abs(law(1.1, -1.0, 1.5, 0.5) - both) < 1e-8);
    CHECK(both <= std::min(tracy_widom2(-1.0), tracy_widom2(0.5)) + 1e-9);

    // correlations decay with the time gap
    const double f = tracy_widom2(-1.0);
    const double near = law(0.0, -1.0, 0.4, -1.0), far = law(0.0, -1.0, 4.0, -1.0);
    CHECK(near > far);
    CHECK(far - f * f > 0.0);
    CHECK(far - f * f < 0.25 * (near - f * f));

    // close times: the locally Brownian correction is about f2 sqrt(gap / pi)
    const DetResult close = airy_fdd({0.0, 1e-3}, {-1.0, -1.0});
    CHECK(close.converged);
    CHECK(close.value < f);
    CHECK(f - close.value < 0.01);
    CHECK_THROWS_AS(airy_fdd({0.4, 0.0}, {0.0, 0.0}), ParameterError);
  }

  TEST_CASE("Dyson edge law") {
    std::vector<double> nu;
    for (int k = 0; k < 40; ++k) nu.push_back(std::sin(1.0 + k));
    const double v = cdf_dyson_edge(nu, {0.0}, {0.0}).value;
    std::vector<double> shifted = nu;
    for (auto& x : shifted) x += 3.0;
    CHECK(std::abs(cdf_dyson_edge(shifted, {0.0}, {0.0}).value - v) < 1e-8);
    double prev = 0.0;
    for (double xi : {-3.0, -1.0, 0.0, 2.0}) {
      const double f = cdf_dyson_edge(nu, {0.0}, {xi}).value;
      CHECK(f >= prev - 1e-9);
      CHECK(f <= 1.0 + 1e-9);
      prev = f;
    }
    const EdgeScaling es = edge_scaling(nu);
    const double tmax = std::cbrt(40.0) / (2.0 * es.d * es.d);
    CHECK_THROWS_AS(cdf_dyson_edge(nu, {tmax}, {0.0}), DomainError);
    CHECK_THROWS_AS(cdf_dyson_edge(nu, {0.0, 0.1}, {0.0}), ParameterError);
  }
}
