#pragma once

// Resolution heuristics shared by the contour kernels. Node counts are sized
// so that quadrature error sits near e^{-37} relative to the integrand's
// size on the contour.

#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "edgelaw/numerics.hpp"

namespace edgelaw::detail {

inline constexpr double kDigits = 37.0;

// Trapezoid node count on |w - c| = r. logabs is log|integrand|; the
// integrand is analytic for r - inner_gap < |w - c| < r + outer_gap
// (outer_gap may be infinite).
int circle_nodes(const std::function<double(cplx)>& logabs, cplx c, double r, double inner_gap,
                 double outer_gap, int lo = 32, int hi = 4096);

// Half-height beyond which log|f(d + i s)| stays 40 below its maximum.
// logabs_s must be even in s or the caller passes the max over both signs.
double line_half_height(const std::function<double(double)>& logabs_s, double scale);

// Trapezoid node count on a segment of length 2*half for an integrand that
// is analytic in a strip of half-width strip and grows by at most
// e^{growth} inside it.
int line_nodes(double half, double strip, double growth, int lo = 16, int hi = 40000);

// Re or full value of  pref * sum_{k,l} F[a,k] C[k,l] G[l,b]  with
// F = w_f * exp(logF), G = w_g * exp(logG). A common shift balances the
// two exponentials so neither side overflows.
Eigen::MatrixXcd separable(const Eigen::MatrixXcd& logF, const Eigen::VectorXcd& wf, const Eigen::MatrixXcd& C,
                           const Eigen::MatrixXcd& logG, const Eigen::VectorXcd& wg, cplx pref);
Eigen::MatrixXcd separable(const Eigen::MatrixXcd& logF, const Eigen::VectorXcd& wf, const Eigen::MatrixXcd& logG,
                           cplx pref);

Eigen::VectorXcd to_vector(const std::vector<cplx>& v);

inline double inf() { return std::numeric_limits<double>::infinity(); }

}  // namespace edgelaw::detail

namespace edgelaw::detail {

// Largest increase of log|f| when a vertical line Re z = d, |Im z| <= half,
// is moved sideways by +-delta.
double strip_growth(const std::function<double(cplx)>& logabs, double d, double half, double delta);

}  // namespace edgelaw::detail
