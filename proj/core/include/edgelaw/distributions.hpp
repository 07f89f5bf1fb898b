#pragma once

#include <optional>
#include <vector>

#include "edgelaw/fredholm.hpp"
#include "edgelaw/kernels.hpp"

namespace edgelaw {

struct EdgeScaling {
  std::vector<double> nu;
  double b = 0.0;
  double a = 0.0;
  double d = 0.0;
  double residual = 0.0;  // |(1/n) sum (b - nu_j)^{-2} - 1|
};

EdgeScaling edge_scaling(const std::vector<double>& nu);

struct FClassBounds {
  double alpha = 0.0;
  double beta = 0.0;
};

// alpha = sup_eta (sqrt(rho(eta)) - eta) / 2, beta = diam + 2.
FClassBounds f_class_bounds(const std::vector<double>& nu);
// alpha <= b - nu_j <= beta for every j.
bool in_f_class(const std::vector<double>& nu, double alpha, double beta);

struct CdfOptions {
  std::optional<DetOptions> det;  // unset: family default
  double length = 0.0;            // truncation of each slot; 0 picks a family default
};

DetResult cdf_arithmetic_limit(double delta, double a, const CdfOptions& opt = {});
// Threshold for gamma^1_1 matched by cdf_arithmetic_limit(2, a) at size n.
double arithmetic_gamma_threshold(int n, double a);

DetResult cdf_blpp(const BoundaryFunction& b, const DriftVector& mu, const std::vector<double>& times,
                   const std::vector<double>& thresholds, const CdfOptions& opt = {});
// Block kernel used by cdf_blpp (narrow wedge or flat), for reuse in tests.
BlockKernel blpp_block_kernel(const BoundaryFunction& b, const DriftVector& mu, const std::vector<double>& times,
                              const std::vector<double>& thresholds, double length);

DetResult cdf_piflat(const std::vector<double>& beta, double a, const CdfOptions& opt = {});
DetResult cdf_loe_max(int n, double a, const CdfOptions& opt = {});
DetResult cdf_bridge_allmax(const std::vector<double>& nu, double r, const CdfOptions& opt = {});
DetResult cdf_bridge_runningmax(int n, double s, double a, const CdfOptions& opt = {});

// P(A(t_i) <= xi_i) for the parabolic Airy process, so one time gives F_2(xi + t^2).
DetResult airy_fdd(const std::vector<double>& times, const std::vector<double>& xi, const CdfOptions& opt = {});
BlockKernel airy_fdd_kernel(const std::vector<double>& times, const std::vector<double>& xi, double length);

DetResult cdf_dyson_edge(const std::vector<double>& nu, const std::vector<double>& tau, const std::vector<double>& xi,
                         const CdfOptions& opt = {});

}  // namespace edgelaw
