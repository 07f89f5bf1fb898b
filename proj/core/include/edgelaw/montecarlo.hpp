#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "edgelaw/estimate.hpp"
#include "edgelaw/kernels.hpp"
#include "edgelaw/rng.hpp"

namespace edgelaw {

// Draws are made in chunks of this many; chunk c uses stream stream_base + c,
// so results do not depend on the number of workers.
inline constexpr std::size_t kChunk = 1024;

// n scalar draws, returned sorted with mean and standard error.
MCEstimate monte_carlo(std::size_t n, std::uint64_t seed, std::uint64_t stream_base,
                       const std::function<double(RngStream&)>& draw);
// n vector draws in draw order.
std::vector<std::vector<double>> monte_carlo_rows(std::size_t n, std::uint64_t seed, std::uint64_t stream_base,
                                                  const std::function<std::vector<double>(RngStream&)>& draw);

// (W + W*)/sqrt(2) with standard complex Gaussian W: real N(0,1) diagonal,
// off-diagonal real and imaginary parts N(0,1/2).
Eigen::MatrixXcd sample_gue(int n, RngStream& stream);

struct ArithSample {
  double lambda_max;
  double rescaled;  // delta (lambda_max - lambda1) - log(n - 1)
};
// Largest eigenvalue of diag(lambda1 - delta (i-1)) + GUE.
ArithSample sample_arith_max(int n, double delta, double lambda1, RngStream& stream);

// Maxima between grid points are drawn from the Brownian bridge law given
// the endpoint values, which removes the O(sqrt(step)) bias of a plain grid
// maximum. Exact for a single Brownian path; first order for eigenvalues.
struct PathOptions {
  double step = 0.0;  // 0: family default
  bool bridge_correction = true;
};

// BLPP(b; (t, m)) with m = mu.size(), by dynamic programming on a time grid
// (default step t/4096).
double sample_blpp(const BoundaryFunction& b, const DriftVector& mu, double t, RngStream& stream,
                   const PathOptions& opt = {});
// Point-to-line last passage time over the triangle i + j <= n + 1 with
// Exponential(beta_i + beta_{n+1-j}) weights.
double sample_piflat(const std::vector<double>& beta, RngStream& stream);
// lambda_max(X^t X) for an (n+1) x n standard Gaussian X.
double sample_loe_max(int n, RngStream& stream);
// lambda_max(H(t_i) + diag(nu)) along one Hermitian Brownian path, in the
// order of times.
std::vector<double> sample_dyson_max(const std::vector<double>& nu, const std::vector<double>& times,
                                     RngStream& stream);
// max over [0, s] of the top eigenvalue of the Hermitian bridge plus
// (1-t) diag(nu) (nu empty means zero; nonzero nu is experimental). Default
// step 1/2048.
double sample_bridge_topmax(int n, double s, const std::vector<double>& nu, RngStream& stream,
                            const PathOptions& opt = {});
// sup_{s <= t} lambda_max(H(s) + s diag(mu)). Default step t/2048.
double sample_matrix_running_max(const DriftVector& mu, double t, RngStream& stream, const PathOptions& opt = {});

}  // namespace edgelaw
