#pragma once

#include <vector>

#include "edgelaw/estimate.hpp"
#include "edgelaw/kernels.hpp"
#include "edgelaw/rng.hpp"

namespace edgelaw {

// Inhomogeneous geometric last passage percolation. Column i has weights
// P(omega = k) = (1 - a_i) a_i^k; theta is the walk parameter of the
// discrete kernels, alpha = (1 - theta) / theta.
struct GeomParams {
  std::vector<double> a;
  double theta = 0.5;
  long N = 1;

  double alpha() const { return (1.0 - theta) / theta; }
  // First m columns.
  GeomParams first(int m) const;
};

// Integer vectors. Weyl points are nondecreasing; their tilde images
// x~_j = -x_j - j are strictly decreasing.
using WeylPoint = std::vector<long long>;

WeylPoint to_tilde(const WeylPoint& x);
WeylPoint from_tilde(const WeylPoint& xt);
bool is_weyl(const WeylPoint& x);
bool is_tilde_weyl(const WeylPoint& xt);

// W_k(x): coefficient extraction on |z| = r > 1 with a fixed trapezoid rule.
double w_coeff(int k, long long x, const GeomParams& p, int nodes = 2048);
// W~_k(x) from its own contour integral (equal to W_{-k}(k - x)).
double w_tilde(int k, long long x, const GeomParams& p, int nodes = 2048);

// P(G(m) = y | G(0) = x) as det[W_{j-i}(y_j - x_i)].
double transition_prob(const WeylPoint& x, const WeylPoint& y, int m, const GeomParams& p);
// Same probability through det[W~_{i-j}(y~_{N+1-i} - x~_{N+1-j})].
double transition_prob_reflected(const WeylPoint& x, const WeylPoint& y, int m, const GeomParams& p);

// G(i, n) for 0 <= i <= m, 0 <= n <= N with G(0, n) = x_n and G(i, 0) = 0.
// a_i = 0 is accepted and freezes the weights of that column at zero.
std::vector<std::vector<long long>> sample_geom_lpp(const GeomParams& p, const WeylPoint& x_init, int m,
                                                    RngStream& stream);

// Discrete kernels. Q^n is the n-step law of a walk with -(1 + Geom) steps.
double q_geom(long n, long long z1, long long z2, const GeomParams& p);
double s_geom(int m, long n, long long z1, long long z2, const GeomParams& p);
double sbar_geom(int m, long n, long long z1, long long z2, const GeomParams& p);

// E[Sbar_{m,n-tau}(B_tau, z2) 1{tau < n} | B_0 = z1] with tau the first k
// where B_k > xt[k]. Entries equal to LLONG_MAX never trigger a hit.
MCEstimate s_epi_mc(int m, long n, long long z1, long long z2, const WeylPoint& xt, const GeomParams& p,
                    int paths, RngStream& stream);

// Lattice coordinates of the Brownian point (t, x) at scale N.
struct LatticePoint {
  long n;
  long long z;
};
LatticePoint scaling_bridge(long N, double t, double x);
// a_i = 1/2 + mu_i / (2 sqrt(2N)), theta = 1/2.
GeomParams scaling_params(const DriftVector& mu, long N);
// Initial data x_n = n + floor(sqrt(2N) b(n/N)), n = 1..count.
WeylPoint boundary_data(const BoundaryFunction& b, long N, long count);

}  // namespace edgelaw
