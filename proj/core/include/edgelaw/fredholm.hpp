#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace edgelaw {

// Kernel on {0..k-1} x R restricted to slot domains [a_i, a_i + L_i].
struct BlockKernel {
  using PointFn = std::function<double(int, double, int, double)>;
  using BlockFn = std::function<Eigen::MatrixXd(int, const std::vector<double>&, int, const std::vector<double>&)>;

  int k = 1;
  std::vector<double> times;
  std::vector<double> thresholds;
  std::vector<double> lengths;
  // optional per-slot point where the kernel jumps (NaN: none)
  std::vector<double> breakpoints;
  PointFn eval;
  // optional vectorized evaluator; preferred over eval when set
  BlockFn block;
  // optional c(i,x) > 0; entries become K(i,x;j,y) c(i,x) / c(j,y)
  std::function<double(int, double)> conjugator;

  Eigen::MatrixXd sample(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const;
};

// Single-slot kernel on [a, a+L] from a block evaluator.
BlockKernel single_slot(double a, double length, BlockKernel::BlockFn block);

struct DetResult {
  double value = 1.0;
  int resolution = 0;  // nodes per slot
  double truncation = 0.0;
  std::vector<std::pair<int, double>> history;
  double error_estimate = 0.0;
  bool converged = true;
  std::string warning;
  double last_term = 0.0;  // series engine only
};

DetResult det_nystrom(const BlockKernel& K, int nodes_per_slot);
DetResult det_series(const BlockKernel& K, int max_order, int nodes_per_slot);

struct DetOptions {
  int initial_nodes = 24;
  int max_nodes = 384;
  double tol = 1e-10;
  bool check_truncation = true;
  double length_factor = 1.5;
  int max_length_steps = 4;
};
// Nystrom with node doubling until successive values agree to tol, then a
// check that a longer truncation does not move the value.
DetResult det_adaptive(BlockKernel K, const DetOptions& opt = {});

BlockKernel apply_conjugation(const BlockKernel& K, std::function<double(int, double)> c);
// c(i,x) = e^{-kappa_i |x|}, kappa_i = C - (i+1).
std::function<double(int, double)> exponential_conjugator(double C);

// det(beta_i^{j-1} - e^{-2 beta_i a} (-beta_i)^{j-1}) / det(beta_i^{j-1}).
double det_ratio(const std::vector<double>& beta, double a);

}  // namespace edgelaw
