#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "edgelaw/distributions.hpp"
#include "edgelaw/errors.hpp"
#include "edgelaw/experiments.hpp"
#include "edgelaw/montecarlo.hpp"
#include "edgelaw/parallel.hpp"
#include "edgelaw/rng.hpp"
#include "edgelaw/version.hpp"

namespace edgelaw::cli {

namespace {

const std::vector<std::string> kFamilies{"arith",         "blpp-nw",       "blpp-flat", "piflat",     "loe",
                                         "bridge-allmax", "bridge-runmax", "airy",      "dyson-edge", "detratio"};

struct DefaultEntry {
  std::string key, value, note;
};

// Bump kDefaultsVersion whenever a value below changes.
constexpr int kDefaultsVersion = 1;
const std::vector<DefaultEntry>& defaults_table() {
  static const std::vector<DefaultEntry> t{
      {"seed", "20240611", "overridden by EDGELAW_SEED or --seed"},
      {"det.initial_nodes", "24", "Nystrom nodes per slot before doubling"},
      {"det.max_nodes", "384", "node cap unless a family lowers it"},
      {"det.tol", "1e-10", "agreement of successive doublings"},
      {"det.length_factor", "1.5", "truncation growth in the tail check"},
      {"det.max_length_steps", "4", "truncation growths before giving up"},
      {"arith.max_nodes", "192", ""},
      {"arith.tol", "1e-9", ""},
      {"arith.length", "max(4, 6 delta + 6 - a)", ""},
      {"blpp.max_nodes", "192", ""},
      {"blpp.length", "max(4, 2 sqrt(m t) + max(mu,0) t + 10 sqrt(t) + 2 - a)", "per slot"},
      {"rate.length", "24 / min(beta) + 4", "piflat, loe, bridge-allmax"},
      {"bridge-runmax.max_nodes", "192", ""},
      {"bridge-runmax.length", "30 + 10 sqrt(T), T = a^2 s / (1 - s)", ""},
      {"bridge-runmax.loe_switch", "T > 400", "uses the s = 1 law"},
      {"airy.max_nodes", "768", "close times need fine grids"},
      {"airy.length", "max(4, 10 - xi - t^2)", "per slot, Ai product form"},
      {"dyson-edge.nodes", "32..128", ""},
      {"dyson-edge.tol", "1e-7", ""},
      {"simulate.samples", "100000", ""},
      {"simulate.ecdf_points", "1000", "quantile grid when --raw is not given"},
      {"blpp.grid_step", "t / 4096", ""},
      {"matrix.grid_step", "t / 2048", "running-maximum matrix paths"},
      {"bridge.grid_step", "1 / 2048", ""},
      {"path.bridge_correction", "on", "Brownian-bridge maxima between grid points"},
      {"compare.scale", "1", "sample-count multiplier"},
  };
  return t;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Usage("not a number: '" + s + "'");
  }
  if (used != s.size()) throw Usage("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// Parameters shared by cdf and simulate.
struct FamilyArgs {
  std::string family;
  std::string a, beta, mu, nu, times, tau, offsets;
  int n = 0;
  double delta = 2.0, s = 0.5, lambda1 = std::nan("");
  double step = 0.0;
};

std::vector<double> list_or(const std::string& spec, std::vector<double> fallback) {
  return spec.empty() ? fallback : parse_grid(spec);
}

std::vector<double> need_list(const std::string& spec, const std::string& name) {
  if (spec.empty()) throw Usage("--" + name + " is required for this family");
  return parse_grid(spec);
}

int need_n(const FamilyArgs& f) {
  if (f.n < 1) throw Usage("--n (>= 1) is required for this family");
  return f.n;
}

// beta from --beta, replicated to --n entries when a single value is given.
std::vector<double> rates(const FamilyArgs& f) {
  std::vector<double> beta = need_list(f.beta, "beta");
  if (f.n > 0 && static_cast<int>(beta.size()) != f.n) {
    if (beta.size() != 1) throw Usage("--beta has " + std::to_string(beta.size()) + " entries but --n is " +
                                      std::to_string(f.n));
    beta.assign(static_cast<std::size_t>(f.n), beta[0]);
  }
  return beta;
}

// Spectrum from --nu, or n zeros from --n.
std::vector<double> spectrum(const FamilyArgs& f) {
  if (!f.nu.empty()) return parse_grid(f.nu);
  return std::vector<double>(static_cast<std::size_t>(need_n(f)), 0.0);
}

std::vector<double> thresholds(double a, std::size_t k, const FamilyArgs& f) {
  std::vector<double> off = list_or(f.offsets, std::vector<double>(k, 0.0));
  if (off.size() != k) throw Usage("--offsets needs one entry per time");
  for (auto& v : off) v += a;
  return off;
}

std::function<DetResult(double)> cdf_for(const FamilyArgs& f) {
  const std::string& fam = f.family;
  if (fam == "arith") {
    const double delta = f.delta;
    return [delta](double a) { return cdf_arithmetic_limit(delta, a); };
  }
  if (fam == "blpp-nw" || fam == "blpp-flat") {
    const auto b = fam == "blpp-nw" ? BoundaryFunction::narrow_wedge() : BoundaryFunction::flat();
    const DriftVector mu = need_list(f.mu, "mu");
    const auto times = list_or(f.times, {1.0});
    return [=](double a) { return cdf_blpp(b, mu, times, thresholds(a, times.size(), f)); };
  }
  if (fam == "piflat") {
    const auto beta = rates(f);
    return [beta](double a) { return cdf_piflat(beta, a); };
  }
  if (fam == "loe") {
    const int n = need_n(f);
    return [n](double a) { return cdf_loe_max(n, a); };
  }
  if (fam == "bridge-allmax") {
    const auto nu = spectrum(f);
    return [nu](double r) { return cdf_bridge_allmax(nu, r); };
  }
  if (fam == "bridge-runmax") {
    const int n = need_n(f);
    const double s = f.s;
    return [n, s](double a) { return cdf_bridge_runningmax(n, s, a); };
  }
  if (fam == "airy") {
    const auto times = list_or(f.times, {0.0});
    return [=](double a) { return airy_fdd(times, thresholds(a, times.size(), f)); };
  }
  if (fam == "dyson-edge") {
    const auto nu = spectrum(f);
    const auto tau = list_or(f.tau, {0.0});
    return [=](double a) { return cdf_dyson_edge(nu, tau, thresholds(a, tau.size(), f)); };
  }
  if (fam == "detratio") {
    const auto beta = rates(f);
    return [beta](double a) {
      DetResult r;
      r.value = det_ratio(beta, a);
      return r;
    };
  }
  throw Usage("unknown family '" + fam + "'");
}

std::function<double(RngStream&)> sampler_for(const FamilyArgs& f) {
  const std::string& fam = f.family;
  PathOptions po;
  po.step = f.step;
  if (fam == "arith") {
    const int n = need_n(f);
    const double delta = f.delta, l1 = std::isnan(f.lambda1) ? n - 1.0 : f.lambda1;
    return [=](RngStream& s) { return sample_arith_max(n, delta, l1, s).rescaled; };
  }
  if (fam == "blpp-nw" || fam == "blpp-flat") {
    const auto b = fam == "blpp-nw" ? BoundaryFunction::narrow_wedge() : BoundaryFunction::flat();
    const DriftVector mu = need_list(f.mu, "mu");
    const auto times = list_or(f.times, {1.0});
    if (times.size() != 1) throw Usage("simulate takes a single time");
    return [=](RngStream& s) { return sample_blpp(b, mu, times[0], s, po); };
  }
  if (fam == "piflat") {
    const auto beta = rates(f);
    return [beta](RngStream& s) { return sample_piflat(beta, s); };
  }
  if (fam == "loe") {
    const int n = need_n(f);
    return [n](RngStream& s) { return sample_loe_max(n, s); };
  }
  if (fam == "bridge-allmax") {
    // nonzero nu is the experimental sampler
    const int n = f.nu.empty() ? need_n(f) : static_cast<int>(parse_grid(f.nu).size());
    const std::vector<double> nu = f.nu.empty() ? std::vector<double>{} : parse_grid(f.nu);
    return [=](RngStream& s) { return sample_bridge_topmax(n, 1.0, nu, s, po); };
  }
  if (fam == "bridge-runmax") {
    const int n = need_n(f);
    const double sv = f.s;
    return [=](RngStream& s) { return sample_bridge_topmax(n, sv, {}, s, po); };
  }
  if (fam == "dyson-edge") {
    const auto nu = spectrum(f);
    const auto tau = list_or(f.tau, {0.0});
    if (tau.size() != 1) throw Usage("simulate takes a single tau");
    const EdgeScaling sc = edge_scaling(nu);
    const double n = static_cast<double>(nu.size()), n13 = std::cbrt(n);
    const double t = (1.0 - 2.0 * sc.d * sc.d * tau[0] / n13) / n;
    if (!(t > 0.0)) throw Usage("tau too large for this n");
    const double shift = sc.a + 2.0 * tau[0] * sc.d * sc.d * (sc.b - sc.a) / n13;
    const double scale = sc.d / (n13 * n13);
    return [=](RngStream& s) { return (sample_dyson_max(nu, {t}, s)[0] - shift) / scale; };
  }
  if (fam == "airy" || fam == "detratio") throw Usage("family '" + fam + "' has no sampler");
  throw Usage("unknown family '" + fam + "'");
}

void header(std::ostream& os, const std::vector<std::string>& args) {
  os << "# edgelaw " << version() << "\n# args:";
  for (const auto& a : args) os << ' ' << a;
  os << '\n';
}

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.family, "distribution family")->required();
  cmd->add_option("--beta", f.beta, "rates (list)");
  cmd->add_option("--mu", f.mu, "drifts (list)");
  cmd->add_option("--nu", f.nu, "initial spectrum (list)");
  cmd->add_option("--times", f.times, "observation times (list)");
  cmd->add_option("--tau", f.tau, "edge time parameters (list)");
  cmd->add_option("--offsets", f.offsets, "per-time threshold offsets added to --a (list)");
  cmd->add_option("--n", f.n, "size");
  cmd->add_option("--delta", f.delta, "spectral spacing (arith)");
  cmd->add_option("--lambda1", f.lambda1, "top diagonal entry (arith simulate; default n-1)");
  cmd->add_option("-s,--s", f.s, "time fraction (bridge-runmax)");
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw Usage("empty list");
  if (spec.find(':') != std::string::npos) {
    const auto p = split(spec, ':');
    if (p.size() != 3) throw Usage("range must be lo:hi:step");
    const double lo = parse_number(p[0]), hi = parse_number(p[1]), st = parse_number(p[2]);
    if (!(st > 0.0) || hi < lo) throw Usage("range needs lo <= hi and step > 0");
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((hi - lo) / st + 1e-9));
    for (long k = 0; k <= count; ++k) out.push_back(lo + st * static_cast<double>(k));
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split(spec, ',')) out.push_back(parse_number(item));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fredholm-determinant laws of noncolliding Brownian systems, with Monte Carlo cross-checks", "edgelaw"};
  app.set_version_flag("--version", std::string(version()));
  int threads = 0;
  bool show_defaults = false;
  std::string output;
  app.add_option("--threads", threads, "worker cap (0: all cores)");
  app.add_flag("--show-defaults", show_defaults, "print the defaults table and exit");
  app.add_option("-o,--output", output, "write CSV here instead of stdout");

  FamilyArgs cf;
  auto* cdf = app.add_subcommand("cdf", "evaluate a distribution function on a threshold grid");
  add_family_options(cdf, cf);
  cdf->add_option("--a", cf.a, "thresholds: lo:hi:step, list, or value")->required();

  FamilyArgs sf;
  std::size_t samples = 100000;
  std::uint64_t seed = default_seed();
  bool raw = false;
  auto* sim = app.add_subcommand("simulate", "draw Monte Carlo samples");
  add_family_options(sim, sf);
  sim->add_option("--samples", samples, "number of samples");
  sim->add_option("--seed", seed, "seed (default from EDGELAW_SEED or the defaults table)");
  sim->add_option("--step", sf.step, "path grid step (0: family default)");
  sim->add_flag("--raw", raw, "emit every sample instead of the 1000-point quantile grid");

  std::string experiment;
  double scale = 1.0;
  auto* cmp = app.add_subcommand("compare", "run a named determinant-versus-simulation experiment");
  cmp->add_option("--experiment", experiment, "experiment name")->required();
  cmp->add_option("--seed", seed, "seed");
  cmp->add_option("--scale", scale, "sample-count multiplier");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (threads < 0) {
    err << "error: --threads must be >= 0\n";
    return kUsage;
  }
  set_max_threads(threads);

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      err << "error: cannot open " << output << "\n";
      return kUsage;
    }
  }
  std::ostream& os = output.empty() ? out : file;

  if (show_defaults) {
    os << "# edgelaw " << version() << " defaults table v" << kDefaultsVersion << "\nkey,value,note\n";
    for (const auto& d : defaults_table()) {
      const std::string value = d.key == "seed" ? std::to_string(default_seed()) : d.value;
      os << d.key << ",\"" << value << "\"," << d.note << '\n';
    }
    return kOk;
  }

  try {
    if (*cdf) {
      const auto F = cdf_for(cf);
      const auto grid = parse_grid(cf.a);
      header(os, args);
      os << "threshold,value,resolution,error_estimate\n";
      bool ok = true;
      for (double a : grid) {
        const DetResult r = F(a);
        os << fmt(a) << ',' << fmt(r.value) << ',' << r.resolution << ',' << fmt(r.error_estimate) << '\n';
        if (!r.converged) {
          ok = false;
          err << "warning: threshold " << fmt(a) << ": " << r.warning << '\n';
        }
      }
      return ok ? kOk : kNumerical;
    }
    if (*sim) {
      if (samples == 0) throw Usage("--samples must be positive");
      const auto draw = sampler_for(sf);
      const MCEstimate e = monte_carlo(samples, seed, 0, draw);
      header(os, args);
      os << "# seed " << seed << "\n# samples " << samples << "\n# mean " << fmt(e.value) << "\n# std_error "
         << fmt(e.std_error) << '\n';
      if (raw) {
        // draw order is not kept by the estimator; samples are sorted
        os << "index,value\n";
        for (std::size_t i = 0; i < e.samples.size(); ++i) os << i << ',' << fmt(e.samples[i]) << '\n';
      } else {
        os << "probability,value\n";
        for (int k = 0; k < 1000; ++k) {
          const double p = (k + 0.5) / 1000.0;
          const auto idx = std::min(e.samples.size() - 1, static_cast<std::size_t>(p * static_cast<double>(e.samples.size())));
          os << fmt(p) << ',' << fmt(e.samples[idx]) << '\n';
        }
      }
      return kOk;
    }
    if (*cmp) {
      const ExperimentInfo* info = find_experiment(experiment);
      if (!info) {
        err << "error: unknown experiment '" << experiment << "'. Known experiments:\n";
        for (const auto& x : experiments()) err << "  " << x.name << "  " << x.summary << '\n';
        return kUsage;
      }
      if (!(scale > 0.0)) throw Usage("--scale must be positive");
      ExperimentConfig cfg;
      cfg.seed = seed;
      cfg.sample_scale = scale;
      const ExperimentResult r = run_experiment(*info, cfg);
      header(os, args);
      os << "# seed " << seed << "\n# experiment " << info->name << ": " << info->summary << '\n';
      for (const auto& c : r.checks)
        os << "# check " << (c.pass() ? "PASS " : "FAIL ") << c.label << ": " << fmt(c.value) << " <= "
           << fmt(c.band) << " + " << fmt(c.allowance) << '\n';
      os << "x,computed,reference\n";
      for (const auto& row : r.rows) os << fmt(row.x) << ',' << fmt(row.computed) << ',' << fmt(row.reference) << '\n';
      const Check& w = r.worst();
      os << "verdict," << info->name << ",discrepancy=" << fmt(w.value) << ",band=" << fmt(w.band)
         << ",allowance=" << fmt(w.allowance) << ',' << (r.pass() ? "PASS" : "FAIL") << '\n';
      return r.pass() ? kOk : kNumerical;
    }
    err << app.help();
    return kUsage;
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace edgelaw::cli
