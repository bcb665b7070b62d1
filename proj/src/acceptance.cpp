#include "hk/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "hk/fourier.hpp"
#include "hk/presets.hpp"
#include "hk/wave.hpp"

namespace hk {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Lazily built shared state: spaces, operators, grids, and wave problems are
// reused across criteria (building the full-scale wave problems dominates).
struct Ctx {
  bool corrupt = false;
  std::map<std::string, SymmetricSpaceData> spaces;
  std::map<std::string, ShiftOperator> ops;
  std::map<std::string, TorusGrid> grids;
  std::map<std::string, CauchyProblem> probs;

  static std::string key(const std::string& name, int g) { return name + ":" + std::to_string(g); }

  const SymmetricSpaceData& space(const std::string& name, int g) {
    auto it = spaces.find(key(name, g));
    if (it == spaces.end())
      it = spaces.emplace(key(name, g), build_space(preset_config(name, g))).first;
    return it->second;
  }
  const ShiftOperator& op(const std::string& name, int g) {
    auto it = ops.find(key(name, g));
    if (it == ops.end()) {
      ShiftOperator D = build_shift_operator(space(name, g));
      // fault injection: a corrupted normalization must be caught by SPH-ORACLE
      if (corrupt) D.normalization *= 1.0 + 1e-6;
      it = ops.emplace(key(name, g), std::move(D)).first;
    }
    return it->second;
  }
  const TorusGrid& grid(const std::string& name, int g) {
    auto it = grids.find(key(name, g));
    if (it == grids.end()) it = grids.emplace(key(name, g), make_grid(space(name, g), g)).first;
    return it->second;
  }
  // The standard full-scale wave problems (shared by the wave criteria).
  const CauchyProblem& wave(const std::string& name) {
    auto it = probs.find(name);
    if (it != probs.end()) return it->second;
    CauchyProblem pb;
    if (name == "su3")
      pb = make_problem(space("su3", 256), op("su3", 256), 256, 0.2, 6.0, 310.0, 12);
    else
      pb = make_problem(space(name, 2048), op(name, 2048), 2048, 0.2, 3.0, 950.0, 24);
    return probs.emplace(name, std::move(pb)).first->second;
  }
};

double peak_abs(const std::vector<cplx>& v) {
  double p = 0.0;
  for (const cplx& z : v) p = std::max(p, std::abs(z));
  return p;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// max over grid nodes of |psi_mu(D-formula) - classical oracle|
double psi_oracle_error(const SymmetricSpaceData& data, const ShiftOperator& D,
                        const TorusGrid& grid, const DominantWeight& mu) {
  std::vector<double> worst(grid.count, 0.0);
  parallel_for_each(static_cast<std::size_t>(grid.count), [&](std::size_t j) {
    const Vec x = grid.node_x(static_cast<long long>(j));
    const cplx a = spherical_function(data, D, mu.spectral(), x);
    const cplx b = spherical_oracle(data, mu.spectral(), x);
    worst[j] = std::abs(a - b);
  });
  double m = 0.0;
  for (double w : worst) m = std::max(m, w);
  return m;
}

// dim of the degree-k spherical harmonics on S^n: (2k+n-1)(k+n-2)!/(k!(n-1)!)
double harmonic_count(int n, int k) {
  if (k == 0) return 1.0;
  long double r = static_cast<long double>(2 * k + n - 1);
  for (int j = 1; j <= n - 2; ++j) r *= static_cast<long double>(k + j);
  for (int j = 2; j <= n - 1; ++j) r /= j;
  return static_cast<double>(r);
}

SpectralParameter random_lambda(const SymmetricSpaceData& data, std::mt19937& rng) {
  std::uniform_real_distribution<double> re(-8.0, 8.0), im(-1.0, 1.0);
  CVec c(data.rank);
  for (int a = 0; a < data.rank; ++a) c[a] = cplx(re(rng), im(rng));
  return SpectralParameter(c);
}

using CritFn = std::function<CriterionResult(Ctx&)>;
struct Criterion {
  std::string id;
  CritFn fn;
};

CriterionResult sph_oracle(Ctx& ctx) {
  CriterionResult r{"SPH-ORACLE", false, 0.0, 1e-10, 0.0, ""};
  // the grid keeps nodes away from the walls, where the closed formula's
  // numerator cancellation is amplified by 1/delta ~ wall_dist^{-2m}
  for (const auto& [p, g] : std::vector<std::pair<std::string, int>>{
           {"s3", 512}, {"s5", 128}, {"s7", 32}}) {
    const auto& data = ctx.space(p, g);
    const auto& D = ctx.op(p, g);
    const auto& grid = ctx.grid(p, g);
    for (const auto& mu : enumerate_dominant(data, 50.0 + 1e-9))
      r.measured = std::max(r.measured, psi_oracle_error(data, D, grid, mu));
  }
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult sph_cplx(Ctx& ctx) {
  CriterionResult r{"SPH-CPLX", false, 0.0, 1e-9, 0.0, ""};
  for (const std::string& p : {"su2", "su3"}) {
    const auto& data = ctx.space(p, 128);
    const auto& D = ctx.op(p, 128);
    const auto& grid = ctx.grid(p, 128);
    for (const auto& mu : enumerate_dominant(data, 6.0))
      r.measured = std::max(r.measured, psi_oracle_error(data, D, grid, mu));
  }
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult dim_int(Ctx& ctx) {
  CriterionResult r{"DIM-INT", false, 0.0, 1e-6, 0.0, ""};
  double vret = 0.0;
  for (const std::string& p : {"s3", "s5", "s7", "su2", "su3"}) {
    const auto& data = ctx.space(p, 64);
    const bool sphere = data.config.family == Family::SphereOdd;
    const double cutoff = sphere ? 50.0 + 1e-9 : 12.0;
    for (const auto& mu : enumerate_dominant(data, cutoff)) {
      const double d = std::real(dimension(data, mu.spectral()));
      const double oracle = sphere ? harmonic_count(data.dim_space, mu.lattice_coords[0])
                                   : sqr(weyl_dimension(data, mu.spectral()));
      r.measured = std::max(r.measured, std::abs(d - oracle) / oracle);
      const VretareResult v = vretare_check(data, mu.spectral());
      if (!v.skipped) vret = std::max(vret, v.residual / std::abs(d));
    }
  }
  r.detail = "vretare=" + fmt(vret);
  r.pass = r.measured <= r.threshold && vret <= 1e-9;
  return r;
}

CriterionResult zero_set(Ctx& ctx) {
  CriterionResult r{"ZERO-SET", false, 0.0, 1e-11, 0.0, ""};
  std::mt19937 rng(20240811);
  for (const std::string& p : {"s5", "su3"}) {
    const int g = p == "s5" ? 512 : 64;
    const auto& data = ctx.space(p, g);
    const auto& D = ctx.op(p, g);
    const auto& grid = ctx.grid(p, g);
    std::vector<SpectralParameter> lams;
    for (int i = 0; i < 25; ++i) {
      if (data.rank == 1) {
        // lambda_alpha must lie in +-{0,...,m-1}
        std::uniform_int_distribution<int> pick(-(data.m - 1), data.m - 1);
        CVec c(1);
        c << cplx(static_cast<double>(pick(rng)), 0.0);
        lams.emplace_back(c);
      } else {
        // lambda on the wall of a random positive root (lambda_alpha = 0),
        // complex coefficient along the orthogonal direction
        std::uniform_int_distribution<int> pick(0, static_cast<int>(data.positive_roots.size()) - 1);
        std::uniform_real_distribution<double> re(-5.0, 5.0), im(-0.5, 0.5);
        const Vec a = data.positive_roots[static_cast<std::size_t>(pick(rng))];
        Vec b(2);
        b << -a[1], a[0];
        lams.emplace_back(b.cast<cplx>() * cplx(re(rng), im(rng)) / b.norm());
      }
    }
    std::vector<double> worst(grid.count, 0.0);
    parallel_for_each(static_cast<std::size_t>(grid.count), [&](std::size_t j) {
      const CVec x =
          nearest_representative(data, grid.node_x(static_cast<long long>(j))).cast<cplx>();
      double m = 0.0;
      for (const auto& lam : lams) m = std::max(m, static_cast<double>(std::abs(shift_orbit_value(data, D, lam, x))));
      worst[j] = m;
    });
    for (double w : worst) r.measured = std::max(r.measured, w);
  }
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult eig(Ctx& ctx) {
  CriterionResult r{"EIG", false, 0.0, 0.3, 0.0, ""};
  double lo = 2.0, hi = 2.0;
  for (const std::string& p : {"s3", "s5", "s7"}) {
    const auto& data = ctx.space(p, 512);
    const auto& D = ctx.op(p, 512);
    for (int k : {1, 2, 3, 5, 8}) {
      Vec mu(1);
      mu << static_cast<double>(k);
      const double r256 = eigen_residual(data, D, SpectralParameter::real(mu), 256);
      const double r512 = eigen_residual(data, D, SpectralParameter::real(mu), 512);
      const double order = std::log2(r256 / r512);
      lo = std::min(lo, order);
      hi = std::max(hi, order);
      r.measured = std::max(r.measured, std::abs(order - 2.0));
    }
  }
  r.detail = "order in [" + fmt(lo) + "," + fmt(hi) + "]";
  r.pass = r.measured <= r.threshold;  // order within [1.7, 2.3]
  return r;
}

CriterionResult pw_sym(Ctx& ctx) {
  CriterionResult r{"PW-SYM", false, 0.0, 1e-9, 0.0, ""};
  std::mt19937 rng(20240812);
  for (const std::string& p : {"s3", "s5", "s7", "su2", "su3"}) {
    const int g = p == "su3" ? 64 : (p == "su2" ? 256 : 512);
    const double eps = p == "su3" ? 0.25 : 0.5;
    const auto& data = ctx.space(p, g);
    const auto& D = ctx.op(p, g);
    const auto& grid = ctx.grid(p, g);
    const RadialFunction f = make_bump(data, grid, eps, 3.0);
    auto F = [&](const SpectralParameter& l) {
      return pw_extend(data, D, grid, f.values, f.support_radius, l);
    };
    std::vector<SpectralParameter> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(random_lambda(data, rng));
    r.measured = std::max(r.measured, pw_symmetry_defect(data, F, samples));
  }
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult pw_two_route(Ctx& ctx) {
  CriterionResult r{"PW-TWO-ROUTE", false, 0.0, 1e-8, 0.0, ""};
  std::mt19937 rng(20240813);
  for (const std::string& p : {"s3", "su3"}) {
    // The discrete integration-by-parts identity behind the adjoint route
    // holds up to the bump's spectral mass at the band edge, so the bump must
    // be well resolved: sharpness 10 keeps that mass below 1e-11 here.
    const int g = p == "su3" ? 256 : 512;
    const double eps = p == "su3" ? 1.0 : 0.5;
    const auto& data = ctx.space(p, g);
    const auto& D = ctx.op(p, g);
    const auto& grid = ctx.grid(p, g);
    const RadialFunction f = make_bump(data, grid, eps, 10.0);
    const AdjointData adj = adjoint_apply(data, D, grid, f.values, f.support_radius);
    for (int i = 0; i < 20; ++i) {
      const SpectralParameter lam = random_lambda(data, rng);
      const cplx direct = pw_extend(data, D, grid, f.values, f.support_radius, lam);
      const cplx viaAdj = pw_extend_adjoint(data, grid, adj, lam);
      r.measured = std::max(r.measured, std::abs(direct - viaAdj));
    }
  }
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult pw_type(Ctx& ctx) {
  CriterionResult r{"PW-TYPE", false, 0.0, 0.2, 0.0, ""};
  const auto& data = ctx.space("s3", 2048);
  const auto& D = ctx.op("s3", 2048);
  const auto& grid = ctx.grid("s3", 2048);
  for (double eps : {0.15, 0.3}) {
    const RadialFunction f = make_bump(data, grid, eps, 3.0);
    auto F = [&](const SpectralParameter& l) {
      return pw_extend(data, D, grid, f.values, f.support_radius, l);
    };
    const double slope = exponential_type(data, F, {40.0, 80.0, 120.0, 160.0, 200.0, 240.0});
    r.measured = std::max(r.measured, std::abs(slope - eps) / eps);
    r.detail += (r.detail.empty() ? "" : " ") + fmt(slope) + "/" + fmt(eps);
  }
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult pw_roundtrip(Ctx& ctx) {
  CriterionResult r{"PW-ROUNDTRIP", false, 0.0, 1e-8, 0.0, ""};
  const auto& data = ctx.space("s3", 2048);
  const auto& D = ctx.op("s3", 2048);
  const auto& grid = ctx.grid("s3", 2048);
  const double eps = 0.2;
  const RadialFunction f = make_bump(data, grid, eps, 3.0);
  auto F = [&](const SpectralParameter& l) {
    return pw_extend(data, D, grid, f.values, f.support_radius, l);
  };
  const SphericalCoefficients coeffs = sample_pw(data, F, 950.0);
  const std::vector<cplx> u = inverse_transform(data, D, grid, coeffs);
  r.measured = max_diff(u, f.values);
  const double supp = support_radius(grid, u, 1e-8);
  const double bound = eps + 2.0 * grid_step(data, grid);
  r.detail = "support=" + fmt(supp) + "<=" + fmt(bound);
  r.pass = r.measured <= r.threshold && supp <= bound;
  return r;
}

CriterionResult int_rep(Ctx& ctx) {
  CriterionResult r{"INT-REP", false, 0.0, 1e-7, 0.0, ""};
  const auto& data = ctx.space("s3", 1024);
  const auto& D = ctx.op("s3", 1024);
  const auto& grid = ctx.grid("s3", 1024);
  const RadialFunction f = make_bump(data, grid, 0.5, 3.0);
  // 10 probes spread from inside the support to deep outside
  std::vector<long long> nodes;
  for (int j = 0; j < 10; ++j) {
    const double lo = 0.1 + 0.14 * j;
    for (long long i = 0; i < grid.count; ++i)
      if (grid.dist_vals[i] > lo && grid.dist_vals[i] < lo + 0.05) {
        nodes.push_back(i);
        break;
      }
  }
  std::vector<double> errs(nodes.size(), 0.0);
  parallel_for_each(nodes.size(), [&](std::size_t i) {
    const auto res =
        integral_representation(data, D, grid, f.values, f.support_radius, nodes[i], 600.0, 0.25);
    errs[i] = std::max(std::abs(res.f_formula - res.f_direct),
                       std::abs(res.delta_f_formula - res.delta_f_direct));
  });
  for (double e : errs) r.measured = std::max(r.measured, e);
  r.detail = "probes=" + std::to_string(nodes.size());
  r.pass = r.measured <= r.threshold && nodes.size() == 10;
  return r;
}

CriterionResult wave_3way(Ctx& ctx) {
  CriterionResult r{"WAVE-3WAY", false, 0.0, 1e-6, 0.0, ""};
  for (const std::string& p : {"s3", "s5"}) {
    const CauchyProblem& pb = ctx.wave(p);
    double peak = 0.0, diff = 0.0;
    std::vector<double> ts;
    for (int k = 1; k <= 24; ++k) ts.push_back(0.6 * k / 24.0);
    std::vector<RadialFunction> series;
    for (double t : ts) series.push_back(solve_series(pb, t));
    const std::vector<RadialFunction> red = solve_reduction(pb, ts);
    const std::vector<RadialFunction> con = solve_contour(pb, ts, 0.0);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      peak = std::max(peak, peak_abs(series[k].values));
      diff = std::max({diff, max_diff(series[k].values, red[k].values),
                       max_diff(series[k].values, con[k].values),
                       max_diff(red[k].values, con[k].values)});
    }
    r.measured = std::max(r.measured, diff / peak);
  }
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult wave_contour(Ctx& ctx) {
  CriterionResult r{"WAVE-CONTOUR", false, 0.0, 1e-6, 0.0, ""};
  const CauchyProblem& pb = ctx.wave("s3");
  const double t = 0.6;
  std::vector<RadialFunction> sols;
  for (double g : {0.0, 2.0, 5.0}) sols.push_back(solve_contour(pb, t, g));
  const double peak = peak_abs(sols[0].values);
  for (std::size_t a = 0; a < sols.size(); ++a)
    for (std::size_t b = a + 1; b < sols.size(); ++b)
      r.measured = std::max(r.measured, max_diff(sols[a].values, sols[b].values) / peak);
  r.pass = r.measured <= r.threshold;
  return r;
}

CriterionResult huygens_pos(Ctx& ctx) {
  CriterionResult r{"HUYGENS-POS", false, 0.0, 1e-6, 0.0, ""};
  for (const std::string& p : {"s3", "s5"}) {
    const CauchyProblem& pb = ctx.wave(p);
    std::vector<RadialFunction> traj;
    for (double t : pb.time_grid) traj.push_back(solve_series(pb, t));
    const HuygensReport rep = huygens_report(pb, traj, 1e-6);
    r.measured = std::max(r.measured, std::max(rep.max_cone, rep.max_shell));
    if (!rep.huygens_asserted) r.detail += p + ":not-asserted ";
  }
  r.pass = r.measured <= r.threshold && r.detail.empty();
  return r;
}

CriterionResult huygens_neg(Ctx& ctx) {
  CriterionResult r{"HUYGENS-NEG", false, 0.0, 1e-6, 0.0, ""};
  const CauchyProblem& pb = ctx.wave("su3");
  std::vector<RadialFunction> traj;
  for (double t : pb.time_grid) traj.push_back(solve_series(pb, t));
  const HuygensReport rep = huygens_report(pb, traj, 1e-6);
  r.measured = rep.max_cone;  // finite speed must still hold
  r.detail = "shell=" + fmt(rep.max_shell);
  // even-dimensional: the tail must be present (shell leakage above 1e-3)
  r.pass = rep.max_cone <= r.threshold && rep.max_shell >= 1e-3 && !rep.huygens_asserted;
  return r;
}

CriterionResult exp_hp(Ctx& ctx) {
  CriterionResult r{"EXP-HP", false, 0.0, 10.0, 0.0, ""};
  const CauchyProblem& pb = ctx.wave("s3");
  const auto entries = exponential_estimate_check(pb, 0.6, {0.0, 1.0, 2.0, 5.0});
  double lo = entries[0].c_emp, hi = entries[0].c_emp;
  for (const auto& e : entries) {
    lo = std::min(lo, e.c_emp);
    hi = std::max(hi, e.c_emp);
  }
  r.measured = hi / lo;
  r.detail = "C_emp in [" + fmt(lo) + "," + fmt(hi) + "]";
  r.pass = lo > 0.0 && r.measured <= r.threshold;
  return r;
}

CriterionResult closed_form_s3(Ctx& ctx) {
  CriterionResult r{"CLOSED-FORM-S3", false, 0.0, 1e-8, 0.0, ""};
  const CauchyProblem& pb = ctx.wave("s3");
  const double t = 0.5;
  const RadialFunction u = solve_series(pb, t);
  r.measured = closed_form_s3_residual(pb, u, t);
  r.pass = r.measured <= r.threshold;
  return r;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"SPH-ORACLE", sph_oracle},   {"SPH-CPLX", sph_cplx},
      {"DIM-INT", dim_int},         {"ZERO-SET", zero_set},
      {"EIG", eig},                 {"PW-SYM", pw_sym},
      {"PW-TWO-ROUTE", pw_two_route}, {"PW-TYPE", pw_type},
      {"PW-ROUNDTRIP", pw_roundtrip}, {"INT-REP", int_rep},
      {"WAVE-3WAY", wave_3way},     {"WAVE-CONTOUR", wave_contour},
      {"HUYGENS-POS", huygens_pos}, {"HUYGENS-NEG", huygens_neg},
      {"EXP-HP", exp_hp},           {"CLOSED-FORM-S3", closed_form_s3},
  };
  return list;
}

}  // namespace

const std::vector<std::string>& acceptance_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& c : criteria()) v.push_back(c.id);
    return v;
  }();
  return ids;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  Ctx ctx;
  ctx.corrupt = options.corrupt_normalization;
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = c.fn(ctx);
    } catch (const std::exception& e) {
      r.id = c.id;
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hk
