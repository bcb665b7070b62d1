#include "hk/wave.hpp"

#include <algorithm>
#include <cmath>

namespace hk {

namespace {

lcplx to_lcplx(cplx z) { return lcplx(z.real(), z.imag()); }
cplx to_cplx(lcplx z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); }

// ------------------------------------------------- rank-one sigma ladder ---

// Lattice step s (= norm of the Lambda basis vector) and the lattice
// coordinate of rho.
double lattice_step(const CauchyProblem& pb) { return pb.data.lattice_basis(0, 0); }

int rho_index(const CauchyProblem& pb) {
  const double r = pb.data.rho[0] / lattice_step(pb);
  const long long k = std::llround(r);
  if (std::abs(r - static_cast<double>(k)) > 1e-9)
    throw InternalError("wave: rho is not a lattice point");
  return static_cast<int>(k);
}

// G[k] = F(sigma - rho) at sigma = k * s for k = 0..kmax: forward
// coefficients above rho, the cached Paley-Wiener values below.
std::vector<cplx> sigma_coeffs(const CauchyProblem& pb) {
  const int r = rho_index(pb);
  int kmax = 0;
  for (const auto& w : pb.fhat.weights) kmax = std::max(kmax, w.lattice_coords[0]);
  kmax += r;
  std::vector<cplx> G(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (int k = 0; k < r; ++k) G[k] = pb.low_pw[k];
  for (std::size_t i = 0; i < pb.fhat.weights.size(); ++i)
    G[pb.fhat.weights[i].lattice_coords[0] + r] = pb.fhat.coeffs[i];
  return G;
}

// Values of d^order/dX^order g(X + shift) at all grid nodes, where
// g(X) = sum_{k in Z} G(|k|) e^{i k s X}.
std::vector<cplx> synth_shifted(const CauchyProblem& pb, const std::vector<cplx>& G, double shift,
                                int order) {
  const double s = lattice_step(pb);
  std::map<std::vector<int>, lcplx> coeffs;
  for (int k = -(static_cast<int>(G.size()) - 1); k < static_cast<int>(G.size()); ++k) {
    const cplx g = G[static_cast<std::size_t>(std::abs(k))];
    if (g == cplx(0.0) && k != 0) continue;
    lcplx c = to_lcplx(g);
    const lcplx iks(0.0L, static_cast<long double>(k) * s);
    for (int o = 0; o < order; ++o) c *= iks;
    c *= std::exp(iks * static_cast<long double>(shift));
    coeffs[{2 * k}] += c;
  }
  return grid_synth(pb.grid, coeffs);
}

// Rational application of D(.)/delta for rank-one presets: terms
// num_j(x)/sin(theta)^{p_j} acting on the j-th derivative slot.
struct RationalKernel {
  // per term: polynomial values at every node, sin power, derivative order
  struct Term {
    std::vector<cplx> num_vals;
    int sinpow = 0;
    int order = 0;
  };
  std::vector<Term> terms;
  cplx normalization = 1.0;
  int max_order = 0;
  std::vector<double> sin_vals;  // sin(alpha . theta) per node (folded theta)
};

RationalKernel make_rational_kernel(const CauchyProblem& pb) {
  if (pb.data.rank != 1) throw DomainError("wave: this route is rank-one only");
  RationalKernel K;
  K.normalization = pb.D.normalization;
  const long long count = pb.grid.count;
  K.sin_vals.resize(count);
  const Vec& alpha = pb.data.positive_roots[0];
  for (long long j = 0; j < count; ++j) {
    const Vec theta = torus_theta(pb.data, nearest_representative(pb.data, pb.grid.node_x(j)));
    K.sin_vals[j] = std::sin(alpha.dot(theta));
  }
  if (pb.data.config.family == Family::SphereOdd) {
    for (const auto& rt : sphere_rational_terms(pb.data)) {
      RationalKernel::Term term;
      term.sinpow = rt.sinpow;
      term.order = rt.order;
      term.num_vals.resize(count);
      for (long long j = 0; j < count; ++j) term.num_vals[j] = rt.num.eval(pb.grid.node_x(j));
      K.max_order = std::max(K.max_order, rt.order);
      K.terms.push_back(std::move(term));
    }
  } else {
    // complex rank one: D/delta = c0 (-2i/sin(alpha theta)) d_{H_alpha},
    // d_{H_alpha} = |H_alpha| d/dtheta along the one-dimensional b.
    const double hnorm = 2.0 / alpha.norm();
    RationalKernel::Term term;
    term.sinpow = 1;
    term.order = 1;
    term.num_vals.assign(count, cplx(0.0, -2.0) * hnorm);
    K.max_order = 1;
    K.terms.push_back(std::move(term));
  }
  return K;
}

}  // namespace

CauchyProblem make_problem(const SymmetricSpaceData& data, const ShiftOperator& D, int grid_size,
                           double eps, double sharpness, double cutoff, int time_steps) {
  CauchyProblem pb;
  pb.data = data;
  pb.D = D;
  pb.grid = make_grid(data, grid_size);
  if (eps <= 0.0 || eps >= data.r_small)
    throw ConfigError("wave: eps must lie in (0, r_small)");
  pb.eps = eps;
  pb.cutoff = cutoff;
  pb.f = make_bump(data, pb.grid, eps, sharpness);
  pb.fhat = forward_transform(data, D, pb.grid, pb.f.values, cutoff);
  // truncation tail: largest |fhat| in the top 5% band, relative to the peak
  double peak = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < pb.fhat.weights.size(); ++i) {
    const double a = std::abs(pb.fhat.coeffs[i]);
    peak = std::max(peak, a);
    if (pb.fhat.weights[i].norm >= 0.95 * cutoff) tail = std::max(tail, a);
  }
  pb.tail_level = peak > 0.0 ? tail / peak : 0.0;
  pb.tail_warning = pb.tail_level > 1e-8;
  const double horizon = data.r_small - eps;
  for (int i = 0; i <= time_steps; ++i)
    pb.time_grid.push_back(horizon * i / std::max(1, time_steps));
  if (data.rank == 1) {
    const double s = pb.data.lattice_basis(0, 0);
    const int r = static_cast<int>(std::llround(data.rho[0] / s));
    for (int k = 0; k < r; ++k) {
      CVec lam(1);
      lam << cplx(k * s - data.rho[0], 0.0);
      pb.low_pw.push_back(
          pw_extend(data, D, pb.grid, pb.f.values, pb.f.support_radius, SpectralParameter(lam)));
    }
  }
  return pb;
}

RadialFunction solve_series(const CauchyProblem& pb, double t) {
  SphericalCoefficients u = pb.fhat;
  for (std::size_t i = 0; i < u.weights.size(); ++i) {
    const double sn = (u.weights[i].coords + pb.data.rho).norm();
    u.coeffs[i] *= std::sin(sn * t) / sn;
  }
  RadialFunction out;
  out.values = inverse_transform(pb.data, pb.D, pb.grid, u);
  out.support_radius = std::min(pb.eps + t, pb.data.r_small);
  return out;
}

std::vector<RadialFunction> solve_reduction(const CauchyProblem& pb,
                                            const std::vector<double>& ts) {
  const RationalKernel K = make_rational_kernel(pb);
  const std::vector<cplx> G = sigma_coeffs(pb);
  const double s = lattice_step(pb);
  std::vector<RadialFunction> out;
  for (const double t : ts) {
    // v^{(j)}(X) = (g^{(j-1)}(X+t) - g^{(j-1)}(X-t))/2 for j >= 1: the two
    // shifts fuse into a single synthesis with factor i sin(k s t).
    std::vector<std::vector<cplx>> vder(K.max_order + 1);
    for (int j = 1; j <= K.max_order; ++j) {
      std::map<std::vector<int>, lcplx> coeffs;
      for (int k = -(static_cast<int>(G.size()) - 1); k < static_cast<int>(G.size()); ++k) {
        const cplx g = G[static_cast<std::size_t>(std::abs(k))];
        if (g == cplx(0.0) || k == 0) continue;
        lcplx c = to_lcplx(g);
        const lcplx iks(0.0L, static_cast<long double>(k) * s);
        for (int o = 0; o + 1 < j; ++o) c *= iks;
        c *= lcplx(0.0L, std::sin(static_cast<long double>(k) * s * t));
        coeffs[{2 * k}] += c;
      }
      vder[j] = grid_synth(pb.grid, coeffs);
    }
    RadialFunction u;
    u.values.assign(pb.grid.count, 0.0);
    parallel_for_each(static_cast<std::size_t>(pb.grid.count), [&](std::size_t i) {
      lcplx acc = 0.0;
      for (const auto& term : K.terms) {
        long double sp = 1.0L;
        for (int q = 0; q < term.sinpow; ++q) sp *= static_cast<long double>(K.sin_vals[i]);
        acc += to_lcplx(term.num_vals[i]) * to_lcplx(vder[term.order][i]) / sp;
      }
      u.values[i] = to_cplx(acc * to_lcplx(K.normalization));
    });
    u.support_radius = std::min(pb.eps + t, pb.data.r_small);
    out.push_back(std::move(u));
  }
  return out;
}

RadialFunction solve_reduction(const CauchyProblem& pb, double t) {
  return solve_reduction(pb, std::vector<double>{t})[0];
}

std::vector<RadialFunction> solve_contour(const CauchyProblem& pb, const std::vector<double>& ts,
                                          double gamma) {
  if (gamma < 0.0) throw DomainError("solve_contour: gamma must be >= 0");
  if (ts.empty()) throw DomainError("solve_contour: empty time batch");
  const double t = *std::max_element(ts.begin(), ts.end());
  const std::size_t nt = ts.size();
  const RationalKernel K = make_rational_kernel(pb);
  const double s = lattice_step(pb);
  // folded theta per node (b^lambda with complex lambda is not periodic)
  std::vector<double> theta(pb.grid.count);
  double theta_max = 0.0;
  for (long long j = 0; j < pb.grid.count; ++j) {
    const Vec th = torus_theta(pb.data, nearest_representative(pb.data, pb.grid.node_x(j)));
    theta[j] = th[0];
    theta_max = std::max(theta_max, std::abs(th[0]));
  }
  if (gamma * (pb.eps + theta_max + t) > 600.0)
    throw RangeError("solve_contour: gamma too large for the floating-point range");
  int kmax = 0;
  for (const auto& w : pb.fhat.weights) kmax = std::max(kmax, w.lattice_coords[0]);
  const double P = (kmax + rho_index(pb)) * s;
  const double dp = 0.25;
  const int np = static_cast<int>(std::ceil(P / dp));
  // Masked quadrature data shared by all p evaluations of F.
  const double margin = 2.0 * grid_step(pb.data, pb.grid);
  std::vector<std::pair<long long, CVec>> qnodes;
  for (long long i = 0; i < pb.grid.count; ++i)
    if (pb.grid.dist_vals[i] <= pb.f.support_radius + margin)
      qnodes.emplace_back(i, nearest_representative(pb.data, pb.grid.node_x(i)).cast<cplx>());
  std::vector<cplx> delta_c(pb.grid.delta_vals.begin(), pb.grid.delta_vals.end());
  const double Z = std::real(quadrature_mean(pb.grid, delta_c));
  // Quadrature path in z: the horizontal contour Im z = gamma over |p| <= P
  // plus the two vertical rectangle edges Re z = +-P, 0 <= Im z <= gamma.
  // The edges correct the finite-P truncation: without them the shifted
  // contour differs from the real-axis one by the edge integrals, which the
  // kernel amplifies by e^{gamma(|theta| + eps - t)} at far nodes.
  std::vector<cplx> path_z;
  std::vector<lcplx> path_w;  // e^{izt} dz (midpoint rule along the path)
  for (int k = 0; k < np; ++k)
    for (double sign : {1.0, -1.0}) {
      path_z.push_back(cplx(sign * (k + 0.5) * dp, gamma));
      path_w.push_back(lcplx(static_cast<long double>(dp), 0.0L));
    }
  if (gamma > 0.0) {
    const double dy = 0.05;
    const int ny = static_cast<int>(std::ceil(gamma / dy));
    for (int k = 0; k < ny; ++k) {
      const double y = (k + 0.5) * gamma / ny;
      // left edge traversed upward (+i dy), right edge downward (-i dy)
      path_z.push_back(cplx(-P, y));
      path_w.push_back(lcplx(0.0L, static_cast<long double>(gamma) / ny));
      path_z.push_back(cplx(P, y));
      path_w.push_back(lcplx(0.0L, -static_cast<long double>(gamma) / ny));
    }
  }
  const std::size_t nq = path_z.size();
  // Per-point tables: F(z - rho) and weights 2 F(z-rho) e^{iz t_k} dz / z for
  // every time in the batch, all in extended precision (the integral cancels
  // by e^{gamma(|theta| + eps - t)} at far nodes, so the accumulation must
  // carry extra digits).  F and the kernel sums below do not depend on t.
  std::vector<lcplx> zs(nq), Fz(nq), fw(nq * nt);
  parallel_for_each(nq, [&](std::size_t a) {
    const cplx z = path_z[a];
    zs[a] = to_lcplx(z);
    CVec lam(1);
    lam << z - pb.data.rho[0];
    lcplx q = 0.0;
    for (const auto& [j, xf] : qnodes)
      q += to_lcplx(pb.f.values[j]) *
           shift_orbit_value(pb.data, pb.D, SpectralParameter(lam + pb.data.rho.cast<cplx>()), xf);
    q /= static_cast<long double>(pb.grid.count);
    Fz[a] = q / (static_cast<long double>(Z) * to_lcplx(dimension(pb.data, SpectralParameter(lam))));
    const lcplx base = 2.0L * Fz[a] * path_w[a] / zs[a];
    for (std::size_t k = 0; k < nt; ++k)
      fw[a * nt + k] =
          base * std::exp(lcplx(0.0L, 1.0L) * zs[a] * static_cast<long double>(ts[k]));
  });
  // z^order per path point (orders are tiny: <= max_order of the kernel)
  const int nord = K.max_order + 1;
  std::vector<lcplx> zpow(nq * nord);
  for (std::size_t a = 0; a < nq; ++a) {
    lcplx d = 1.0L;
    for (int o = 0; o < nord; ++o) {
      zpow[a * nord + o] = d;
      d *= zs[a];
    }
  }
  const lcplx front = lcplx(0.0L, -0.5L) * to_lcplx(K.normalization);
  std::vector<RadialFunction> out(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    out[k].values.assign(pb.grid.count, 0.0);
    out[k].support_radius = std::min(pb.eps + ts[k], pb.data.r_small);
  }
  parallel_for_each(static_cast<std::size_t>(pb.grid.count), [&](std::size_t j) {
    const long double th = theta[j];
    // node-constant factor of each kernel term
    std::vector<lcplx> tc(K.terms.size());
    for (std::size_t ti = 0; ti < K.terms.size(); ++ti) {
      long double sp = 1.0L;
      for (int q = 0; q < K.terms[ti].sinpow; ++q) sp *= static_cast<long double>(K.sin_vals[j]);
      tc[ti] = to_lcplx(K.terms[ti].num_vals[j]) / sp;
    }
    std::vector<lcplx> acc(nt, lcplx(0.0L, 0.0L));
    const auto add_point = [&](std::size_t a, lcplx c, lcplx sn) {
      lcplx sum = 0.0;
      for (std::size_t ti = 0; ti < K.terms.size(); ++ti) {
        const auto& term = K.terms[ti];
        // cos(z theta) and its theta-derivatives cycle through sin/cos
        const int ph = term.order % 4;
        const lcplx trig = ph == 0 ? c : (ph == 1 ? -sn : (ph == 2 ? -c : sn));
        sum += tc[ti] * zpow[a * nord + term.order] * trig;
      }
      const lcplx* w = fw.data() + a * nt;
      for (std::size_t k = 0; k < nt; ++k) acc[k] += sum * w[k];
    };
    // Horizontal points z = +-(k+1/2)dp + i gamma form a geometric sequence
    // in e^{iz th}; track the unit phase multiplicatively (refreshed
    // periodically against drift) instead of calling trig per point.
    const long double eg = std::exp(-static_cast<long double>(gamma) * th);
    const lcplx step = std::polar(1.0L, static_cast<long double>(dp) * th);
    lcplx u = std::polar(1.0L, 0.5L * static_cast<long double>(dp) * th);
    const lcplx half(0.5L, 0.0L), halfi(0.0L, 0.5L);
    for (int k = 0; k < np; ++k) {
      const lcplx uc = std::conj(u);
      // sign +1: e^{iz th} = u eg; sign -1: e^{iz th} = conj(u) eg
      lcplx e = u * eg, einv = uc / eg;
      add_point(2 * static_cast<std::size_t>(k), half * (e + einv), halfi * (einv - e));
      e = uc * eg;
      einv = u / eg;
      add_point(2 * static_cast<std::size_t>(k) + 1, half * (e + einv), halfi * (einv - e));
      u *= step;
      if ((k & 255) == 255)
        u = std::polar(1.0L, (static_cast<long double>(k) + 1.5L) * static_cast<long double>(dp) * th);
    }
    for (std::size_t a = 2 * static_cast<std::size_t>(np); a < nq; ++a)
      add_point(a, std::cos(zs[a] * th), std::sin(zs[a] * th));
    for (std::size_t k = 0; k < nt; ++k) out[k].values[j] = to_cplx(acc[k] * front);
  });
  return out;
}

RadialFunction solve_contour(const CauchyProblem& pb, double t, double gamma) {
  return solve_contour(pb, std::vector<double>{t}, gamma)[0];
}

EuclideanDatum build_reduction_datum(const CauchyProblem& pb) {
  const int n = pb.data.rank;
  EuclideanDatum out;
  out.covol = pb.data.lattice_covolume;
  const double R = pb.cutoff + pb.data.rho.norm() + 1e-9;
  // integer box large enough to contain the ball of radius R
  Eigen::JacobiSVD<Mat> svd(pb.data.lattice_basis);
  const int N = static_cast<int>(std::ceil(R / svd.singularValues().minCoeff()));
  IVec rho_lat = to_lattice_coords(pb.data, pb.data.rho);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < pb.fhat.weights.size(); ++i) {
    std::vector<int> key(n);
    for (int a = 0; a < n; ++a) key[a] = pb.fhat.weights[i].lattice_coords[a];
    index[key] = i;
  }
  std::vector<int> c(n, -N);
  while (true) {
    IVec k(n);
    for (int a = 0; a < n; ++a) k[a] = c[a];
    const Vec sigma = pb.data.lattice_basis * k.cast<double>();
    if (sigma.norm() <= R) {
      // map sigma to a dominant-shifted representative w sigma = mu + rho
      bool regular = false, found = false;
      cplx F = 0.0;
      for (std::size_t wi = 0; wi < pb.data.weyl.size() && !regular; ++wi) {
        IVec img = pb.data.weyl_on_lattice[wi] * k - rho_lat;
        bool dom = true;
        for (int a = 0; a < n; ++a)
          if (img[a] < 0) dom = false;
        if (!dom) continue;
        regular = true;
        std::vector<int> key(n);
        for (int a = 0; a < n; ++a) key[a] = img[a];
        auto it = index.find(key);
        if (it != index.end()) {
          F = pb.fhat.coeffs[it->second];
          found = true;
        }
      }
      if (!regular) {
        // singular lattice point: F from the holomorphic extension
        CVec lam = sigma.cast<cplx>() - pb.data.rho.cast<cplx>();
        F = pw_extend(pb.data, pb.D, pb.grid, pb.f.values, pb.f.support_radius,
                      SpectralParameter(lam));
        found = true;
      }
      if (found && F != cplx(0.0)) {
        out.sigmas.push_back(sigma);
        out.F.push_back(F);
      }
    }
    int a = 0;
    for (; a < n; ++a) {
      if (++c[a] <= N) break;
      c[a] = -N;
    }
    if (a == n) break;
  }
  return out;
}

cplx eval_datum(const EuclideanDatum& d, const Vec& Y) {
  lcplx acc = 0.0;
  for (std::size_t i = 0; i < d.sigmas.size(); ++i) {
    const double ph = d.sigmas[i].dot(Y);
    acc += to_lcplx(d.F[i]) * lcplx(std::cos(ph), std::sin(ph));
  }
  return to_cplx(acc);
}

cplx eval_datum_wave(const EuclideanDatum& d, const Vec& Y, double t) {
  lcplx acc = 0.0;
  for (std::size_t i = 0; i < d.sigmas.size(); ++i) {
    const double ph = d.sigmas[i].dot(Y);
    const double sn = d.sigmas[i].norm();
    const double w = sn > 0.0 ? std::sin(sn * t) / sn : t;
    acc += to_lcplx(d.F[i] * w) * lcplx(std::cos(ph), std::sin(ph));
  }
  return to_cplx(acc);
}

HuygensReport huygens_report(const CauchyProblem& pb,
                             const std::vector<RadialFunction>& trajectory, double tol) {
  if (trajectory.size() != pb.time_grid.size())
    throw DomainError("huygens_report: trajectory does not match the time grid");
  HuygensReport rep;
  const double h = grid_step(pb.data, pb.grid);
  // leakage is scale-free: normalize by the peak over the whole trajectory
  double peak_u = 0.0, peak_du = 0.0;
  for (const auto& frame : trajectory)
    for (long long j = 0; j < pb.grid.count; ++j) {
      peak_u = std::max(peak_u, std::abs(frame.values[j]));
      peak_du = std::max(peak_du, std::abs(frame.values[j]) * std::abs(pb.grid.delta_vals[j]));
    }
  for (std::size_t ti = 0; ti < trajectory.size(); ++ti) {
    const double t = pb.time_grid[ti];
    const auto& u = trajectory[ti].values;
    HuygensEntry e;
    e.t = t;
    if (peak_u > 0.0) {
      for (long long j = 0; j < pb.grid.count; ++j) {
        const double dist = pb.grid.dist_vals[j];
        if (dist > t + pb.eps + 2.0 * h)
          e.cone = std::max(e.cone, std::abs(u[j]) / peak_u);
        if (dist < t - pb.eps - 2.0 * h)
          e.shell = std::max(e.shell, std::abs(u[j]) * std::abs(pb.grid.delta_vals[j]) / peak_du);
      }
    }
    rep.max_cone = std::max(rep.max_cone, e.cone);
    rep.max_shell = std::max(rep.max_shell, e.shell);
    rep.entries.push_back(e);
  }
  rep.finite_speed = rep.max_cone <= tol;
  rep.strong_huygens = rep.max_shell <= tol;
  rep.huygens_asserted = pb.data.dim_space % 2 == 1;
  return rep;
}

std::vector<ExpCheckEntry> exponential_estimate_check(const CauchyProblem& pb, double t,
                                                      const std::vector<double>& gammas) {
  std::vector<ExpCheckEntry> out;
  for (double g : gammas) {
    const RadialFunction u = solve_contour(pb, t, g);
    ExpCheckEntry e;
    e.gamma = g;
    for (long long j = 0; j < pb.grid.count; ++j) {
      const double w = std::exp(g * (t - pb.grid.dist_vals[j] - pb.eps));
      e.c_emp = std::max(e.c_emp, std::abs(u.values[j] * pb.grid.delta_vals[j]) * w);
    }
    out.push_back(e);
  }
  return out;
}

double closed_form_s3_residual(const CauchyProblem& pb, const RadialFunction& u, double t) {
  if (pb.data.config.family != Family::SphereOdd || pb.data.m != 1)
    throw DomainError("closed_form_s3_residual: S^3 only");
  const std::vector<cplx> G = sigma_coeffs(pb);
  const std::vector<cplx> gp = synth_shifted(pb, G, t, 0);
  const std::vector<cplx> gm = synth_shifted(pb, G, -t, 0);
  double worst = 0.0;
  for (long long j = 0; j < pb.grid.count; ++j) {
    const Vec th = torus_theta(pb.data, nearest_representative(pb.data, pb.grid.node_x(j)));
    const cplx closed = -0.25 * std::sin(th[0]) * (gp[j] - gm[j]);
    worst = std::max(worst, std::abs(u.values[j] * pb.grid.delta_vals[j] - closed));
  }
  return worst;
}

}  // namespace hk
