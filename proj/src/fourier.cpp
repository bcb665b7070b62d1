#include "hk/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace hk {

namespace {

lcplx to_lcplx(cplx z) { return lcplx(z.real(), z.imag()); }
cplx to_cplx(lcplx z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); }

// Nodes within the mask radius paired with their near-origin Gamma
// representatives (b^lambda is not Gamma-periodic off the lattice).
std::vector<std::pair<long long, Vec>> masked_nodes(const TorusGrid& grid,
                                                    const SymmetricSpaceData& data,
                                                    double support_R) {
  const double margin = 2.0 * grid_step(data, grid);
  std::vector<std::pair<long long, Vec>> nodes;
  for (long long i = 0; i < grid.count; ++i)
    if (grid.dist_vals[i] <= support_R + margin)
      nodes.emplace_back(i, nearest_representative(data, grid.node_x(i)));
  return nodes;
}

// Generic Richardson evaluation of raw(lambda)/d(lambda) near the zero set
// of d; raw/(Z d) must be holomorphic in lambda.
cplx eval_over_dimension(const SymmetricSpaceData& data, const SpectralParameter& lambda,
                         const std::function<cplx(const SpectralParameter&, cplx)>& with_d) {
  const auto [d, scale] = dimension_with_scale(data, lambda);
  if (std::abs(d) >= 1e-7 * scale) return with_d(lambda, d);
  Vec e(data.rank);
  for (int i = 0; i < data.rank; ++i) e[i] = 1.0 / (1.0 + 0.6180339887498949 * i);
  e /= e.norm();
  auto at = [&](double h) {
    SpectralParameter lp(lambda.coords + (h * e).cast<cplx>());
    const auto [dp, sp] = dimension_with_scale(data, lp);
    if (std::abs(dp) < 1e-20 * sp)
      throw SpectralSingularityError("pw_extend: perturbation still on the zero set of d");
    return with_d(lp, dp);
  };
  // Zeros of d have even order up to 2m |Sigma+|, so the perturbed d is
  // legitimately tiny; pick eta large enough that the raw numerator keeps
  // enough significant digits, then remove the O(eta), O(eta^2), O(eta^3)
  // errors with a symmetric two-level extrapolation.
  double eta = 1e-3;
  {
    SpectralParameter lp(lambda.coords + (eta * e).cast<cplx>());
    const auto [dp, sp] = dimension_with_scale(data, lp);
    if (std::abs(dp) < 1e-10 * sp) eta = 1e-2;
  }
  auto sym = [&](double h) { return 0.5 * (at(h) + at(-h)); };
  return (4.0 * sym(eta / 2.0) - sym(eta)) / 3.0;
}

}  // namespace

SphericalCoefficients forward_transform(const SymmetricSpaceData& data, const ShiftOperator& D,
                                        const TorusGrid& grid, const std::vector<cplx>& values,
                                        double cutoff) {
  SphericalCoefficients out;
  out.cutoff = cutoff;
  out.weights = enumerate_dominant(data, cutoff);
  out.coeffs.resize(out.weights.size());
  const std::vector<lcplx> base = grid_dft(grid, values);
  std::vector<cplx> delta_c(grid.delta_vals.begin(), grid.delta_vals.end());
  const double Z = std::real(quadrature_mean(grid, delta_c));
  parallel_for_each(out.weights.size(), [&](std::size_t i) {
    const DominantWeight& mu = out.weights[i];
    SpectralParameter shifted = SpectralParameter::real(mu.coords + data.rho);
    TrigLaurentPoly num = shift_orbit_poly(data, D, shifted);
    if (num.max_key_abs() >= 2 * grid.g)
      throw AliasingError("forward_transform: cutoff exceeds the grid Nyquist band");
    lcplx acc = 0.0;
    for (const auto& [k, c] : num.terms) acc += std::conj(to_lcplx(c)) * dft_at(grid, base, k);
    const double d = std::real(dimension(data, mu.spectral()));
    out.coeffs[i] = to_cplx(acc) / (Z * d);
  });
  return out;
}

std::vector<cplx> inverse_transform(const SymmetricSpaceData& data, const ShiftOperator& D,
                                    const TorusGrid& grid, const SphericalCoefficients& coeffs) {
  const int n = data.rank;
  if (data.config.family == Family::SphereOdd) {
    std::map<std::vector<int>, lcplx> total;
    int kmax = 0;
    for (std::size_t i = 0; i < coeffs.weights.size(); ++i) {
      kmax = std::max(kmax, coeffs.weights[i].lattice_coords[0]);
      SpectralParameter shifted = SpectralParameter::real(coeffs.weights[i].coords + data.rho);
      TrigLaurentPoly num = shift_orbit_poly(data, D, shifted);
      const lcplx f = to_lcplx(coeffs.coeffs[i]);
      for (const auto& [k, c] : num.terms) total[k] += f * to_lcplx(c);
    }
    std::vector<cplx> u = grid_synth(grid, total);
    // fhat indexed by the integer level for the wall-safe re-evaluation
    std::vector<cplx> fhat(static_cast<std::size_t>(kmax) + 1, 0.0);
    std::vector<double> dval(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.weights.size(); ++i) {
      const int k = coeffs.weights[i].lattice_coords[0];
      fhat[k] = coeffs.coeffs[i];
      dval[k] = std::real(dimension(data, coeffs.weights[i].spectral()));
    }
    const int m = data.m;
    parallel_for_each(static_cast<std::size_t>(grid.count), [&](std::size_t j) {
      const double delta = grid.delta_vals[j];
      if (std::abs(delta) >= 1e-6) {
        u[j] /= delta;
        return;
      }
      // Gegenbauer sweep: u = sum_k d(k) fhat(k) C_k^m(cos theta)/C_k^m(1)
      const Vec theta = torus_theta(data, grid.node_x(static_cast<long long>(j)));
      const long double c = std::cos(static_cast<long double>(theta[0]));
      lcplx acc = 0.0;
      long double c0 = 1.0L, c1 = 2.0L * m * c, at_one = 1.0L;
      for (int k = 0; k <= kmax; ++k) {
        long double ck;
        if (k == 0)
          ck = c0;
        else if (k == 1) {
          ck = c1;
          at_one = 2.0L * m;
        } else {
          ck = (2.0L * (k + m - 1) * c * c1 - (k + 2 * m - 2) * c0) / k;
          c0 = c1;
          c1 = ck;
          at_one = at_one * (2 * m - 1 + k) / k;
        }
        if (fhat[k] != cplx(0.0)) acc += static_cast<long double>(dval[k]) * to_lcplx(fhat[k]) * (ck / at_one);
      }
      u[j] = to_cplx(acc);
    });
    return u;
  }
  // Complex group: u = norm * prod(-2i/sin(alpha theta)) * sum_mu fhat(mu)
  // sum_w pi(i w(mu+rho)) b^{w(mu+rho)}; the Weyl-denominator factor is
  // applied pointwise, which avoids the cancellation in delta.
  std::map<std::vector<int>, lcplx> total;
  for (std::size_t i = 0; i < coeffs.weights.size(); ++i) {
    const lcplx f = to_lcplx(coeffs.coeffs[i]);
    IVec lat = coeffs.weights[i].lattice_coords + IVec::Ones(n);
    Vec lam = coeffs.weights[i].coords + data.rho;
    for (std::size_t wi = 0; wi < data.weyl.size(); ++wi) {
      const Vec wl = data.weyl[wi] * lam;
      IVec wlat = data.weyl_on_lattice[wi] * lat;
      lcplx pif = 1.0;
      for (const auto& alpha : data.positive_roots)
        pif *= lcplx(0.0L, 2.0L) * static_cast<long double>(wl.dot(alpha) / alpha.squaredNorm());
      std::vector<int> key(n);
      for (int a = 0; a < n; ++a) key[a] = 2 * wlat[a];
      total[key] += f * pif;
    }
  }
  std::vector<cplx> u = grid_synth(grid, total);
  const lcplx norm = to_lcplx(D.normalization);
  parallel_for_each(static_cast<std::size_t>(grid.count), [&](std::size_t j) {
    const Vec theta = torus_theta(data, grid.node_x(static_cast<long long>(j)));
    lcplx fac = norm;
    for (const auto& alpha : data.positive_roots)
      fac *= lcplx(0.0L, -2.0L) / std::sin(static_cast<long double>(alpha.dot(theta)));
    u[j] = to_cplx(to_lcplx(u[j]) * fac);
  });
  return u;
}

double plancherel_mismatch(const SymmetricSpaceData& data, const TorusGrid& grid,
                           const std::vector<cplx>& values, const SphericalCoefficients& coeffs) {
  long double lhs = 0.0;
  for (std::size_t i = 0; i < coeffs.weights.size(); ++i) {
    const double d = std::real(dimension(data, coeffs.weights[i].spectral()));
    lhs += d * static_cast<long double>(std::norm(coeffs.coeffs[i]));
  }
  long double num = 0.0, den = 0.0;
  for (long long j = 0; j < grid.count; ++j) {
    num += std::norm(values[j]) * static_cast<long double>(grid.delta_vals[j]);
    den += grid.delta_vals[j];
  }
  const long double rhs = num / den;
  return static_cast<double>(std::abs(lhs - rhs) / std::max<long double>(std::abs(rhs), 1e-300));
}

cplx pw_extend(const SymmetricSpaceData& data, const ShiftOperator& D, const TorusGrid& grid,
               const std::vector<cplx>& values, double support_R, const SpectralParameter& lambda) {
  const auto nodes = masked_nodes(grid, data, support_R);
  std::vector<cplx> delta_c(grid.delta_vals.begin(), grid.delta_vals.end());
  const double Z = std::real(quadrature_mean(grid, delta_c));
  auto with_d = [&](const SpectralParameter& l, cplx d) {
    SpectralParameter shifted(l.coords + data.rho.cast<cplx>());
    lcplx acc = 0.0;
    for (const auto& [j, xf] : nodes) {
      const CVec x = xf.cast<cplx>();
      acc += to_lcplx(values[j]) * shift_orbit_value(data, D, shifted, x);
    }
    acc /= static_cast<long double>(grid.count);
    return to_cplx(acc) / (Z * d);
  };
  return eval_over_dimension(data, lambda, with_d);
}

AdjointData adjoint_apply(const SymmetricSpaceData& data, const ShiftOperator& D,
                          const TorusGrid& grid, const std::vector<cplx>& values,
                          double support_R) {
  // Band-limited interpolant of f from the base DFT.  A function on the
  // torus b/Gamma has frequencies on the full lattice only (even keys), so
  // the interpolant uses the g even keys per axis centered in [-g, g).
  const std::vector<lcplx> base = grid_dft(grid, values);
  const int g = grid.g;
  const int n = grid.rank;
  long double peak = 0.0;
  for (const lcplx& c : base) peak = std::max(peak, std::abs(c));
  TrigLaurentPoly f_poly(n);
  std::vector<int> key(n);
  long long box = 1;
  for (int i = 0; i < n; ++i) box *= g;
  for (long long idx = 0; idx < box; ++idx) {
    long long rest = idx;
    for (int a = n - 1; a >= 0; --a) {
      const int t = static_cast<int>(rest % g);
      rest /= g;
      key[a] = 2 * t - g;
    }
    const lcplx c = dft_at(grid, base, key);
    if (std::abs(c) > 1e-18 * peak) f_poly.terms[key] = to_cplx(c);
  }
  const ShiftOperator Dstar = adjoint_shift(data, D);
  std::map<std::vector<int>, lcplx> h_poly;
  for (const auto& term : Dstar.terms) {
    TrigLaurentPoly q = f_poly;
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < term.deriv[a]; ++i) q = q.derivative(data, a);
    TrigLaurentPoly prod = term.coeff * q;
    for (const auto& [k, c] : prod.terms) h_poly[k] += to_lcplx(c) * to_lcplx(Dstar.normalization);
  }
  AdjointData adj;
  adj.support_R = support_R;
  adj.h = grid_synth(grid, h_poly);
  return adj;
}

cplx pw_extend_adjoint(const SymmetricSpaceData& data, const TorusGrid& grid,
                       const AdjointData& adj, const SpectralParameter& lambda) {
  const auto nodes = masked_nodes(grid, data, adj.support_R);
  std::vector<cplx> delta_c(grid.delta_vals.begin(), grid.delta_vals.end());
  const double Z = std::real(quadrature_mean(grid, delta_c));
  auto with_d = [&](const SpectralParameter& l, cplx d) {
    CVec shifted = l.coords + data.rho.cast<cplx>();
    lcplx acc = 0.0;
    for (const auto& [j, xf] : nodes) {
      const Vec theta = torus_theta(data, xf);
      lcplx orbit = 0.0;
      for (const auto& w : data.weyl) {
        CVec wl = w.cast<cplx>() * shifted;
        lcplx phase = 0.0;
        for (int i = 0; i < data.rank; ++i)
          phase += to_lcplx(wl[i]) * static_cast<long double>(theta[i]);
        orbit += std::exp(lcplx(0.0L, 1.0L) * phase);
      }
      acc += to_lcplx(adj.h[j]) * orbit;
    }
    acc /= static_cast<long double>(grid.count);
    return to_cplx(acc) / (Z * d);
  };
  return eval_over_dimension(data, lambda, with_d);
}

double exponential_type(const SymmetricSpaceData& data,
                        const std::function<cplx(const SpectralParameter&)>& F,
                        const std::vector<double>& radii) {
  std::vector<Vec> dirs;
  if (data.rank == 1) {
    Vec u(1);
    u << 1.0;
    dirs.push_back(u);
  } else {
    for (int k = 0; k < 8; ++k) {
      const double a = 2.0 * pi * (k + 0.37) / 8.0;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      dirs.push_back(u);
    }
  }
  std::vector<double> rs, logm;
  for (double r : radii) {
    double best = 0.0;
    for (const auto& u : dirs) {
      CVec lam = CVec::Zero(data.rank);
      for (int i = 0; i < data.rank; ++i) lam[i] = cplx(0.0, r * u[i]);
      const cplx v = F(SpectralParameter(lam));
      if (std::isfinite(std::abs(v))) best = std::max(best, std::abs(v));
    }
    if (best > 0.0) {
      rs.push_back(r);
      logm.push_back(std::log(best * std::pow(1.0 + r, 4)));
    }
  }
  if (rs.size() < 2) throw DomainError("exponential_type: too few usable radii");
  // least squares slope
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double N = static_cast<double>(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    sx += rs[i];
    sy += logm[i];
    sxx += rs[i] * rs[i];
    sxy += rs[i] * logm[i];
  }
  return (N * sxy - sx * sy) / (N * sxx - sx * sx);
}

double pw_symmetry_defect(const SymmetricSpaceData& data,
                          const std::function<cplx(const SpectralParameter&)>& F,
                          const std::vector<SpectralParameter>& samples) {
  double worst = 0.0;
  for (const auto& lam : samples) {
    const cplx base = F(lam);
    for (int wi = 0; wi < data.weyl_order(); ++wi) {
      const cplx v = F(shifted_weyl(data, wi, lam));
      worst = std::max(worst, std::abs(v - base));
    }
  }
  return worst;
}

SphericalCoefficients sample_pw(const SymmetricSpaceData& data,
                                const std::function<cplx(const SpectralParameter&)>& F,
                                double cutoff) {
  SphericalCoefficients out;
  out.cutoff = cutoff;
  out.weights = enumerate_dominant(data, cutoff);
  out.coeffs.resize(out.weights.size());
  parallel_for_each(out.weights.size(), [&](std::size_t i) {
    out.coeffs[i] = F(out.weights[i].spectral());
  });
  return out;
}

IntRepResult integral_representation(const SymmetricSpaceData& data, const ShiftOperator& D,
                                     const TorusGrid& grid, const std::vector<cplx>& values,
                                     double support_R, long long node, double S, double ds) {
  if (data.rank != 1) throw DomainError("integral_representation: rank-one only");
  const Vec x = nearest_representative(data, grid.node_x(node));
  const Vec theta = torus_theta(data, x);
  const double rho = data.rho[0];
  const double delta = grid.delta_vals[node];

  // D coefficient values at theta, by derivative order.
  std::vector<cplx> coeffD;
  for (const auto& term : D.terms) {
    const int j = term.deriv[0];
    if (static_cast<int>(coeffD.size()) <= j) coeffD.resize(j + 1, 0.0);
    coeffD[j] += D.normalization * term.coeff.eval(x);
  }

  const int half = static_cast<int>(std::ceil(S / ds));
  std::vector<cplx> G(half);
  parallel_for_each(static_cast<std::size_t>(half), [&](std::size_t k) {
    const double sigma = (static_cast<double>(k) + 0.5) * ds;
    CVec lam(1);
    lam << cplx(sigma - rho, 0.0);
    G[k] = pw_extend(data, D, grid, values, support_R, SpectralParameter(lam));
  });

  // phi_{sigma-rho} d(sigma-rho) = orbit(sigma)/delta at the probe node.
  lcplx f_formula = 0.0;
  lcplx h_deriv[8] = {};
  const int jmax = static_cast<int>(coeffD.size());
  for (int k = 0; k < half; ++k) {
    const long double sigma = (static_cast<long double>(k) + 0.5L) * ds;
    CVec lam(1);
    lam << cplx(static_cast<double>(sigma), 0.0);
    const lcplx orbit = shift_orbit_value(data, D, SpectralParameter(lam), x.cast<cplx>());
    // even integrand: 2 * integral over (0, S]
    f_formula += to_lcplx(G[k]) * orbit;
    // (i sigma)^j e^{i sigma theta} + (-i sigma)^j e^{-i sigma theta}
    const long double arg = sigma * theta[0];
    const lcplx ep(std::cos(arg), std::sin(arg));
    lcplx pw_p = 1.0, pw_m = 1.0;
    for (int j = 0; j < jmax; ++j) {
      h_deriv[j] += to_lcplx(G[k]) * (pw_p * ep + pw_m * std::conj(ep));
      pw_p *= lcplx(0.0L, 1.0L) * sigma;
      pw_m *= lcplx(0.0L, -1.0L) * sigma;
    }
  }
  IntRepResult out;
  out.f_direct = values[node];
  out.f_formula = to_cplx(f_formula) * (2.0 * ds) / (static_cast<double>(data.weyl_order()) * delta);
  out.delta_f_direct = values[node] * delta;
  cplx dh = 0.0;
  for (int j = 0; j < jmax; ++j) dh += coeffD[j] * to_cplx(h_deriv[j]) * ds;
  out.delta_f_formula = dh;
  return out;
}

}  // namespace hk
