#include "hk/specfunc.hpp"

#include <cmath>

namespace hk {

namespace {

constexpr long double lpi = 3.14159265358979323846264338327950288L;

lcplx to_lcplx(cplx z) { return lcplx(z.real(), z.imag()); }
cplx to_cplx(lcplx z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); }

lcplx lsin(lcplx z) { return std::sin(z); }

}  // namespace

std::pair<cplx, double> dimension_with_scale(const SymmetricSpaceData& data,
                                             const SpectralParameter& lambda) {
  cplx d = 1.0;
  double scale = 1.0;
  SpectralParameter shifted(lambda.coords + data.rho.cast<cplx>());
  SpectralParameter rho_sp = SpectralParameter::real(data.rho);
  for (const auto& alpha : data.positive_roots) {
    const cplx nu = lambda_alpha(shifted, alpha);
    const double ra = std::real(lambda_alpha(rho_sp, alpha));
    for (int k = 0; k < data.m; ++k) {
      const double den = static_cast<double>(k) * k - ra * ra;
      d *= (static_cast<double>(k) * k - nu * nu) / den;
      scale *= (static_cast<double>(k) * k + std::norm(nu) + 1.0) / std::abs(den);
    }
  }
  return {d, scale};
}

CValue c_function(const SymmetricSpaceData& data, const SpectralParameter& lambda) {
  SpectralParameter rho_sp = SpectralParameter::real(data.rho);
  cplx c = 1.0;
  for (const auto& alpha : data.positive_roots) {
    const cplx la = lambda_alpha(lambda, alpha);
    const double ra = std::real(lambda_alpha(rho_sp, alpha));
    for (int k = 0; k < data.m; ++k) {
      const cplx denom = la + static_cast<double>(k);
      if (std::abs(denom) < 1e-14) return {cplx(std::numeric_limits<double>::infinity(), 0.0), true};
      c *= (ra + static_cast<double>(k)) / denom;
    }
  }
  return {c, false};
}

cplx dimension(const SymmetricSpaceData& data, const SpectralParameter& lambda) {
  return dimension_with_scale(data, lambda).first;
}

VretareResult vretare_check(const SymmetricSpaceData& data, const SpectralParameter& mu) {
  VretareResult out;
  CVec rho_c = data.rho.cast<cplx>();
  CValue c_mrho = c_function(data, SpectralParameter(-rho_c));
  CValue c_p = c_function(data, SpectralParameter(mu.coords + rho_c));
  CValue c_m = c_function(data, SpectralParameter(-(mu.coords + rho_c)));
  if (c_mrho.pole || c_p.pole || c_m.pole) {
    out.skipped = true;
    out.reason = "pole in a c-function factor";
    return out;
  }
  const cplx rhs = c_mrho.value / (c_p.value * c_m.value);
  out.residual = std::abs(dimension(data, mu) - rhs);
  return out;
}

// ------------------------------------------------------- shift operators ---

namespace {

// Rational coefficient num / sin(theta)^pow used by the rank-one recursion.
struct RankOneRat {
  TrigLaurentPoly num{1};
  int pow = 0;
  bool zero = true;
};

TrigLaurentPoly sin_theta_poly() {
  TrigLaurentPoly s(1);
  s.terms[{2}] = cplx(0.0, -0.5);   // e^{i theta}/(2i)
  s.terms[{-2}] = cplx(0.0, 0.5);
  return s;
}

TrigLaurentPoly cos_theta_poly() {
  TrigLaurentPoly c(1);
  c.terms[{2}] = 0.5;
  c.terms[{-2}] = 0.5;
  return c;
}

TrigLaurentPoly sin_power(int p) {
  TrigLaurentPoly out = TrigLaurentPoly::constant(1, 1.0);
  TrigLaurentPoly s = sin_theta_poly();
  for (int i = 0; i < p; ++i) out = out * s;
  return out;
}

void rat_add(RankOneRat& acc, TrigLaurentPoly num, int pow) {
  if (num.empty()) return;
  if (acc.zero) {
    acc.num = std::move(num);
    acc.pow = pow;
    acc.zero = false;
    return;
  }
  if (pow > acc.pow) {
    acc.num = acc.num * sin_power(pow - acc.pow);
    acc.pow = pow;
  } else if (pow < acc.pow) {
    num = num * sin_power(acc.pow - pow);
  }
  acc.num += num;
}

std::vector<RankOneRat> sphere_stages(const SymmetricSpaceData& data) {
  const int m = data.m;
  // stage[j]: coefficient of d^j/dtheta^j in E^k, E = (1/sin) d/dtheta.
  std::vector<RankOneRat> stage(1);
  rat_add(stage[0], TrigLaurentPoly::constant(1, 1.0), 0);
  TrigLaurentPoly s = sin_theta_poly();
  TrigLaurentPoly c = cos_theta_poly();
  for (int k = 0; k < m; ++k) {
    std::vector<RankOneRat> next(stage.size() + 1);
    for (std::size_t j = 0; j < stage.size(); ++j) {
      if (stage[j].zero) continue;
      // (1/sin) * d/dtheta of the coefficient.
      TrigLaurentPoly dnum = stage[j].num.derivative(data, 0) * s;
      dnum -= TrigLaurentPoly::constant(1, static_cast<double>(stage[j].pow)) * stage[j].num * c;
      rat_add(next[j], std::move(dnum), stage[j].pow + 2);
      // (1/sin) * coefficient passing to the next derivative order.
      rat_add(next[j + 1], stage[j].num, stage[j].pow + 1);
    }
    stage = std::move(next);
  }
  return stage;
}

ShiftOperator build_sphere_operator(const SymmetricSpaceData& data) {
  const int m = data.m;
  std::vector<RankOneRat> stage = sphere_stages(data);
  ShiftOperator D;
  D.dim = 1;
  for (std::size_t j = 0; j < stage.size(); ++j) {
    if (stage[j].zero) continue;
    const int sin_left = 2 * m - stage[j].pow;
    if (sin_left < 1) throw InternalError("shift operator coefficient not analytic (sin power < 1)");
    ShiftTerm term;
    term.coeff = stage[j].num * sin_power(sin_left);
    term.coeff.prune(0.0);
    term.deriv = {static_cast<int>(j)};
    if (!term.coeff.empty()) D.terms.push_back(std::move(term));
  }
  return D;
}

ShiftOperator build_complex_group_operator(const SymmetricSpaceData& data) {
  const int n = data.rank;
  Mat binv = data.lattice_basis.inverse();
  // Conjugate Weyl denominator prod (b^{-alpha} - b^{alpha}) on the weight
  // lattice P = (1/2) Lambda (keys are exact integers there).
  TrigLaurentPoly dbar = TrigLaurentPoly::constant(n, 1.0);
  for (const auto& alpha : data.positive_roots) {
    Vec kd = 2.0 * (binv * alpha);
    std::vector<int> key(n), nkey(n);
    for (int i = 0; i < n; ++i) {
      const double r = std::round(kd[i]);
      if (std::abs(kd[i] - r) > 1e-9) throw InternalError("root not on the half lattice");
      key[i] = static_cast<int>(r);
      nkey[i] = -key[i];
    }
    TrigLaurentPoly f(n);
    f.terms[nkey] = 1.0;
    f.add_term(key, -1.0);
    dbar = dbar * f;
  }
  // pi(d) = prod_alpha d_{H_alpha} expanded into multi-indices.
  std::map<std::vector<int>, double> poly{{std::vector<int>(n, 0), 1.0}};
  for (const auto& alpha : data.positive_roots) {
    Vec h = 2.0 / alpha.squaredNorm() * alpha;
    std::map<std::vector<int>, double> next;
    for (const auto& [beta, coef] : poly)
      for (int j = 0; j < n; ++j) {
        if (h[j] == 0.0) continue;
        std::vector<int> b2 = beta;
        ++b2[j];
        next[b2] += coef * h[j];
      }
    poly = std::move(next);
  }
  ShiftOperator D;
  D.dim = n;
  for (const auto& [beta, coef] : poly) {
    ShiftTerm term;
    term.coeff = dbar;
    term.coeff *= cplx(coef);
    term.deriv = beta;
    D.terms.push_back(std::move(term));
  }
  return D;
}

// Probe torus points used to pin the normalization constant.
std::vector<Vec> probe_points(const SymmetricSpaceData& data, int count) {
  std::vector<Vec> pts;
  const double phi = 0.6180339887498949;
  for (int i = 1; pts.size() < static_cast<std::size_t>(count) && i < 200; ++i) {
    Vec x(data.rank);
    for (int j = 0; j < data.rank; ++j) x[j] = std::fmod(0.147 + i * phi * (1.0 + 0.37 * j), 1.0);
    if (std::abs(delta_density(data, x)) > 1e-3) pts.push_back(std::move(x));
  }
  if (pts.size() < static_cast<std::size_t>(count)) throw InternalError("probe point generation failed");
  return pts;
}

}  // namespace

std::vector<SphereRationalTerm> sphere_rational_terms(const SymmetricSpaceData& data) {
  if (data.config.family != Family::SphereOdd)
    throw DomainError("sphere_rational_terms: sphere presets only");
  std::vector<RankOneRat> stage = sphere_stages(data);
  std::vector<SphereRationalTerm> out;
  for (std::size_t j = 0; j < stage.size(); ++j) {
    if (stage[j].zero) continue;
    SphereRationalTerm t;
    t.num = stage[j].num;
    t.sinpow = stage[j].pow;
    t.order = static_cast<int>(j);
    out.push_back(std::move(t));
  }
  return out;
}

ShiftOperator build_shift_operator(const SymmetricSpaceData& data) {
  ShiftOperator D = data.config.family == Family::SphereOdd ? build_sphere_operator(data)
                                                            : build_complex_group_operator(data);
  // psi_0 == 1 probe: delta(x) * d(0) = normalization * sum_w D b^{w rho}.
  D.normalization = 1.0;
  SpectralParameter rho_sp = SpectralParameter::real(data.rho);
  std::vector<cplx> ratios;
  for (const auto& x : probe_points(data, 17)) {
    const lcplx S = shift_orbit_value(data, D, rho_sp, x.cast<cplx>());
    const double delta = delta_density(data, x);
    if (std::abs(to_cplx(S)) < 1e-12) continue;
    ratios.push_back(to_cplx(to_lcplx(delta) / S));
  }
  if (ratios.size() < 8) throw InternalError("shift normalization probe: too few usable points");
  cplx mean = 0.0;
  for (cplx r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double spread = 0.0;
  for (cplx r : ratios) spread = std::max(spread, std::abs(r - mean));
  if (spread > 1e-10 * std::abs(mean))
    throw InternalError("shift normalization probe did not determine a single constant");
  D.normalization = mean;
  return D;
}

ShiftOperator adjoint_shift(const SymmetricSpaceData& data, const ShiftOperator& D) {
  ShiftOperator out;
  out.dim = D.dim;
  out.normalization = D.normalization;
  const int n = D.dim;
  for (const auto& term : D.terms) {
    const double sign = term.order() % 2 == 0 ? 1.0 : -1.0;
    // Expand (-1)^{|beta|} d^beta o c = sum_{gamma <= beta} binom(beta,gamma)
    // (d^{beta-gamma} c) d^gamma.
    std::vector<int> gamma(n, 0);
    while (true) {
      double binom = 1.0;
      for (int j = 0; j < n; ++j) {
        // binom(beta_j, gamma_j)
        double b = 1.0;
        for (int i = 0; i < gamma[j]; ++i) b = b * (term.deriv[j] - i) / (i + 1);
        binom *= b;
      }
      TrigLaurentPoly c = term.coeff;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < term.deriv[j] - gamma[j]; ++i) c = c.derivative(data, j);
      c *= cplx(sign * binom);
      if (!c.empty()) {
        ShiftTerm t;
        t.coeff = std::move(c);
        t.deriv = gamma;
        out.terms.push_back(std::move(t));
      }
      int j = 0;
      for (; j < n; ++j) {
        if (++gamma[j] <= term.deriv[j]) break;
        gamma[j] = 0;
      }
      if (j == n) break;
    }
  }
  return out;
}

TrigLaurentPoly apply_shift_to_exponential(const SymmetricSpaceData& data, const ShiftOperator& D,
                                           const SpectralParameter& lambda) {
  TrigLaurentPoly p(D.dim);
  for (const auto& term : D.terms) {
    cplx factor = D.normalization;
    for (int j = 0; j < D.dim; ++j)
      for (int i = 0; i < term.deriv[j]; ++i) factor *= cplx(0.0, 1.0) * lambda.coords[j];
    TrigLaurentPoly c = term.coeff;
    c *= factor;
    p += c;
  }
  p.prune(0.0);
  return p;
}

TrigLaurentPoly shift_orbit_poly(const SymmetricSpaceData& data, const ShiftOperator& D,
                                 const SpectralParameter& lambda) {
  if (!lambda.is_real(1e-10)) throw DomainError("shift_orbit_poly: lambda must be a half-lattice point");
  Vec lr = lambda.real_part();
  Vec k2 = 2.0 * data.lattice_basis.fullPivLu().solve(lr);
  std::vector<int> key(data.rank);
  for (int i = 0; i < data.rank; ++i) {
    const double r = std::round(k2[i]);
    if (std::abs(k2[i] - r) > 1e-9) throw DomainError("shift_orbit_poly: lambda must be a half-lattice point");
    key[i] = static_cast<int>(r);
  }
  TrigLaurentPoly total(data.rank);
  for (const auto& w : data.weyl) {
    Vec wl = w * lr;
    SpectralParameter wsp = SpectralParameter::real(wl);
    TrigLaurentPoly p = apply_shift_to_exponential(data, D, wsp);
    Vec wk = 2.0 * data.lattice_basis.fullPivLu().solve(wl);
    std::vector<int> wkey(data.rank);
    for (int i = 0; i < data.rank; ++i) wkey[i] = static_cast<int>(std::round(wk[i]));
    total += p * TrigLaurentPoly::character(data.rank, wkey);
  }
  return total;
}

lcplx shift_orbit_value(const SymmetricSpaceData& data, const ShiftOperator& D,
                        const SpectralParameter& lambda, const CVec& x) {
  const int n = data.rank;
  // Coefficient values are independent of w.
  std::vector<lcplx> cv(D.terms.size());
  for (std::size_t t = 0; t < D.terms.size(); ++t) {
    lcplx acc = 0.0;
    for (const auto& [k, c] : D.terms[t].coeff.terms) {
      lcplx phase = 0.0;
      for (int i = 0; i < n; ++i) phase += static_cast<long double>(k[i]) * to_lcplx(x[i]);
      acc += to_lcplx(c) * std::exp(lcplx(0.0L, lpi) * phase);
    }
    cv[t] = acc;
  }
  CVec theta = data.period_basis.cast<cplx>() * x;
  lcplx total = 0.0;
  for (const auto& w : data.weyl) {
    CVec wl = w.cast<cplx>() * lambda.coords;
    lcplx pw = 0.0;
    for (std::size_t t = 0; t < D.terms.size(); ++t) {
      lcplx factor = 1.0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < D.terms[t].deriv[j]; ++i) factor *= lcplx(0.0L, 1.0L) * to_lcplx(wl[j]);
      pw += cv[t] * factor;
    }
    lcplx phase = 0.0;
    for (int i = 0; i < n; ++i) phase += to_lcplx(wl[i]) * to_lcplx(theta[i]);
    total += pw * std::exp(lcplx(0.0L, 1.0L) * phase);
  }
  return to_lcplx(D.normalization) * total;
}

lcplx delta_density(const SymmetricSpaceData& data, const CVec& x) {
  CVec theta = data.period_basis.cast<cplx>() * x;
  lcplx d = 1.0;
  for (const auto& alpha : data.positive_roots) {
    lcplx a = 0.0;
    for (int i = 0; i < data.rank; ++i) a += static_cast<long double>(alpha[i]) * to_lcplx(theta[i]);
    lcplx s = lsin(a);
    for (int k = 0; k < 2 * data.m; ++k) d *= s;
  }
  return d;
}

double delta_density(const SymmetricSpaceData& data, const Vec& x) {
  const CVec xc = x.cast<cplx>();
  return static_cast<double>(delta_density(data, xc).real());
}

// ---------------------------------------------------- spherical functions ---

namespace {

cplx spherical_direct(const SymmetricSpaceData& data, const ShiftOperator& D,
                      const SpectralParameter& lambda, const CVec& x, cplx d_value) {
  CVec theta = data.period_basis.cast<cplx>() * x;
  const bool real_point = theta.imag().cwiseAbs().maxCoeff() < 1e-14;
  for (const auto& alpha : data.positive_roots) {
    cplx a = 0.0;
    for (int i = 0; i < data.rank; ++i) a += alpha[i] * theta[i];
    if (std::abs(std::sin(a)) < 1e-12) {
      if (real_point) throw WallEvaluationError("spherical_function: wall point (delta = 0)");
    }
  }
  SpectralParameter shifted(lambda.coords + data.rho.cast<cplx>());
  const lcplx num = shift_orbit_value(data, D, shifted, x);
  const lcplx den = to_lcplx(d_value) * delta_density(data, x);
  return to_cplx(num / den);
}

bool near_origin(const SymmetricSpaceData& data, const CVec& x) {
  if (x.imag().cwiseAbs().maxCoeff() > 1e-14) return false;
  Vec theta = (data.period_basis.cast<cplx>() * x).real();
  return torus_distance(data, theta) < 1e-13;
}

}  // namespace

cplx spherical_function(const SymmetricSpaceData& data, const ShiftOperator& D,
                        const SpectralParameter& lambda, const CVec& x) {
  if (near_origin(data, x)) return 1.0;
  auto [d, scale] = dimension_with_scale(data, lambda);
  if (std::abs(d) >= 1e-7 * scale) return spherical_direct(data, D, lambda, x, d);
  // Richardson rule near the zero set of d (the quotient is holomorphic).
  Vec e(data.rank);
  for (int i = 0; i < data.rank; ++i) e[i] = 1.0 / (1.0 + 0.6180339887498949 * i);
  e /= e.norm();
  const double eta = 1e-5;
  auto eval_at = [&](double h) {
    SpectralParameter lp(lambda.coords + (h * e).cast<cplx>());
    auto [dp, sp] = dimension_with_scale(data, lp);
    if (std::abs(dp) < 1e-9 * sp)
      throw SpectralSingularityError("spherical_function: perturbation still on the zero set of d");
    return spherical_direct(data, D, lp, x, dp);
  };
  const cplx p1 = eval_at(eta);
  const cplx p2 = eval_at(eta / 2.0);
  return 2.0 * p2 - p1;
}

cplx spherical_function(const SymmetricSpaceData& data, const ShiftOperator& D,
                        const SpectralParameter& lambda, const Vec& x) {
  const CVec xc = x.cast<cplx>();
  return spherical_function(data, D, lambda, xc);
}

double weyl_dimension(const SymmetricSpaceData& data, const SpectralParameter& mu) {
  double dim = 1.0;
  Vec mr = mu.real_part() + data.rho;
  for (const auto& alpha : data.positive_roots) dim *= mr.dot(alpha) / data.rho.dot(alpha);
  return dim;
}

cplx spherical_oracle(const SymmetricSpaceData& data, const SpectralParameter& mu, const Vec& x) {
  if (!dominant_spherical(mu, data)) throw DomainError("spherical_oracle: mu must be in Lambda+");
  Vec theta = torus_theta(data, x);
  if (data.config.family == Family::SphereOdd) {
    const int k = static_cast<int>(std::round(mu.real_part()[0]));
    const int m = data.m;
    const long double c = std::cos(static_cast<long double>(theta[0]));
    long double c0 = 1.0L, c1 = 2.0L * m * c;
    if (k == 0) return 1.0;
    for (int j = 2; j <= k; ++j) {
      const long double cj = (2.0L * (j + m - 1) * c * c1 - (j + 2 * m - 2) * c0) / j;
      c0 = c1;
      c1 = cj;
    }
    long double at_one = 1.0L;  // C_k^m(1) = binom(k + 2m - 1, k)
    for (int j = 1; j <= k; ++j) at_one = at_one * (2 * m - 1 + j) / j;
    return static_cast<double>(c1 / at_one);
  }
  // ComplexGroup: normalized Weyl character.
  lcplx num = 0.0, den = 0.0;
  Vec mr = mu.real_part() + data.rho;
  for (std::size_t wi = 0; wi < data.weyl.size(); ++wi) {
    const auto& w = data.weyl[wi];
    const long double det = data.weyl_det[wi];
    {
      Vec v = w * mr;
      long double phase = 0.0L;
      for (int i = 0; i < data.rank; ++i) phase += static_cast<long double>(v[i]) * theta[i];
      num += det * lcplx(std::cos(phase), std::sin(phase));
    }
    {
      Vec v = w * data.rho;
      long double phase = 0.0L;
      for (int i = 0; i < data.rank; ++i) phase += static_cast<long double>(v[i]) * theta[i];
      den += det * lcplx(std::cos(phase), std::sin(phase));
    }
  }
  if (std::abs(to_cplx(den)) < 1e-13)
    throw WallEvaluationError("spherical_oracle: Weyl denominator vanishes (wall point)");
  return to_cplx(num / den) / weyl_dimension(data, mu);
}

cplx noncompact_restriction(const SymmetricSpaceData& data, const ShiftOperator& D,
                            const SpectralParameter& lambda, double t) {
  if (data.rank != 1) throw DomainError("noncompact_restriction: rank-one only");
  if (t < 0.0) throw DomainError("noncompact_restriction: t must be >= 0");
  if (t == 0.0) return 1.0;
  CVec x(1);
  x[0] = cplx(0.0, t) / (2.0 * pi);
  return spherical_function(data, D, lambda, x);
}

double eigen_residual(const SymmetricSpaceData& data, const ShiftOperator& D,
                      const SpectralParameter& mu, int grid_size) {
  const int n = data.rank;
  const int g = grid_size;
  const double eig = (mu.real_part() + 2.0 * data.rho).dot(mu.real_part());
  if (n == 1) {
    const double h = 2.0 * pi / g;
    std::vector<cplx> psi(g);
    for (int i = 0; i < g; ++i) {
      Vec x(1);
      x << (i + 0.5) / g;
      psi[i] = spherical_function(data, D, mu, x);
    }
    double worst = 0.0;
    for (int i = 0; i < g; ++i) {
      const double theta = 2.0 * pi * (i + 0.5) / g;
      double wall = std::min({std::abs(theta), std::abs(theta - pi), std::abs(theta - 2.0 * pi)});
      if (wall < 3.0 * h) continue;
      const cplx d1 = (psi[(i + 1) % g] - psi[(i + g - 1) % g]) / (2.0 * h);
      const cplx d2 = (psi[(i + 1) % g] - 2.0 * psi[i] + psi[(i + g - 1) % g]) / (h * h);
      const cplx res = d2 + 2.0 * data.m / std::tan(theta) * d1 + eig * psi[i];
      worst = std::max(worst, std::abs(res));
    }
    return worst;
  }
  if (n != 2) throw DomainError("eigen_residual: rank 1 and 2 only");
  const double hx = 1.0 / g;
  std::vector<cplx> psi(static_cast<std::size_t>(g) * g);
  auto at = [&](int i, int j) -> cplx& { return psi[static_cast<std::size_t>(((i % g) + g) % g) * g + (((j % g) + g) % g)]; };
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      Vec x(2);
      x << (i + data.grid_offsets[0]) / g, (j + data.grid_offsets[1]) / g;
      at(i, j) = spherical_function(data, D, mu, x);
    }
  Mat pinv = data.period_basis.inverse();          // theta -> x
  Mat pit = pinv.transpose();                      // grad_theta = pit^T ... use P^{-T}
  double worst = 0.0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      Vec x(2);
      x << (i + data.grid_offsets[0]) / g, (j + data.grid_offsets[1]) / g;
      Vec theta = torus_theta(data, x);
      bool interior = true;
      for (const auto& alpha : data.positive_roots) {
        const double a = alpha.dot(theta) / pi;
        const double dist = std::abs(a - std::round(a)) * pi;
        double halpha = 0.0;
        for (int c = 0; c < 2; ++c) halpha = std::max(halpha, std::abs(alpha.dot(data.period_basis.col(c))) / g);
        if (dist < 3.0 * halpha) interior = false;
      }
      if (!interior) continue;
      CVec gx(2), hxx(2);
      gx << (at(i + 1, j) - at(i - 1, j)) / (2.0 * hx), (at(i, j + 1) - at(i, j - 1)) / (2.0 * hx);
      Eigen::Matrix2cd H;
      H(0, 0) = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (hx * hx);
      H(1, 1) = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (hx * hx);
      H(0, 1) = H(1, 0) =
          (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4.0 * hx * hx);
      CVec grad_theta = pinv.transpose().cast<cplx>() * gx;
      Eigen::Matrix2cd Ht = pinv.transpose().cast<cplx>() * H * pinv.cast<cplx>();
      cplx lap = Ht(0, 0) + Ht(1, 1);
      cplx first = 0.0;
      for (const auto& alpha : data.positive_roots) {
        const double a = alpha.dot(theta);
        first += 2.0 * data.m / std::tan(a) * (alpha.cast<cplx>().transpose() * grad_theta)(0, 0);
      }
      worst = std::max(worst, std::abs(lap + first + eig * at(i, j)));
    }
  return worst;
}

}  // namespace hk
