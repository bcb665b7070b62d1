#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hk/fourier.hpp"
#include "hk/presets.hpp"

using namespace hk;

namespace {

SymmetricSpaceData space(const std::string& name, int g) {
  return build_space(preset_config(name, g));
}

std::vector<cplx> oracle_samples(const SymmetricSpaceData& data, const TorusGrid& grid,
                                 const SpectralParameter& mu) {
  std::vector<cplx> v(grid.count);
  for (long long j = 0; j < grid.count; ++j) v[j] = spherical_oracle(data, mu, grid.node_x(j));
  return v;
}

std::size_t weight_index(const SphericalCoefficients& c, const IVec& lat) {
  for (std::size_t i = 0; i < c.weights.size(); ++i)
    if (c.weights[i].lattice_coords == lat) return i;
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_CASE("grid quadrature and DFT basics (s3)") {
  auto data = space("s3", 64);
  auto grid = make_grid(data, 64);

  // quadrature_mean is exact on characters below Nyquist
  {
    std::vector<cplx> ones(grid.count, 1.0);
    CHECK(std::abs(quadrature_mean(grid, ones) - 1.0) < 1e-15);
    // only full-lattice characters (even keys) are quadrature-exact
    std::vector<cplx> ch(grid.count);
    for (long long j = 0; j < grid.count; ++j)
      ch[j] = std::exp(cplx(0.0, pi * 6.0 * grid.node_x(j)[0]));
    CHECK(std::abs(quadrature_mean(grid, ch)) < 1e-14);
  }

  // dft_at equals the direct masked sum, including a folded key
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> f(grid.count);
  for (auto& v : f) v = cplx(u(rng), u(rng));
  auto base = grid_dft(grid, f);
  for (int key : {0, 5, -3, 130, -257}) {
    lcplx direct = 0.0;
    for (long long j = 0; j < grid.count; ++j)
      direct += lcplx(f[j].real(), f[j].imag()) *
                std::exp(lcplx(0.0L, -1.0L) * static_cast<long double>(pi * key * grid.node_x(j)[0]));
    direct /= static_cast<long double>(grid.count);
    const lcplx got = dft_at(grid, base, std::vector<int>{key});
    CHECK(std::abs(got - direct) < 1e-14);
  }

  // grid_synth is the adjoint evaluation: synth of one key gives the character
  {
    std::map<std::vector<int>, lcplx> c;
    c[{-131}] = lcplx(0.5L, 0.25L);
    auto v = grid_synth(grid, c);
    for (long long j : {0LL, 17LL, 63LL}) {
      const cplx expect = cplx(0.5, 0.25) * std::exp(cplx(0.0, -pi * 131.0 * grid.node_x(j)[0]));
      CHECK(std::abs(v[j] - expect) < 1e-13);
    }
  }
}

TEST_CASE("Schur orthogonality of forward transform (s3, s5)") {
  for (const std::string& name : {std::string("s3"), std::string("s5")}) {
    auto data = space(name, 128);
    auto grid = make_grid(data, 128);
    auto D = build_shift_operator(data);
    IVec nu_lat(1);
    nu_lat << 5;
    DominantWeight nu{nu_lat, data.lattice_basis * nu_lat.cast<double>().eval(), 0.0};
    auto values = oracle_samples(data, grid, nu.spectral());
    auto coeffs = forward_transform(data, D, grid, values, 12.0 * data.lattice_basis.norm());
    const double dnu = std::real(dimension(data, nu.spectral()));
    for (std::size_t i = 0; i < coeffs.weights.size(); ++i) {
      const double expect = coeffs.weights[i].lattice_coords == nu_lat ? 1.0 / dnu : 0.0;
      CHECK(std::abs(coeffs.coeffs[i] - expect) < 1e-12);
    }
    CHECK(plancherel_mismatch(data, grid, values, coeffs) < 1e-12);
  }
}

TEST_CASE("[DERIVED] S^3: f = cos(theta) has fhat(1) = 1/4") {
  // On S^3, cos(theta) = psi_1 (the n=1 zonal function) and d(1) = 4, so the
  // only nonzero coefficient is fhat(1) = 1/4.
  auto data = space("s3", 128);
  auto grid = make_grid(data, 128);
  auto D = build_shift_operator(data);
  std::vector<cplx> f(grid.count);
  for (long long j = 0; j < grid.count; ++j)
    f[j] = std::cos(torus_theta(data, grid.node_x(j))[0]);
  auto coeffs = forward_transform(data, D, grid, f, 10.0);
  for (std::size_t i = 0; i < coeffs.weights.size(); ++i) {
    const double expect = coeffs.weights[i].lattice_coords[0] == 1 ? 0.25 : 0.0;
    CHECK(std::abs(coeffs.coeffs[i] - expect) < 1e-13);
  }
}

TEST_CASE("band-limited roundtrip: inverse then forward recovers coefficients") {
  struct Case {
    std::string name;
    int g;
    double cutoff;
  };
  // cutoffs keep both the data and the numerator polynomials inside half the
  // Nyquist band, so the discrete pairing is exact
  for (const Case& cs : {Case{"s3", 64, 30.0}, Case{"s7", 64, 28.0}, Case{"su2", 64, 30.0},
                         Case{"su3", 32, 8.0}}) {
    auto data = space(cs.name, cs.g);
    auto grid = make_grid(data, cs.g);
    auto D = build_shift_operator(data);
    SphericalCoefficients in;
    in.cutoff = cs.cutoff;
    in.weights = enumerate_dominant(data, cs.cutoff);
    REQUIRE(in.weights.size() > 3);
    in.coeffs.resize(in.weights.size());
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& c : in.coeffs) c = cplx(u(rng), u(rng));
    auto values = inverse_transform(data, D, grid, in);
    auto out = forward_transform(data, D, grid, values, cs.cutoff);
    REQUIRE(out.weights.size() == in.weights.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < in.weights.size(); ++i)
      worst = std::max(worst, std::abs(out.coeffs[i] - in.coeffs[i]));
    CHECK(worst < 1e-9);
    CHECK(plancherel_mismatch(data, grid, values, out) < 1e-10);
  }
}

TEST_CASE("inverse synthesis stays accurate at near-wall nodes") {
  for (const std::string& name : {std::string("s5"), std::string("su2")}) {
    auto data = space(name, 256);
    auto grid = make_grid(data, 256);
    auto D = build_shift_operator(data);
    SphericalCoefficients in;
    in.cutoff = 25.0;
    in.weights = enumerate_dominant(data, in.cutoff);
    in.coeffs.resize(in.weights.size());
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& c : in.coeffs) c = cplx(u(rng), u(rng));
    auto values = inverse_transform(data, D, grid, in);
    // check against the oracle sum at the node where delta is smallest
    long long jmin = 0;
    for (long long j = 0; j < grid.count; ++j)
      if (std::abs(grid.delta_vals[j]) < std::abs(grid.delta_vals[jmin])) jmin = j;
    cplx direct = 0.0;
    for (std::size_t i = 0; i < in.weights.size(); ++i)
      direct += std::real(dimension(data, in.weights[i].spectral())) * in.coeffs[i] *
                spherical_oracle(data, in.weights[i].spectral(), grid.node_x(jmin));
    CHECK(std::abs(values[jmin] - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("forward transform rejects cutoffs beyond the Nyquist band") {
  auto data = space("s3", 8);
  auto grid = make_grid(data, 8);
  auto D = build_shift_operator(data);
  std::vector<cplx> f(grid.count, 1.0);
  CHECK_THROWS_AS(forward_transform(data, D, grid, f, 40.0), AliasingError);
}

TEST_CASE("pw_extend agrees with forward coefficients on the lattice (s3, su2)") {
  for (const std::string& name : {std::string("s3"), std::string("su2")}) {
    auto data = space(name, 256);
    auto grid = make_grid(data, 256);
    auto D = build_shift_operator(data);
    auto f = make_bump(data, grid, 0.5, 3.0);
    auto coeffs = forward_transform(data, D, grid, f.values, 30.0);
    for (const IVec& lat : {IVec::Zero(1).eval(), (IVec(1) << 3).finished(),
                            (IVec(1) << 10).finished()}) {
      const std::size_t i = weight_index(coeffs, lat);
      const cplx F = pw_extend(data, D, grid, f.values, f.support_radius,
                               coeffs.weights[i].spectral());
      CHECK(std::abs(F - coeffs.coeffs[i]) < 1e-12 * std::max(1.0, std::abs(coeffs.coeffs[i])));
    }
  }
}

TEST_CASE("pw_extend: Weyl shift symmetry and the two routes agree (s3)") {
  auto data = space("s3", 512);
  auto grid = make_grid(data, 512);
  auto D = build_shift_operator(data);
  auto f = make_bump(data, grid, 0.5, 3.0);
  auto adj = adjoint_apply(data, D, grid, f.values, f.support_radius);

  auto F_direct = [&](const SpectralParameter& l) {
    return pw_extend(data, D, grid, f.values, f.support_radius, l);
  };
  auto F_adjoint = [&](const SpectralParameter& l) {
    return pw_extend_adjoint(data, grid, adj, l);
  };

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<SpectralParameter> samples;
  for (int k = 0; k < 6; ++k) {
    CVec l(1);
    l << cplx(u(rng), 0.25 * u(rng));
    samples.emplace_back(l);
  }
  CHECK(pw_symmetry_defect(data, F_direct, samples) < 1e-10);
  for (const auto& l : samples) {
    const cplx a = F_direct(l), b = F_adjoint(l);
    CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
  }
  // Richardson path: integer sigma - rho hits a zero of d
  {
    CVec l(1);
    l << cplx(-4.0, 0.0);  // lambda + rho = -3, d vanishes
    const cplx a = F_direct(SpectralParameter(l));
    const cplx b = F_adjoint(SpectralParameter(l));
    CHECK(std::isfinite(std::abs(a)));
    CHECK(std::abs(a - b) < 1e-6 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("exponential type of a bump transform tracks the support radius") {
  auto data = space("s3", 1024);
  auto grid = make_grid(data, 1024);
  auto D = build_shift_operator(data);
  const double eps = 0.4;
  auto f = make_bump(data, grid, eps, 3.0);
  auto F = [&](const SpectralParameter& l) {
    return pw_extend(data, D, grid, f.values, f.support_radius, l);
  };
  const double slope = exponential_type(data, F, {40.0, 90.0, 140.0, 190.0, 240.0});
  CHECK(slope > eps - 0.05);
  CHECK(slope < eps + 0.1);
}

TEST_CASE("[DERIVED] rank-one integral representation at a grid node (s3)") {
  // Both halves, with plain Lebesgue d(sigma) in the stored coordinates and
  // constant one:
  //   delta(x) f(x) = D_x integral G(sigma) e^{i sigma theta} d sigma,
  //   f(x) = (1/|W|) integral G(sigma) phi_{sigma-rho}(x) d(sigma-rho) d sigma,
  // where G(sigma) = F(sigma - rho) is the Paley-Wiener extension.
  auto data = space("s3", 1024);
  auto grid = make_grid(data, 1024);
  auto D = build_shift_operator(data);
  auto f = make_bump(data, grid, 0.5, 3.0);
  // one node inside the support, one outside
  long long inside = -1, outside = -1;
  for (long long j = 0; j < grid.count; ++j) {
    if (inside < 0 && grid.dist_vals[j] > 0.15 && grid.dist_vals[j] < 0.3) inside = j;
    if (outside < 0 && grid.dist_vals[j] > 1.0 && grid.dist_vals[j] < 1.5) outside = j;
  }
  REQUIRE(inside >= 0);
  REQUIRE(outside >= 0);
  for (long long node : {inside, outside}) {
    auto r = integral_representation(data, D, grid, f.values, f.support_radius, node, 600.0, 0.25);
    const double scale = std::max(1e-3, std::abs(r.f_direct));
    CHECK(std::abs(r.f_formula - r.f_direct) < 1e-8 * scale);
    CHECK(std::abs(r.delta_f_formula - r.delta_f_direct) < 1e-8 * scale);
  }
}

TEST_CASE("support_radius reports the bump size") {
  auto data = space("s3", 256);
  auto grid = make_grid(data, 256);
  auto f = make_bump(data, grid, 0.5, 3.0);
  const double r = support_radius(grid, f.values, 1e-14);
  CHECK(r < 0.5);
  CHECK(r > 0.4);
}
