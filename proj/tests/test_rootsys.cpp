#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hk/presets.hpp"
#include "hk/rootsys.hpp"

using namespace hk;

TEST_CASE("build_space sphere presets") {
  for (auto [name, m, dim] : {std::tuple{"s3", 1, 3}, {"s5", 2, 5}, {"s7", 3, 7}}) {
    auto data = build_space(preset_config(name));
    CHECK(data.rank == 1);
    CHECK(data.m == m);
    CHECK(data.dim_space == dim);
    CHECK(data.positive_roots.size() == 1);
    CHECK(data.rho[0] == doctest::Approx(m).epsilon(1e-14));
    CHECK(data.weyl.size() == 2);  // {+1, -1}
    CHECK(data.r_small == doctest::Approx(3.14159265358979324 / 2));
    // Gamma-periodicity: lattice_basis^T period_basis = 2 pi I
    CHECK((data.lattice_basis.transpose() * data.period_basis -
           2.0 * 3.14159265358979324 * Mat::Identity(1, 1))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("build_space complex group presets") {
  auto su2 = build_space(preset_config("su2"));
  CHECK(su2.rank == 1);
  CHECK(su2.dim_space == 3);
  CHECK(su2.weyl.size() == 2);
  auto su3 = build_space(preset_config("su3"));
  CHECK(su3.rank == 2);
  CHECK(su3.dim_space == 8);  // Table: SU(3), d = (n-1)(n+1) = 8
  CHECK(su3.positive_roots.size() == 3);
  CHECK(su3.weyl.size() == 6);
  // long roots scaled to norm^2 = 2
  for (const auto& a : su3.positive_roots) CHECK(a.squaredNorm() == doctest::Approx(2.0).epsilon(1e-12));
  // rho_alpha = 1 on all three positive roots -> rho dominant
  CHECK(dominant_spherical(SpectralParameter::real(su3.rho), su3));
}

TEST_CASE("weyl group orders by brute-force closure") {
  auto su3 = build_space(preset_config("su3"));
  CHECK(weyl_group(su3.simple_roots).size() == 6);  // A2

  SpaceConfig b2;
  b2.family = Family::ComplexGroup;
  b2.m = 1;
  b2.root_type = RootType::B;
  b2.rank = 2;
  b2.grid_size = 16;
  auto datb2 = build_space(b2);
  CHECK(datb2.weyl.size() == 8);  // B2

  SpaceConfig c3;
  c3.family = Family::ComplexGroup;
  c3.m = 1;
  c3.root_type = RootType::C;
  c3.rank = 3;
  c3.grid_size = 8;
  auto datc3 = build_space(c3);
  CHECK(datc3.weyl.size() == 48);  // C3

  SpaceConfig d4;
  d4.family = Family::ComplexGroup;
  d4.m = 1;
  d4.root_type = RootType::D;
  d4.rank = 4;
  d4.grid_size = 8;
  auto datd4 = build_space(d4);
  CHECK(datd4.weyl.size() == 192);  // D4: 2^3 * 4!
}

TEST_CASE("lambda_alpha basics") {
  auto su3 = build_space(preset_config("su3"));
  SpectralParameter rho = SpectralParameter::real(su3.rho);
  for (const auto& a : su3.simple_roots)
    CHECK(std::abs(lambda_alpha(rho, a) - cplx(1.0)) < 1e-12);  // rho_alpha = m = 1
  // highest root = sum of the two simple roots: rho_alpha = 2
  Vec highest = su3.simple_roots[0] + su3.simple_roots[1];
  CHECK(std::abs(lambda_alpha(rho, highest) - cplx(2.0)) < 1e-12);
  // lambda = alpha -> 1
  SpectralParameter a0 = SpectralParameter::real(su3.positive_roots[0]);
  CHECK(std::abs(lambda_alpha(a0, su3.positive_roots[0]) - cplx(1.0)) < 1e-12);
}

TEST_CASE("dominant_spherical rank one") {
  auto s3 = build_space(preset_config("s3"));
  Vec v(1);
  v << 0.0;
  CHECK(dominant_spherical(SpectralParameter::real(v), s3));
  v << 3.0;
  CHECK(dominant_spherical(SpectralParameter::real(v), s3));
  v << -1.0;
  CHECK(!dominant_spherical(SpectralParameter::real(v), s3));
  v << 0.5;
  CHECK(!dominant_spherical(SpectralParameter::real(v), s3));
  CVec c(1);
  c << cplx(1.0, 0.5);
  CHECK_THROWS_AS(dominant_spherical(SpectralParameter(c), s3), DomainError);
}

TEST_CASE("enumerate_dominant") {
  auto s3 = build_space(preset_config("s3"));
  auto list = enumerate_dominant(s3, 3.0);
  REQUIRE(list.size() == 4);  // {0,1,2,3}
  for (int i = 0; i < 4; ++i) CHECK(list[i].lattice_coords[0] == i);

  auto su3 = build_space(preset_config("su3"));
  auto at_zero = enumerate_dominant(su3, 0.0);
  REQUIRE(at_zero.size() == 1);
  CHECK(at_zero[0].norm == 0.0);

  auto below_rho = enumerate_dominant(su3, su3.rho.norm());
  // {0} plus the Lambda-basis weights below ||rho||; all dominant, no W-duplicates.
  for (const auto& dw : below_rho) {
    CHECK(dominant_spherical(dw.spectral(), su3));
    CHECK(dw.norm <= su3.rho.norm() + 1e-9);
  }
  // W-fundamental: no two entries on the same orbit
  for (std::size_t i = 0; i < below_rho.size(); ++i)
    for (std::size_t j = i + 1; j < below_rho.size(); ++j) {
      bool same_orbit = false;
      for (const auto& w : su3.weyl)
        if ((w * below_rho[i].coords - below_rho[j].coords).norm() < 1e-9) same_orbit = true;
      CHECK(!same_orbit);
    }
}

TEST_CASE("weyl_orbit_sum") {
  auto s3 = build_space(preset_config("s3"));
  Vec theta(1);
  theta << 0.7;
  Vec zero = Vec::Zero(1);
  CHECK(std::abs(weyl_orbit_sum(s3, SpectralParameter::real(zero), theta) - cplx(2.0)) < 1e-14);
  // lambda stored coordinate nu -> 2 cos(nu theta)
  Vec nu(1);
  nu << 2.5;
  CHECK(std::abs(weyl_orbit_sum(s3, SpectralParameter::real(nu), theta) -
                 cplx(2.0 * std::cos(2.5 * 0.7))) < 1e-13);

  auto su3 = build_space(preset_config("su3"));
  Vec zero2 = Vec::Zero(2);
  CHECK(std::abs(weyl_orbit_sum(su3, SpectralParameter::real(su3.rho), zero2) - cplx(6.0)) < 1e-13);
  // W-invariance of the orbit sum
  Vec th2(2);
  th2 << 0.31, -0.57;
  CVec lam(2);
  lam << cplx(1.3, 0.2), cplx(-0.4, 0.7);
  cplx base = weyl_orbit_sum(su3, SpectralParameter(lam), th2);
  for (const auto& w : su3.weyl) {
    SpectralParameter wl(w.cast<cplx>() * lam);
    CHECK(std::abs(weyl_orbit_sum(su3, wl, th2) - base) < 1e-12);
  }
}

TEST_CASE("weyl permutes roots with lambda_{w alpha}(w lambda) = lambda_alpha(lambda)") {
  auto su3 = build_space(preset_config("su3"));
  CVec lam(2);
  lam << cplx(0.9, -0.3), cplx(1.7, 0.1);
  SpectralParameter sp(lam);
  for (const auto& w : su3.weyl)
    for (const auto& a : su3.positive_roots) {
      Vec wa = w * a;
      bool is_root = false;
      for (const auto& b : su3.positive_roots)
        if ((wa - b).norm() < 1e-10 || (wa + b).norm() < 1e-10) is_root = true;
      CHECK(is_root);
      SpectralParameter wl(w.cast<cplx>() * lam);
      CHECK(std::abs(lambda_alpha(wl, wa) - lambda_alpha(sp, a)) < 1e-12);
    }
}

TEST_CASE("config errors name the offending field") {
  SpaceConfig bad;
  bad.family = Family::ComplexGroup;
  bad.m = 2;
  CHECK_THROWS_AS(build_space(bad), ConfigError);
  SpaceConfig bad2;
  bad2.family = Family::SphereOdd;
  bad2.m = 0;
  CHECK_THROWS_AS(build_space(bad2), ConfigError);
  CHECK_THROWS_AS(preset_config("s4"), ConfigError);
}

TEST_CASE("json config parsing") {
  auto cfg = parse_config_json(R"({"family":"complex_group","m":1,"root_type":"A","rank":2,"grid_size":64})");
  CHECK(cfg.family == Family::ComplexGroup);
  CHECK(cfg.rank == 2);
  CHECK(cfg.grid_size == 64);
  CHECK_THROWS_AS(parse_config_json("{oops"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"family":"torus"})"), ConfigError);
}
