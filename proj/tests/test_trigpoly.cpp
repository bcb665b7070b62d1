#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hk/presets.hpp"
#include "hk/trigpoly.hpp"

using namespace hk;

TEST_CASE("constant and character evaluation, rank one") {
  auto s3 = build_space(preset_config("s3"));
  auto one = TrigLaurentPoly::constant(1, cplx(3.0, -1.0));
  Vec x(1);
  x << 0.123;
  CHECK(std::abs(one.eval(x) - cplx(3.0, -1.0)) < 1e-15);

  // character of the basis weight lambda_1 = 2*omega_1: key (2) since keys
  // live on the half lattice.  For s3, b^lambda(theta) = e^{i*theta} with
  // stored coordinate 1, i.e. Gamma-coordinate x has theta = 2*pi*x.
  Vec mu(1);
  mu << 1.0;  // stored coordinate of the weight
  IVec lat = to_lattice_coords(s3, mu);
  auto chi = TrigLaurentPoly::lattice_character(lat);
  Vec theta = torus_theta(s3, x);
  CHECK(std::abs(chi.eval(x) - std::exp(cplx(0, theta[0]))) < 1e-13);
}

TEST_CASE("product is exact convolution") {
  // (e^{i pi k x} + 2)(e^{-i pi k x} - 1) = 1 - e^{i pi x} + 2 e^{-i pi x} - 2 + ...
  TrigLaurentPoly a(1), b(1);
  a.add_term({1}, cplx(1.0));
  a.add_term({0}, cplx(2.0));
  b.add_term({-1}, cplx(1.0));
  b.add_term({0}, cplx(-1.0));
  auto p = a * b;
  Vec x(1);
  x << 0.37;
  CHECK(std::abs(p.eval(x) - a.eval(x) * b.eval(x)) < 1e-14);
  CHECK(p.terms.size() == 3);  // keys {1}, {0}, {-1}; the two constants merge
  CHECK(std::abs(p.terms.at({0}) - cplx(-1.0)) < 1e-15);  // 1*1 + 2*(-1)
}

TEST_CASE("derivative multiplies by i * weight component") {
  auto su3 = build_space(preset_config("su3"));
  TrigLaurentPoly f(2);
  f.add_term({1, 0}, cplx(1.0));
  f.add_term({0, 2}, cplx(0.5, 0.5));
  auto dfdx = f.derivative(su3, 0);
  Vec x(2);
  x << 0.21, -0.33;
  // finite difference in the theta_1 direction (first real coordinate)
  const double h = 1e-6;
  Mat Pinv = su3.period_basis.inverse();
  Vec e1 = Vec::Zero(2);
  e1[0] = 1.0;
  Vec dx = Pinv * e1 * h;
  cplx fd = (f.eval(Vec(x + dx)) - f.eval(Vec(x - dx))) / (2.0 * h);
  CHECK(std::abs(dfdx.eval(x) - fd) < 1e-7);
}

TEST_CASE("eval agrees with eval_ld") {
  TrigLaurentPoly f(2);
  f.add_term({3, -1}, cplx(0.2, 0.9));
  f.add_term({-2, 4}, cplx(-1.1, 0.3));
  Vec x(2);
  x << 0.456, 0.789;
  lcplx v = f.eval_ld(x);
  CHECK(std::abs(f.eval(x) - cplx((double)v.real(), (double)v.imag())) < 1e-14);
}

TEST_CASE("prune and max_abs_coeff") {
  TrigLaurentPoly f(1);
  f.add_term({0}, cplx(1.0));
  f.add_term({5}, cplx(1e-18));
  f.prune(1e-15);
  CHECK(f.terms.size() == 1);
  CHECK(f.max_abs_coeff() == doctest::Approx(1.0));
}
