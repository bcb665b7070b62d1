#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hk/euclid.hpp"
#include "hk/presets.hpp"
#include "hk/wave.hpp"

using namespace hk;

namespace {

SymmetricSpaceData space(const std::string& name, int g) {
  return build_space(preset_config(name, g));
}

// shared across the s3 cases (building the problem dominates the test time)
const CauchyProblem& s3_problem() {
  static const CauchyProblem pb = [] {
    auto data = space("s3", 512);
    auto D = build_shift_operator(data);
    return make_problem(data, D, 512, 0.5, 3.0, 300.0, 4);
  }();
  return pb;
}

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

}  // namespace

TEST_CASE("s3: three routes agree and closed form holds") {
  const auto& pb = s3_problem();
  CHECK(!pb.tail_warning);

  const double t = 0.5;
  auto u_series = solve_series(pb, t);
  auto u_red = solve_reduction(pb, t);
  const double peak = peak_abs(u_series.values);
  CHECK(peak > 1e-3);

  // series and reduction act on the same finite coefficient table, so they
  // agree to rounding, independent of the spectral truncation
  CHECK(max_diff(u_series.values, u_red.values) < 1e-8 * peak);

  auto u_c0 = solve_contour(pb, t, 0.0);
  CHECK(max_diff(u_series.values, u_c0.values) < 1e-6 * peak);

  // gamma independence of the contour route
  auto u_c2 = solve_contour(pb, t, 2.0);
  CHECK(max_diff(u_c0.values, u_c2.values) < 5e-6 * peak);

  CHECK(closed_form_s3_residual(pb, u_series, t) < 1e-8 * peak);
}

TEST_CASE("s5: series vs reduction vs contour") {
  auto data = space("s5", 512);
  auto D = build_shift_operator(data);
  auto pb = make_problem(data, D, 512, 0.5, 3.0, 300.0, 4);

  const double t = 0.6;
  auto u_series = solve_series(pb, t);
  auto u_red = solve_reduction(pb, t);
  const double peak = peak_abs(u_series.values);
  CHECK(peak > 1e-3);
  CHECK(max_diff(u_series.values, u_red.values) < 1e-7 * peak);

  // the contour route integrates the true (non-truncated) transform, so the
  // two solutions differ at the spectral-truncation level
  auto u_c = solve_contour(pb, t, 1.0);
  CHECK(max_diff(u_series.values, u_c.values) < 5e-5 * peak);
}

TEST_CASE("su2: series vs reduction") {
  auto data = space("su2", 256);
  auto D = build_shift_operator(data);
  auto pb = make_problem(data, D, 256, 0.5, 3.0, 200.0, 4);

  const double t = 0.4;
  auto u_series = solve_series(pb, t);
  auto u_red = solve_reduction(pb, t);
  const double peak = peak_abs(u_series.values);
  CHECK(peak > 1e-4);
  CHECK(max_diff(u_series.values, u_red.values) < 1e-7 * peak);
}

TEST_CASE("initial conditions: u(0) = 0 and u_t(0) = f") {
  const auto& pb = s3_problem();

  auto u0 = solve_series(pb, 0.0);
  CHECK(peak_abs(u0.values) < 1e-12);

  const double h = 1e-4;
  auto uh = solve_series(pb, h);
  double worst = 0.0;
  for (long long j = 0; j < pb.grid.count; ++j)
    worst = std::max(worst, std::abs(uh.values[j] / h - pb.f.values[j]));
  CHECK(worst < 2e-4);
}

TEST_CASE("huygens report on s3") {
  const auto& pb = s3_problem();

  std::vector<RadialFunction> traj;
  for (double t : pb.time_grid) traj.push_back(solve_series(pb, t));
  auto rep = huygens_report(pb, traj, 1e-5);
  CHECK(rep.entries.size() == pb.time_grid.size());
  CHECK(rep.finite_speed);
  CHECK(rep.strong_huygens);
  CHECK(rep.huygens_asserted);
}

TEST_CASE("exponential estimate sweep stays bounded (s3)") {
  const auto& pb = s3_problem();

  auto entries = exponential_estimate_check(pb, 0.6, {0.0, 1.0, 2.0});
  REQUIRE(entries.size() == 3);
  const double base = entries[0].c_emp;
  CHECK(base > 0.0);
  for (const auto& e : entries) {
    CHECK(e.c_emp < 10.0 * base);
    CHECK(e.c_emp > 0.1 * base);
  }

  CHECK_THROWS_AS((void)solve_contour(pb, 0.6, 1e4), RangeError);
}

TEST_CASE("tail warning and rank guards") {
  auto data = space("s3", 128);
  auto D = build_shift_operator(data);
  auto pb = make_problem(data, D, 128, 0.5, 3.0, 20.0, 2);
  CHECK(pb.tail_warning);

  auto su3 = space("su3", 32);
  auto Dsu3 = build_shift_operator(su3);
  auto pb3 = make_problem(su3, Dsu3, 32, 0.2, 3.0, 8.0, 2);
  CHECK_THROWS_AS((void)solve_reduction(pb3, 0.1), DomainError);
  CHECK_THROWS_AS((void)solve_contour(pb3, 0.1, 0.0), DomainError);
}

TEST_CASE("su3: Euclidean datum identities at probe points") {
  auto data = space("su3", 64);
  auto D = build_shift_operator(data);
  auto pb = make_problem(data, D, 64, 0.25, 3.0, 16.0, 2);

  auto datum = build_reduction_datum(pb);
  CHECK(datum.sigmas.size() > 10);

  // The flat d'Alembert solver applied to the synthesized datum must match
  // the spectral oracle sin(||sigma|| t)/||sigma||; this validates the
  // Euclidean leg of the rank-two reduction identity on the datum itself.
  EuclideanFn g = [&](const Vec& Y) { return eval_datum(datum, Y); };
  const double t = 0.2;
  std::vector<Vec> probes;
  for (double a : {0.05, 0.21, 0.4}) {
    Vec Y(2);
    Y << a, 0.5 * a - 0.03;
    probes.push_back(Y);
  }
  for (const Vec& Y : probes) {
    const cplx direct = solve_euclidean(g, 2, Y, t);
    const cplx oracle = eval_datum_wave(datum, Y, t);
    CHECK(std::abs(direct - oracle) < 1e-4 * (1.0 + std::abs(oracle)));
  }
}
