#include "hk/grid.hpp"

#include <cmath>

#include "hk/specfunc.hpp"

namespace hk {

namespace {

constexpr long double lpi = 3.14159265358979323846264338327950288L;

// exp(s * i * pi * r * (j + off) / g) for j = 0..g-1, computed by a phase
// recurrence with periodic refresh to keep long-double accuracy.
void phase_row(int s, int r, int g, double off, std::vector<lcplx>& out) {
  out.resize(g);
  const long double step_arg = s * lpi * r / g;
  const lcplx step(std::cos(step_arg), std::sin(step_arg));
  lcplx cur;
  for (int j = 0; j < g; ++j) {
    if (j % 128 == 0) {
      const long double arg = s * lpi * r * (j + static_cast<long double>(off)) / g;
      cur = lcplx(std::cos(arg), std::sin(arg));
    }
    out[j] = cur;
    cur *= step;
  }
}

}  // namespace

TorusGrid make_grid(const SymmetricSpaceData& data, int g) {
  if (g < 2 || g % 2 != 0) throw ConfigError("grid_size must be even and >= 2");
  TorusGrid grid;
  grid.rank = data.rank;
  grid.g = g;
  grid.count = 1;
  for (int i = 0; i < data.rank; ++i) {
    grid.count *= g;
    if (grid.count > (1LL << 31)) throw ConfigError("grid_size too large for the rank");
  }
  grid.offsets = data.grid_offsets;
  grid.delta_vals.resize(grid.count);
  grid.dist_vals.resize(grid.count);
  parallel_for_each(static_cast<std::size_t>(grid.count), [&](std::size_t idx) {
    const Vec x = grid.node_x(static_cast<long long>(idx));
    grid.delta_vals[idx] = delta_density(data, x);
    grid.dist_vals[idx] = torus_distance(data, torus_theta(data, x));
  });
  return grid;
}

RadialFunction make_bump(const SymmetricSpaceData& data, const TorusGrid& grid, double eps,
                         double sharpness) {
  if (eps <= 0.0) throw DomainError("bump: eps must be > 0");
  if (sharpness <= 0.0) throw DomainError("bump: sharpness must be > 0");
  RadialFunction f;
  f.support_radius = eps;
  f.values.resize(grid.count);
  for (long long i = 0; i < grid.count; ++i) {
    const double u = grid.dist_vals[i] / eps;
    f.values[i] = u < 1.0 ? std::exp(sharpness - sharpness / (1.0 - u * u)) : 0.0;
  }
  return f;
}

cplx quadrature_mean(const TorusGrid& grid, const std::vector<cplx>& values) {
  lcplx acc = 0.0;
  for (const cplx& v : values) acc += lcplx(v.real(), v.imag());
  acc /= static_cast<long double>(grid.count);
  return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

std::vector<lcplx> grid_dft(const TorusGrid& grid, const std::vector<cplx>& values) {
  const int g = grid.g;
  const int n = grid.rank;
  if (static_cast<long long>(values.size()) != grid.count)
    throw DomainError("grid_dft: value count does not match the grid");
  std::vector<lcplx> cur(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) cur[i] = lcplx(values[i].real(), values[i].imag());
  // Process axes from the last (fastest-varying) to the first.  Invariant:
  // axes a+1..n-1 are key axes of extent 2g (trailing), axes 0..a are node
  // axes of extent g (leading).
  for (int a = n - 1; a >= 0; --a) {
    long long lead = 1;
    for (int i = 0; i < a; ++i) lead *= g;
    long long trail = 1;
    for (int i = a + 1; i < n; ++i) trail *= 2LL * g;
    std::vector<lcplx> next(lead * (2LL * g) * trail);
    const double off = grid.offsets[a];
    parallel_for_each(static_cast<std::size_t>(2 * g), [&](std::size_t r) {
      std::vector<lcplx> ph;
      phase_row(-1, static_cast<int>(r), g, off, ph);
      for (long long L = 0; L < lead; ++L)
        for (long long T = 0; T < trail; ++T) {
          lcplx acc = 0.0;
          const lcplx* src = cur.data() + (L * g) * trail + T;
          for (int j = 0; j < g; ++j) acc += src[static_cast<long long>(j) * trail] * ph[j];
          next[(L * (2LL * g) + r) * trail + T] = acc;
        }
    });
    cur = std::move(next);
  }
  const long double inv = 1.0L / static_cast<long double>(grid.count);
  for (auto& v : cur) v *= inv;
  return cur;
}

lcplx dft_at(const TorusGrid& grid, const std::vector<lcplx>& base, const std::vector<int>& key) {
  const int g = grid.g;
  const int n = grid.rank;
  long long idx = 0;
  long double fold_phase = 0.0L;  // units of 2 pi
  for (int a = 0; a < n; ++a) {
    int r = key[a] % (2 * g);
    if (r < 0) r += 2 * g;
    const int fold = (key[a] - r) / (2 * g);
    fold_phase -= fold * static_cast<long double>(grid.offsets[a]);
    idx = idx * (2LL * g) + r;
  }
  const long double arg = 2.0L * lpi * fold_phase;
  return base[idx] * lcplx(std::cos(arg), std::sin(arg));
}

std::vector<cplx> grid_synth(const TorusGrid& grid,
                             const std::map<std::vector<int>, lcplx>& coeffs) {
  const int g = grid.g;
  const int n = grid.rank;
  // Fold every key into the base box [0,2g)^n, accumulating the phases.
  long long box = 1;
  for (int i = 0; i < n; ++i) box *= 2LL * g;
  std::vector<lcplx> folded(box, lcplx(0.0L, 0.0L));
  for (const auto& [key, c] : coeffs) {
    long long idx = 0;
    long double fold_phase = 0.0L;
    for (int a = 0; a < n; ++a) {
      int r = key[a] % (2 * g);
      if (r < 0) r += 2 * g;
      const int fold = (key[a] - r) / (2 * g);
      fold_phase += fold * static_cast<long double>(grid.offsets[a]);
      idx = idx * (2LL * g) + r;
    }
    const long double arg = 2.0L * lpi * fold_phase;
    folded[idx] += c * lcplx(std::cos(arg), std::sin(arg));
  }
  // Transform key axes to node axes, last axis first, mirroring grid_dft.
  std::vector<lcplx> cur = std::move(folded);
  for (int a = n - 1; a >= 0; --a) {
    long long lead = 1;
    for (int i = 0; i < a; ++i) lead *= 2LL * g;
    long long trail = 1;
    for (int i = a + 1; i < n; ++i) trail *= g;
    std::vector<lcplx> next(lead * g * trail);
    const double off = grid.offsets[a];
    parallel_for_each(static_cast<std::size_t>(g), [&](std::size_t j) {
      // node j on axis a: sum over the 2g keys with phase exp(+i pi r x_j)
      const long double x = (static_cast<long double>(j) + static_cast<long double>(off)) / g;
      // exp(i pi r x) over r by a phase recurrence with periodic refresh
      std::vector<lcplx> ph(2 * g);
      const lcplx step(std::cos(lpi * x), std::sin(lpi * x));
      lcplx run;
      for (int r = 0; r < 2 * g; ++r) {
        if (r % 128 == 0) {
          const long double arg = lpi * r * x;
          run = lcplx(std::cos(arg), std::sin(arg));
        }
        ph[r] = run;
        run *= step;
      }
      for (long long L = 0; L < lead; ++L)
        for (long long T = 0; T < trail; ++T) {
          lcplx acc = 0.0;
          const lcplx* src = cur.data() + (L * (2LL * g)) * trail + T;
          for (int r = 0; r < 2 * g; ++r) acc += src[static_cast<long long>(r) * trail] * ph[r];
          next[(L * g + static_cast<long long>(j)) * trail + T] = acc;
        }
    });
    cur = std::move(next);
  }
  std::vector<cplx> out(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i)
    out[i] = cplx(static_cast<double>(cur[i].real()), static_cast<double>(cur[i].imag()));
  return out;
}

double support_radius(const TorusGrid& grid, const std::vector<cplx>& values, double tol_rel) {
  double peak = 0.0;
  for (const cplx& v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double radius = 0.0;
  for (long long i = 0; i < grid.count; ++i)
    if (std::abs(values[i]) > tol_rel * peak) radius = std::max(radius, grid.dist_vals[i]);
  return radius;
}

double grid_step(const SymmetricSpaceData& data, const TorusGrid& grid) {
  double h = 0.0;
  for (int a = 0; a < data.rank; ++a) h = std::max(h, data.period_basis.col(a).norm() / grid.g);
  return h;
}

}  // namespace hk
