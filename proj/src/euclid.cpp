#include "hk/euclid.hpp"

#include <cmath>

namespace hk {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Composite Simpson of h over [a, b] with an even panel count.
cplx simpson(const std::function<cplx(double)>& h, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double step = (b - a) / panels;
  lcplx acc = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const cplx v = h(a + i * step);
    acc += static_cast<long double>(w) * lcplx(v.real(), v.imag());
  }
  acc *= static_cast<long double>(step / 3.0);
  return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

}  // namespace

cplx euclidean_mean_value(const EuclideanFn& g, int n, const Vec& X, double r) {
  if (r < 0.0) throw DomainError("euclidean_mean_value: r must be >= 0");
  if (n == 1) {
    Vec p = X, m = X;
    p[0] += r;
    m[0] -= r;
    return 0.5 * (g(p) + g(m));
  }
  if (n == 2) {
    const int Q = 256;
    lcplx acc = 0.0;
    for (int q = 0; q < Q; ++q) {
      const double a = 2.0 * pi * (q + 0.5) / Q;
      Vec p = X;
      p[0] += r * std::cos(a);
      p[1] += r * std::sin(a);
      const cplx v = g(p);
      acc += lcplx(v.real(), v.imag());
    }
    acc /= static_cast<long double>(Q);
    return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  if (n == 3) {
    static std::vector<double> nodes, weights;
    if (nodes.empty()) gauss_legendre(48, nodes, weights);
    const int Q = 96;
    lcplx acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double c = nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int q = 0; q < Q; ++q) {
        const double a = 2.0 * pi * (q + 0.5) / Q;
        Vec p = X;
        p[0] += r * s * std::cos(a);
        p[1] += r * s * std::sin(a);
        p[2] += r * c;
        const cplx v = g(p);
        acc += static_cast<long double>(weights[i]) * lcplx(v.real(), v.imag());
      }
    }
    acc /= static_cast<long double>(2.0 * Q);  // GL weights sum to 2
    return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  throw DomainError("euclidean_mean_value: n must be 1, 2, or 3");
}

cplx solve_euclidean(const EuclideanFn& g, int n, const Vec& X, double t) {
  if (t == 0.0) return 0.0;
  if (n == 1) {
    return simpson([&](double s) {
             Vec p = X;
             p[0] += s;
             return g(p);
           },
                   -t, t, 512) *
           0.5;
  }
  if (n == 2) {
    // substitute r = t sin(phi) to remove the inverse square root
    return simpson([&](double phi) {
             return std::sin(phi) * euclidean_mean_value(g, 2, X, t * std::sin(phi));
           },
                   0.0, pi / 2.0, 64) *
           t;
  }
  if (n == 3) return t * euclidean_mean_value(g, 3, X, t);
  throw DomainError("solve_euclidean: n must be 1, 2, or 3");
}

}  // namespace hk
