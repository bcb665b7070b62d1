#pragma once

#include <functional>

#include "hk/common.hpp"

namespace hk {

// A scalar function on Euclidean b = R^n.
using EuclideanFn = std::function<cplx(const Vec&)>;

// Mean value (M^r g)(X) over the Euclidean sphere S_r(X).
// n = 1: (g(X+r) + g(X-r))/2; n = 2: 256-point circle rule; n = 3: product
// quadrature (Gauss-Legendre in the polar angle times a uniform azimuth).
cplx euclidean_mean_value(const EuclideanFn& g, int n, const Vec& X, double r);

// Solution v(X, t) of the Euclidean wave equation v_tt = Delta v with
// v(., 0) = 0 and v_t(., 0) = g, by the classical mean-value formulas:
//   n = 1: d'Alembert v = (1/2) int_{X-t}^{X+t} g,
//   n = 2: Poisson v = int_0^t r (M^r g)(X) / sqrt(t^2 - r^2) dr,
//   n = 3: Kirchhoff v = t (M^t g)(X).
// The constants are pinned by v_t(X, 0) = g(X) and checked against a Fourier
// oracle in the tests.
cplx solve_euclidean(const EuclideanFn& g, int n, const Vec& X, double t);

}  // namespace hk
