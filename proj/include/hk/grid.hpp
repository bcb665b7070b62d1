#pragma once

#include <map>

#include "hk/rootsys.hpp"

namespace hk {

// Regular product grid on the torus b/Gamma in Gamma coordinates: node
// (j_0,...,j_{n-1}) sits at x_i = (j_i + offset_i)/g, row-major linear index.
// The offsets are chosen by build_space so that no node lies on a wall.
struct TorusGrid {
  int rank = 1;
  int g = 0;                       // nodes per axis
  long long count = 0;             // g^rank
  Vec offsets;                     // copied from the space data
  std::vector<double> delta_vals;  // delta at each node
  std::vector<double> dist_vals;   // geodesic distance of each node to the origin

  Vec node_x(long long idx) const {
    Vec x(rank);
    for (int a = rank - 1; a >= 0; --a) {
      x[a] = (static_cast<double>(idx % g) + offsets[a]) / g;
      idx /= g;
    }
    return x;
  }
};

TorusGrid make_grid(const SymmetricSpaceData& data, int g);

// Samples of a K-invariant function on a TorusGrid with the declared support
// radius used by masked quadratures and support checks.
struct RadialFunction {
  std::vector<cplx> values;
  double support_radius = 0.0;
};

// Smooth bump exp(sharpness - sharpness/(1 - (d/eps)^2)) for d < eps, 0 else.
RadialFunction make_bump(const SymmetricSpaceData& data, const TorusGrid& grid, double eps,
                         double sharpness);

// Mean over the grid nodes; approximates the normalized integral over the
// torus in Gamma coordinates (exact for trig polynomials below Nyquist).
cplx quadrature_mean(const TorusGrid& grid, const std::vector<cplx>& values);

// Base discrete Fourier box: entry at row-major multi-index r in [0,2g)^n is
// (1/count) sum_j values_j exp(-i pi r . x_j).  Together with dft_at this
// gives Q(f b^{-key/2}) for every half-lattice key (folding by 2g per axis
// only multiplies by the constant phase exp(-2 pi i fold . offsets)).
std::vector<lcplx> grid_dft(const TorusGrid& grid, const std::vector<cplx>& values);

lcplx dft_at(const TorusGrid& grid, const std::vector<lcplx>& base, const std::vector<int>& key);

// Synthesis u_j = sum_k coeffs[k] exp(+i pi k . x_j) on all grid nodes.
std::vector<cplx> grid_synth(const TorusGrid& grid,
                             const std::map<std::vector<int>, lcplx>& coeffs);

// Largest node distance with |values| > tol_rel * max|values| (0 if none).
double support_radius(const TorusGrid& grid, const std::vector<cplx>& values, double tol_rel);

// Longest grid step measured in b (theta) coordinates.
double grid_step(const SymmetricSpaceData& data, const TorusGrid& grid);

}  // namespace hk
