#pragma once

#include <functional>

#include "hk/grid.hpp"
#include "hk/specfunc.hpp"

namespace hk {

// Discrete spherical Fourier coefficients over the dominant weights with
// ||mu|| <= cutoff.  Convention: fhat(mu) = (f, psi_mu) for the normalized
// invariant measure, so f = sum_mu d(mu) fhat(mu) psi_mu.
struct SphericalCoefficients {
  std::vector<DominantWeight> weights;
  std::vector<cplx> coeffs;
  double cutoff = 0.0;
};

SphericalCoefficients forward_transform(const SymmetricSpaceData& data, const ShiftOperator& D,
                                        const TorusGrid& grid, const std::vector<cplx>& values,
                                        double cutoff);

// Synthesis u(x_j) = sum_mu d(mu) fhat(mu) psi_mu(x_j) on all grid nodes.
// Wall-adjacent nodes use a cancellation-free evaluation (Gegenbauer
// recurrence for spheres; the factored Weyl-denominator form for complex
// groups), so the result stays accurate where delta is tiny.
std::vector<cplx> inverse_transform(const SymmetricSpaceData& data, const ShiftOperator& D,
                                    const TorusGrid& grid, const SphericalCoefficients& coeffs);

// sum_mu d(mu) |fhat(mu)|^2 vs the normalized quadrature of |f|^2; returns
// the relative mismatch.
double plancherel_mismatch(const SymmetricSpaceData& data, const TorusGrid& grid,
                           const std::vector<cplx>& values, const SphericalCoefficients& coeffs);

// Holomorphic Paley-Wiener extension of the spherical transform of sampled
// f (support radius R) by the direct route: F(lambda) =
// Q_masked(f . sum_w D b^{w(lambda+rho)}) / (Z d(lambda)), with the
// Richardson rule near the zero set of d.
cplx pw_extend(const SymmetricSpaceData& data, const ShiftOperator& D, const TorusGrid& grid,
               const std::vector<cplx>& values, double support_R, const SpectralParameter& lambda);

// Route 2 state: h = D^* f synthesized on the grid (lambda independent).
struct AdjointData {
  std::vector<cplx> h;       // (D^* f)(x_j)
  double support_R = 0.0;
};
AdjointData adjoint_apply(const SymmetricSpaceData& data, const ShiftOperator& D,
                          const TorusGrid& grid, const std::vector<cplx>& values,
                          double support_R);

// d(lambda) F(lambda) = (1/Z) Q_masked(h . sum_w b^{w(lambda+rho)}).
cplx pw_extend_adjoint(const SymmetricSpaceData& data, const TorusGrid& grid,
                       const AdjointData& adj, const SpectralParameter& lambda);

// Least-squares slope of log(max_dir |F(i r u)| (1+r)^4) over the given
// radii; estimates the exponential type of F.
double exponential_type(const SymmetricSpaceData& data,
                        const std::function<cplx(const SpectralParameter&)>& F,
                        const std::vector<double>& radii);

// Verify W-shift symmetry of F at the sample parameters (max deviation).
double pw_symmetry_defect(const SymmetricSpaceData& data,
                          const std::function<cplx(const SpectralParameter&)>& F,
                          const std::vector<SpectralParameter>& samples);

// Sample a W-symmetric spectral function on the dominant lattice.
SphericalCoefficients sample_pw(const SymmetricSpaceData& data,
                                const std::function<cplx(const SpectralParameter&)>& F,
                                double cutoff);

// Both halves of the small-support integral representation (rank one) at one
// grid node: delta.f == D(integral) and f == (1/|W|) integral against
// phi_lambda d(lambda).  The sigma integral runs over [-S, S] with midpoint
// step ds.
struct IntRepResult {
  cplx delta_f_direct, delta_f_formula;
  cplx f_direct, f_formula;
};
IntRepResult integral_representation(const SymmetricSpaceData& data, const ShiftOperator& D,
                                     const TorusGrid& grid, const std::vector<cplx>& values,
                                     double support_R, long long node, double S, double ds);

}  // namespace hk
