#pragma once

#include <optional>
#include <utility>

#include "hk/trigpoly.hpp"

namespace hk {

// ---------------------------------------------------------------- types ----

// D = normalization * sum_terms coeff(H) * d^beta (beta a multi-index over
// the orthonormal coordinates of b).
struct ShiftTerm {
  TrigLaurentPoly coeff;
  std::vector<int> deriv;
  int order() const {
    int s = 0;
    for (int d : deriv) s += d;
    return s;
  }
};

struct ShiftOperator {
  int dim = 1;
  std::vector<ShiftTerm> terms;
  cplx normalization = 1.0;
};

struct CValue {
  cplx value = 0.0;
  bool pole = false;
};

struct VretareResult {
  double residual = 0.0;
  bool skipped = false;
  std::string reason;
};

// ------------------------------------------------------------ operations ---

// Harish-Chandra c-function by the closed product formula,
// c(lambda) = prod_{alpha>0} prod_{k=0}^{m-1} (rho_alpha + k)/(lambda_alpha + k).
CValue c_function(const SymmetricSpaceData& data, const SpectralParameter& lambda);

// Dimension polynomial d(lambda) =
// prod_{alpha>0} prod_{k=0}^{m-1} (k^2 - (lambda+rho)_alpha^2)/(k^2 - rho_alpha^2).
cplx dimension(const SymmetricSpaceData& data, const SpectralParameter& lambda);

// d(lambda) together with a conditioning scale used to detect proximity to
// the zero set of d (|d| < 1e-7 * scale means "near a zero").
std::pair<cplx, double> dimension_with_scale(const SymmetricSpaceData& data,
                                             const SpectralParameter& lambda);

// |d(mu) - c(-rho) / (c(mu+rho) c(-mu-rho))|.
VretareResult vretare_check(const SymmetricSpaceData& data, const SpectralParameter& mu);

// The shift operator D with its normalization pinned by the psi_0 == 1 probe.
ShiftOperator build_shift_operator(const SymmetricSpaceData& data);

// The rank-one sphere operator E^m, E = (1/sin) d/dtheta, in rational form
// num(theta)/sin(theta)^sinpow d^order; the stored ShiftOperator equals
// sin^{2m} times this.  Shares the normalization of build_shift_operator.
// Used where D(.)/delta must be evaluated without cancellation near walls.
struct SphereRationalTerm {
  TrigLaurentPoly num;
  int sinpow = 0;
  int order = 0;
};
std::vector<SphereRationalTerm> sphere_rational_terms(const SymmetricSpaceData& data);

// Formal transpose D^*: (c(H) d^beta)^* = (-1)^{|beta|} d^beta o c(H),
// expanded by the Leibniz rule into ShiftOperator form.
ShiftOperator adjoint_shift(const SymmetricSpaceData& data, const ShiftOperator& D);

// Exact symbolic polynomial p with D b^lambda = p(lambda, H) b^lambda.
TrigLaurentPoly apply_shift_to_exponential(const SymmetricSpaceData& data, const ShiftOperator& D,
                                           const SpectralParameter& lambda);

// sum_w D b^{w lambda} as an exact trig-Laurent polynomial; requires lambda
// to lie on the half lattice (1/2)Lambda (throws DomainError otherwise).
TrigLaurentPoly shift_orbit_poly(const SymmetricSpaceData& data, const ShiftOperator& D,
                                 const SpectralParameter& lambda);

// sum_w (D b^{w lambda})(x) evaluated numerically at a torus point x
// (Gamma coordinates, possibly complex), in extended precision.
lcplx shift_orbit_value(const SymmetricSpaceData& data, const ShiftOperator& D,
                        const SpectralParameter& lambda, const CVec& x);

// delta(exp H) = prod_{alpha>0} sin(alpha(theta))^{2m} at Gamma coords x.
lcplx delta_density(const SymmetricSpaceData& data, const CVec& x);
double delta_density(const SymmetricSpaceData& data, const Vec& x);

// psi_lambda(exp H) via the closed D-formula, with the Richardson rule near
// zeros of d and wall detection.  x in Gamma coordinates.
cplx spherical_function(const SymmetricSpaceData& data, const ShiftOperator& D,
                        const SpectralParameter& lambda, const CVec& x);
cplx spherical_function(const SymmetricSpaceData& data, const ShiftOperator& D,
                        const SpectralParameter& lambda, const Vec& x);

// Classical oracle: Gegenbauer recurrence (SphereOdd) or normalized Weyl
// character (ComplexGroup).  mu must be in Lambda+.
cplx spherical_oracle(const SymmetricSpaceData& data, const SpectralParameter& mu, const Vec& x);

// Weyl dimension formula (ComplexGroup): prod <mu+rho,alpha> / <rho,alpha>.
double weyl_dimension(const SymmetricSpaceData& data, const SpectralParameter& mu);

// Rank-one restriction to the noncompact dual: psi_lambda at H = i t.
cplx noncompact_restriction(const SymmetricSpaceData& data, const ShiftOperator& D,
                            const SpectralParameter& lambda, double t);

// Max over interior grid points of |Delta_rad psi_mu + <mu+2 rho, mu> psi_mu|
// with second-order central finite differences at grid size g per dimension.
double eigen_residual(const SymmetricSpaceData& data, const ShiftOperator& D,
                      const SpectralParameter& mu, int grid_size);

}  // namespace hk
