#pragma once

#include "hk/euclid.hpp"
#include "hk/fourier.hpp"

namespace hk {

// Cauchy problem for the modified wave equation on U/K with u(., 0) = 0 and
// u_t(., 0) = f, f a smooth K-invariant bump of support radius eps.
struct CauchyProblem {
  SymmetricSpaceData data;
  ShiftOperator D;
  TorusGrid grid;
  RadialFunction f;
  SphericalCoefficients fhat;
  double eps = 0.0;
  double cutoff = 0.0;
  std::vector<double> time_grid;

  // max |fhat| in the top 5% cutoff band relative to the peak; a level above
  // 1e-8 means the truncation tail is not resolved (warning, not an error).
  double tail_level = 0.0;
  bool tail_warning = false;

  // Paley-Wiener values F(sigma - rho) at the lattice points sigma with
  // d(sigma - rho) = 0 (rank one: sigma = 0..m-1), needed by the reduction
  // and contour routes.
  std::vector<cplx> low_pw;
};

CauchyProblem make_problem(const SymmetricSpaceData& data, const ShiftOperator& D, int grid_size,
                           double eps, double sharpness, double cutoff, int time_steps);

// Spectral route: uhat(mu, t) = fhat(mu) sin(||mu+rho|| t)/||mu+rho||,
// synthesized by inverse_transform.
RadialFunction solve_series(const CauchyProblem& problem, double t);

// Euclidean reduction route (rank one): the periodized Euclidean datum
// g(X) = sum_{sigma in Lambda} F(sigma-rho) e^{i sigma X} solves the
// problem through the d'Alembert formula, u = D(v)/delta evaluated in the
// rational (cancellation-free) form.
RadialFunction solve_reduction(const CauchyProblem& problem, double t);
std::vector<RadialFunction> solve_reduction(const CauchyProblem& problem,
                                            const std::vector<double>& ts);

// Contour route (rank one):
// delta u = -(i/2) e^{-gamma t} int [D Psi(p+i gamma, theta)/(p+i gamma)]
// e^{ipt} dp with Psi(z, theta) = 2 F(z-rho) cos(z theta), integrated on a
// symmetric midpoint p-grid.
RadialFunction solve_contour(const CauchyProblem& problem, double t, double gamma);

// Batch form: the Paley-Wiener table F(z - rho) on the contour and the
// per-node kernel sums are t-independent, so solving a whole trajectory
// costs little more than a single time step.
std::vector<RadialFunction> solve_contour(const CauchyProblem& problem,
                                          const std::vector<double>& ts, double gamma);

// The Euclidean datum of the reduction route (any rank): the table of
// lattice frequencies sigma with their Paley-Wiener values F(sigma - rho).
// Used to validate the rank-two reduction identity at probe points.
struct EuclideanDatum {
  std::vector<Vec> sigmas;
  std::vector<cplx> F;
  double covol = 1.0;
};
EuclideanDatum build_reduction_datum(const CauchyProblem& problem);

// g(Y) = sum F(sigma-rho) e^{i sigma Y}.
cplx eval_datum(const EuclideanDatum& datum, const Vec& Y);

// Spectral Euclidean wave solution sum F(sigma-rho)
// sin(||sigma|| t)/||sigma|| e^{i sigma Y}: the oracle for solve_euclidean
// applied to eval_datum.
cplx eval_datum_wave(const EuclideanDatum& datum, const Vec& Y, double t);

struct HuygensEntry {
  double t = 0.0;
  double cone = 0.0;   // sup_{d > t+eps+2h} |u| / max|u|
  double shell = 0.0;  // sup_{d < t-eps-2h} |delta u| / max|delta u|
};
struct HuygensReport {
  std::vector<HuygensEntry> entries;
  double max_cone = 0.0;
  double max_shell = 0.0;
  bool finite_speed = false;     // max_cone <= tol
  bool strong_huygens = false;   // max_shell <= tol
  bool huygens_asserted = false; // strong Huygens is only claimed in odd dim
};
HuygensReport huygens_report(const CauchyProblem& problem,
                             const std::vector<RadialFunction>& trajectory, double tol = 1e-6);

struct ExpCheckEntry {
  double gamma = 0.0;
  double c_emp = 0.0;  // sup over nodes of |delta u_gamma| e^{gamma (t-d-eps)}
};
std::vector<ExpCheckEntry> exponential_estimate_check(const CauchyProblem& problem, double t,
                                                      const std::vector<double>& gammas);

// Max grid deviation of delta(theta) u(theta, t) from the S^3 closed form
// -(1/4) sin(theta) (g(theta+t) - g(theta-t)).
double closed_form_s3_residual(const CauchyProblem& problem, const RadialFunction& u, double t);

}  // namespace hk
