#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hk/common.hpp"

namespace hk {

enum class Family { SphereOdd, ComplexGroup };
enum class RootType { A, B, C, D };

// Configuration of one even-multiplicity compact symmetric space.
struct SpaceConfig {
  Family family = Family::SphereOdd;
  int m = 1;                          // SphereOdd: half multiplicity (m_alpha = 2m). ComplexGroup: must be 1.
  RootType root_type = RootType::A;   // ComplexGroup only
  int rank = 1;                       // ComplexGroup only; SphereOdd forces 1
  int grid_size = 512;                // per torus dimension
  std::string preset_name;            // optional, informational
};

// A complex spectral parameter lambda in b*_C.
//
// Coordinate convention: coords are taken in a fixed real orthonormal basis of
// i b*, so that characters are b^lambda(exp H) = exp(i lambda . theta_H) and
// dominant spherical weights have real integer lattice coordinates.  The
// exponential-growth direction of Paley-Wiener bounds ("Re lambda" in the
// usual normalization) is the imaginary part of these stored coordinates.
struct SpectralParameter {
  CVec coords;

  SpectralParameter() = default;
  explicit SpectralParameter(CVec c) : coords(std::move(c)) {}
  static SpectralParameter real(const Vec& v) { return SpectralParameter(v.cast<cplx>()); }
  int dim() const { return static_cast<int>(coords.size()); }
  bool is_real(double tol = 1e-12) const { return coords.imag().cwiseAbs().maxCoeff() <= tol; }
  Vec real_part() const { return coords.real(); }
};

// Immutable geometric data for one configured space.
struct SymmetricSpaceData {
  SpaceConfig config;
  int rank = 1;       // n = dim b
  int m = 1;          // half multiplicity; every root has m_alpha = 2m
  std::vector<Vec> positive_roots;   // in orthonormal a* coordinates
  std::vector<Vec> simple_roots;
  Vec rho;                           // = m * sum of positive roots
  std::vector<Mat> weyl;             // orthogonal matrices on a* coords; weyl[0] = identity
  std::vector<IMat> weyl_on_lattice; // same elements acting on Lambda-basis coordinates (exact)
  std::vector<int> weyl_det;         // det(w) = +-1
  Mat lattice_basis;                 // columns: basis of Lambda (spherical weight lattice) in a* coords
  Mat period_basis;                  // columns: basis of Gamma in b coords; lattice_basis^T * period_basis = 2 pi I
  double lattice_covolume = 1.0;     // |det lattice_basis|
  int dim_space = 0;                 // dim U/K
  double r_small = 0.0;              // conservative "small radius" per preset
  Vec grid_offsets;                  // per-axis node offset fraction of one grid step

  int weyl_order() const { return static_cast<int>(weyl.size()); }
};

// A weight of the dominant spherical lattice Lambda+ together with its
// integer coordinates in the Lambda basis.
struct DominantWeight {
  IVec lattice_coords;
  Vec coords;     // = lattice_basis * lattice_coords
  double norm = 0.0;

  SpectralParameter spectral() const { return SpectralParameter::real(coords); }
};

SymmetricSpaceData build_space(const SpaceConfig& config);

// The full Weyl group (closure of the simple reflections).  Exposed as a
// standalone operation; build_space stores the result in the data record.
std::vector<Mat> weyl_group(const std::vector<Vec>& simple_roots, int max_order = 3628800);

cplx lambda_alpha(const SpectralParameter& lambda, const Vec& alpha);

bool dominant_spherical(const SpectralParameter& lambda, const SymmetricSpaceData& data);

// All mu in Lambda+ with ||mu|| <= cutoff, ordered lexicographically in the
// Lambda-basis integer coordinates.
std::vector<DominantWeight> enumerate_dominant(const SymmetricSpaceData& data, double cutoff);

// sum_w exp(i (w lambda) . theta), theta in orthonormal b coordinates.
cplx weyl_orbit_sum(const SymmetricSpaceData& data, const SpectralParameter& lambda, const Vec& theta);

// --- coordinate helpers ----------------------------------------------------

// theta = period_basis * x for a torus point given in Gamma coordinates.
inline Vec torus_theta(const SymmetricSpaceData& data, const Vec& x) { return data.period_basis * x; }

// Real weight -> integer Lambda coordinates (throws if not a lattice point).
IVec to_lattice_coords(const SymmetricSpaceData& data, const Vec& weight, double tol = 1e-9);

// Geodesic distance from exp(theta) to the origin on the torus: the minimum
// of ||theta + gamma|| over Gamma translates.
double torus_distance(const SymmetricSpaceData& data, const Vec& theta);

// The Gamma-coordinate representative of x nearest to the origin in b.
// Needed wherever b^lambda is evaluated for non-lattice lambda, which is not
// Gamma-periodic.
Vec nearest_representative(const SymmetricSpaceData& data, const Vec& x);

// w(lambda + rho) - rho for the shifted Weyl action used by Paley-Wiener
// symmetry checks.
SpectralParameter shifted_weyl(const SymmetricSpaceData& data, int w_index, const SpectralParameter& lambda);

}  // namespace hk
