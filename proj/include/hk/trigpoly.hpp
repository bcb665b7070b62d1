#pragma once

#include <map>
#include <vector>

#include "hk/rootsys.hpp"

namespace hk {

// Exact finite Laurent series in the torus characters.
//
// A frequency key k in Z^n stands for the weight (1/2) sum_i k_i lambda_i on
// the half lattice (1/2)Lambda (doubling keeps root-lattice exponents exact
// for the complex-group Weyl denominator).  At a torus point with Gamma
// coordinates x the term evaluates to exp(i pi k . x).
struct TrigLaurentPoly {
  int dim = 1;
  std::map<std::vector<int>, cplx> terms;

  TrigLaurentPoly() = default;
  explicit TrigLaurentPoly(int n) : dim(n) {}

  static TrigLaurentPoly constant(int n, cplx c);
  // Character of the weight with given half-lattice key.
  static TrigLaurentPoly character(int n, const std::vector<int>& key, cplx c = 1.0);
  // Character b^mu of a full lattice point (Lambda coordinates).
  static TrigLaurentPoly lattice_character(const IVec& lattice_coords, cplx c = 1.0);

  bool empty() const { return terms.empty(); }
  void add_term(const std::vector<int>& key, cplx c, double drop_tol = 0.0);

  TrigLaurentPoly& operator+=(const TrigLaurentPoly& o);
  TrigLaurentPoly& operator-=(const TrigLaurentPoly& o);
  TrigLaurentPoly& operator*=(cplx c);
  TrigLaurentPoly operator*(const TrigLaurentPoly& o) const;
  TrigLaurentPoly operator+(const TrigLaurentPoly& o) const;
  TrigLaurentPoly operator-(const TrigLaurentPoly& o) const;

  // Weight vector (a* coordinates) of one key: 0.5 * lattice_basis * k.
  static Vec key_weight(const SymmetricSpaceData& data, const std::vector<int>& key);

  // d/d theta_j in orthonormal b coordinates (multiplies each term by
  // i * weight_j); requires the space data for the lattice basis.
  TrigLaurentPoly derivative(const SymmetricSpaceData& data, int j) const;

  // Evaluation at a (possibly complex) torus point given in Gamma coords.
  cplx eval(const CVec& x) const;
  cplx eval(const Vec& x) const;
  lcplx eval_ld(const Vec& x) const;

  double max_abs_coeff() const;
  void prune(double tol);
  int max_key_abs() const;  // max |k_i| over all terms and axes
};

}  // namespace hk
