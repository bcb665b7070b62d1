#include "hk/trigpoly.hpp"

#include <cmath>

namespace hk {

TrigLaurentPoly TrigLaurentPoly::constant(int n, cplx c) {
  TrigLaurentPoly p(n);
  if (c != cplx(0.0)) p.terms[std::vector<int>(n, 0)] = c;
  return p;
}

TrigLaurentPoly TrigLaurentPoly::character(int n, const std::vector<int>& key, cplx c) {
  TrigLaurentPoly p(n);
  if (c != cplx(0.0)) p.terms[key] = c;
  return p;
}

TrigLaurentPoly TrigLaurentPoly::lattice_character(const IVec& lattice_coords, cplx c) {
  std::vector<int> key(lattice_coords.size());
  for (int i = 0; i < lattice_coords.size(); ++i) key[i] = 2 * lattice_coords[i];
  return character(static_cast<int>(lattice_coords.size()), key, c);
}

void TrigLaurentPoly::add_term(const std::vector<int>& key, cplx c, double drop_tol) {
  auto it = terms.find(key);
  if (it == terms.end()) {
    if (c != cplx(0.0)) terms.emplace(key, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) <= drop_tol) terms.erase(it);
}

TrigLaurentPoly& TrigLaurentPoly::operator+=(const TrigLaurentPoly& o) {
  for (const auto& [k, c] : o.terms) add_term(k, c);
  return *this;
}

TrigLaurentPoly& TrigLaurentPoly::operator-=(const TrigLaurentPoly& o) {
  for (const auto& [k, c] : o.terms) add_term(k, -c);
  return *this;
}

TrigLaurentPoly& TrigLaurentPoly::operator*=(cplx c) {
  if (c == cplx(0.0)) {
    terms.clear();
    return *this;
  }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

TrigLaurentPoly TrigLaurentPoly::operator*(const TrigLaurentPoly& o) const {
  TrigLaurentPoly out(dim);
  std::vector<int> key(dim);
  for (const auto& [ka, ca] : terms)
    for (const auto& [kb, cb] : o.terms) {
      for (int i = 0; i < dim; ++i) key[i] = ka[i] + kb[i];
      out.add_term(key, ca * cb);
    }
  return out;
}

TrigLaurentPoly TrigLaurentPoly::operator+(const TrigLaurentPoly& o) const {
  TrigLaurentPoly out = *this;
  out += o;
  return out;
}

TrigLaurentPoly TrigLaurentPoly::operator-(const TrigLaurentPoly& o) const {
  TrigLaurentPoly out = *this;
  out -= o;
  return out;
}

Vec TrigLaurentPoly::key_weight(const SymmetricSpaceData& data, const std::vector<int>& key) {
  Vec w = Vec::Zero(data.rank);
  for (int i = 0; i < data.rank; ++i) w += 0.5 * static_cast<double>(key[i]) * data.lattice_basis.col(i);
  return w;
}

TrigLaurentPoly TrigLaurentPoly::derivative(const SymmetricSpaceData& data, int j) const {
  TrigLaurentPoly out(dim);
  for (const auto& [k, c] : terms) {
    const double wj = key_weight(data, k)[j];
    if (wj != 0.0) out.terms[k] = c * cplx(0.0, wj);
  }
  return out;
}

cplx TrigLaurentPoly::eval(const CVec& x) const {
  cplx sum = 0.0;
  for (const auto& [k, c] : terms) {
    cplx phase = 0.0;
    for (int i = 0; i < dim; ++i) phase += static_cast<double>(k[i]) * x[i];
    sum += c * std::exp(cplx(0.0, pi) * phase);
  }
  return sum;
}

cplx TrigLaurentPoly::eval(const Vec& x) const {
  cplx sum = 0.0;
  for (const auto& [k, c] : terms) {
    double phase = 0.0;
    for (int i = 0; i < dim; ++i) phase += static_cast<double>(k[i]) * x[i];
    sum += c * std::polar(1.0, pi * phase);
  }
  return sum;
}

lcplx TrigLaurentPoly::eval_ld(const Vec& x) const {
  lcplx sum = 0.0;
  const long double lpi = 3.14159265358979323846264338327950288L;
  for (const auto& [k, c] : terms) {
    long double phase = 0.0L;
    for (int i = 0; i < dim; ++i) phase += static_cast<long double>(k[i]) * static_cast<long double>(x[i]);
    phase *= lpi;
    sum += lcplx(c.real(), c.imag()) * lcplx(std::cos(phase), std::sin(phase));
  }
  return sum;
}

double TrigLaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

void TrigLaurentPoly::prune(double tol) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= tol)
      it = terms.erase(it);
    else
      ++it;
  }
}

int TrigLaurentPoly::max_key_abs() const {
  int m = 0;
  for (const auto& [k, c] : terms)
    for (int v : k) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace hk
