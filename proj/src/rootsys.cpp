#include "hk/rootsys.hpp"

#include <algorithm>
#include <cmath>

namespace hk {

namespace {

// Orthonormal basis (columns) of the sum-zero hyperplane of R^{N}.
Mat sum_zero_basis(int N) {
  Mat Q(N, N - 1);
  for (int j = 0; j < N - 1; ++j) {
    // Helmert vectors: (1,...,1,-(j+1),0,...)/sqrt((j+1)(j+2))
    Vec v = Vec::Zero(N);
    for (int i = 0; i <= j; ++i) v[i] = 1.0;
    v[j + 1] = -(j + 1);
    Q.col(j) = v / v.norm();
  }
  return Q;
}

struct RawRoots {
  std::vector<Vec> positive;
  std::vector<Vec> simple;
};

RawRoots complex_group_roots(RootType type, int n) {
  RawRoots out;
  auto e = [n](int i) {
    Vec v = Vec::Zero(n);
    v[i] = 1.0;
    return v;
  };
  switch (type) {
    case RootType::A: {
      if (n < 1) throw ConfigError("root_type A requires rank >= 1");
      const int N = n + 1;
      Mat Q = sum_zero_basis(N);
      auto eN = [N](int i) {
        Vec v = Vec::Zero(N);
        v[i] = 1.0;
        return v;
      };
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) out.positive.push_back(Q.transpose() * (eN(i) - eN(j)));
      for (int i = 0; i < n; ++i) out.simple.push_back(Q.transpose() * (eN(i) - eN(i + 1)));
      return out;
    }
    case RootType::B: {
      if (n < 2) throw ConfigError("root_type B requires rank >= 2");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          out.positive.push_back(e(i) - e(j));
          out.positive.push_back(e(i) + e(j));
        }
      for (int i = 0; i < n; ++i) out.positive.push_back(e(i));
      for (int i = 0; i + 1 < n; ++i) out.simple.push_back(e(i) - e(i + 1));
      out.simple.push_back(e(n - 1));
      return out;
    }
    case RootType::C: {
      if (n < 2) throw ConfigError("root_type C requires rank >= 2");
      const double s = 1.0 / std::sqrt(2.0);  // long roots scaled to norm^2 = 2
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          out.positive.push_back(s * (e(i) - e(j)));
          out.positive.push_back(s * (e(i) + e(j)));
        }
      for (int i = 0; i < n; ++i) out.positive.push_back(s * 2.0 * e(i));
      for (int i = 0; i + 1 < n; ++i) out.simple.push_back(s * (e(i) - e(i + 1)));
      out.simple.push_back(s * 2.0 * e(n - 1));
      return out;
    }
    case RootType::D: {
      if (n < 3) throw ConfigError("root_type D requires rank >= 3");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          out.positive.push_back(e(i) - e(j));
          out.positive.push_back(e(i) + e(j));
        }
      for (int i = 0; i + 1 < n; ++i) out.simple.push_back(e(i) - e(i + 1));
      out.simple.push_back(e(n - 2) + e(n - 1));
      return out;
    }
  }
  throw ConfigError("unsupported root_type");
}

Mat reflection_matrix(const Vec& alpha) {
  const int n = static_cast<int>(alpha.size());
  return Mat::Identity(n, n) - 2.0 / alpha.squaredNorm() * (alpha * alpha.transpose());
}

bool matrix_seen(const std::vector<Mat>& ms, const Mat& w) {
  for (const auto& m : ms)
    if ((m - w).cwiseAbs().maxCoeff() < 1e-8) return true;
  return false;
}

IMat round_to_int(const Mat& m, const char* what) {
  IMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const double r = std::round(m(i, j));
      if (std::abs(m(i, j) - r) > 1e-8) throw InternalError(std::string("non-integer entry in ") + what);
      out(i, j) = static_cast<int>(r);
    }
  return out;
}

// Fundamental weights of the root system: columns omega_i with
// <omega_i, alpha_j^v> = delta_ij for the simple coroots.
Mat fundamental_weights(const std::vector<Vec>& simple) {
  const int n = static_cast<int>(simple.size());
  Mat coroots(n, n);
  for (int j = 0; j < n; ++j) coroots.col(j) = 2.0 / simple[j].squaredNorm() * simple[j];
  // omega basis solves coroots^T * Omega = I.
  return coroots.transpose().fullPivLu().solve(Mat::Identity(n, n));
}

double shortest_lattice_vector(const Mat& basis) {
  const int n = static_cast<int>(basis.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> c(n, -3);
  while (true) {
    Vec v = Vec::Zero(basis.rows());
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      if (c[i] != 0) zero = false;
      v += static_cast<double>(c[i]) * basis.col(i);
    }
    if (!zero) best = std::min(best, v.norm());
    int i = 0;
    for (; i < n; ++i) {
      if (++c[i] <= 3) break;
      c[i] = -3;
    }
    if (i == n) break;
  }
  return best;
}

// Choose per-axis node offsets such that no grid node can land on a wall,
// for any grid size: the wall condition for root alpha at node (j + off)/g is
// sum_i (2 a_i)(j_i + off_i) = 0 (mod g) with a = Lambda-coordinates of alpha
// (half-integers).  It suffices that phi = sum_i (2 a_i) off_i stays away
// from the integers for every positive root.
Vec choose_grid_offsets(const SymmetricSpaceData& data) {
  const int n = data.rank;
  auto min_wall_margin = [&](const Vec& off) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& alpha : data.positive_roots) {
      Vec a2 = 2.0 * data.lattice_basis.fullPivLu().solve(alpha);
      // a2 is an integer vector (roots lie in (1/2)Lambda).  Node j hits the
      // wall of alpha iff a2.j + a2.off is a multiple of g; since grids have
      // even g, a2.j ranges over 2Z when every a2 component is even.
      bool all_even = true;
      for (int i = 0; i < static_cast<int>(a2.size()); ++i) {
        const double r = std::round(a2[i]);
        if (std::abs(a2[i] - r) > 1e-9) throw InternalError("root not on the half lattice");
        if (std::llround(r) % 2 != 0) all_even = false;
      }
      const double step = all_even ? 2.0 : 1.0;
      const double phi = a2.dot(off) / step;
      const double d = std::abs(phi - std::round(phi)) * step;
      margin = std::min(margin, d);
    }
    return margin;
  };
  std::vector<Vec> candidates;
  candidates.push_back(Vec::Constant(n, 0.5));
  candidates.push_back(Vec::Constant(n, 1.0 / 3.0));
  // Deterministic low-discrepancy fallbacks.  The per-axis steps sqrt(p_i)
  // with distinct primes p_i are rationally independent, so no fixed integer
  // combination of axes can stay on a wall for every t.
  static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  for (int t = 1; t <= 400; ++t) {
    Vec v(n);
    for (int i = 0; i < n; ++i)
      v[i] = std::fmod(0.5 + t * std::sqrt(primes[i % 10]) * 0.1, 1.0);
    candidates.push_back(std::move(v));
  }
  Vec best;
  double best_margin = -1.0;
  for (const auto& c : candidates) {
    const double margin = min_wall_margin(c);
    if (margin > 0.05) return c;  // preferred candidates, in order
    if (margin > best_margin) {
      best_margin = margin;
      best = c;
    }
  }
  if (best_margin > 1e-3) return best;
  throw InternalError("could not find wall-avoiding grid offsets");
}

}  // namespace

std::vector<Mat> weyl_group(const std::vector<Vec>& simple_roots, int max_order) {
  const int n = static_cast<int>(simple_roots.front().size());
  std::vector<Mat> group;
  group.push_back(Mat::Identity(n, n));
  std::vector<Mat> gens;
  for (const auto& a : simple_roots) gens.push_back(reflection_matrix(a));
  std::size_t frontier_begin = 0;
  while (frontier_begin < group.size()) {
    const std::size_t frontier_end = group.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i)
      for (const auto& g : gens) {
        Mat w = g * group[i];
        if (!matrix_seen(group, w)) group.push_back(std::move(w));
        if (static_cast<int>(group.size()) > max_order)
          throw InternalError("Weyl closure exceeded the 10! iteration cap (bad root data)");
      }
    frontier_begin = frontier_end;
  }
  return group;
}

cplx lambda_alpha(const SpectralParameter& lambda, const Vec& alpha) {
  if (alpha.norm() == 0.0) throw DomainError("lambda_alpha: alpha must be nonzero");
  return (lambda.coords.array() * alpha.cast<cplx>().array()).sum() / alpha.squaredNorm();
}

bool dominant_spherical(const SpectralParameter& lambda, const SymmetricSpaceData& data) {
  if (!lambda.is_real()) throw DomainError("dominant_spherical: lambda must be real");
  for (const auto& alpha : data.positive_roots) {
    const double la = std::real(lambda_alpha(lambda, alpha));
    if (!near_integer(la, 1e-9) || std::round(la) < 0.0) return false;
  }
  return true;
}

SymmetricSpaceData build_space(const SpaceConfig& config) {
  SymmetricSpaceData data;
  data.config = config;
  if (config.grid_size <= 0) throw ConfigError("grid_size must be positive");

  if (config.family == Family::SphereOdd) {
    if (config.m < 1) throw ConfigError("SphereOdd requires m >= 1");
    data.rank = 1;
    data.m = config.m;
    Vec alpha(1);
    alpha << 1.0;  // <alpha,alpha> = 1: theta is geodesic arc length on S^{2m+1}
    data.positive_roots = {alpha};
    data.simple_roots = {alpha};
    data.dim_space = 2 * config.m + 1;
    data.r_small = pi / 2.0;
  } else {
    if (config.m != 1) throw ConfigError("ComplexGroup requires m = 1 (all multiplicities 2)");
    if (config.rank < 1) throw ConfigError("ComplexGroup requires rank >= 1");
    RawRoots raw = complex_group_roots(config.root_type, config.rank);
    data.rank = config.rank;
    data.m = 1;
    data.positive_roots = raw.positive;
    data.simple_roots = raw.simple;
    data.dim_space = config.rank + 2 * static_cast<int>(raw.positive.size());
  }

  const int n = data.rank;
  data.rho = Vec::Zero(n);
  for (const auto& a : data.positive_roots) data.rho += static_cast<double>(data.m) * a;

  data.weyl = weyl_group(data.simple_roots);

  // Lattice Lambda of spherical representations: basis 2*omega_i.
  Mat omega = fundamental_weights(data.simple_roots);
  data.lattice_basis = 2.0 * omega;
  data.lattice_covolume = std::abs(data.lattice_basis.determinant());
  data.period_basis = 2.0 * pi * data.lattice_basis.inverse().transpose();

  Mat binv = data.lattice_basis.inverse();
  for (const auto& w : data.weyl) {
    data.weyl_on_lattice.push_back(round_to_int(binv * w * data.lattice_basis, "weyl_on_lattice"));
    data.weyl_det.push_back(w.determinant() > 0 ? 1 : -1);
  }

  if (config.family == Family::ComplexGroup)
    data.r_small = 0.9 * shortest_lattice_vector(data.period_basis) / 4.0;

  data.grid_offsets = (config.family == Family::SphereOdd) ? Vec::Constant(1, 0.5)
                                                           : choose_grid_offsets(data);

  // Invariant checks (Lemma-level identities; cheap, done once).
  SpectralParameter rho_sp = SpectralParameter::real(data.rho);
  for (const auto& a : data.simple_roots) {
    const double ra = std::real(lambda_alpha(rho_sp, a));
    if (std::abs(ra - data.m) > 1e-9) throw InternalError("rho_alpha != m on a simple root");
  }
  for (const auto& a : data.positive_roots) {
    const double ra = std::real(lambda_alpha(rho_sp, a));
    if (!near_integer(ra, 1e-9) || std::round(ra) < data.m)
      throw InternalError("rho_alpha not an integer >= m on a positive root");
  }
  return data;
}

std::vector<DominantWeight> enumerate_dominant(const SymmetricSpaceData& data, double cutoff) {
  if (cutoff < 0.0) throw DomainError("enumerate_dominant: cutoff must be >= 0");
  const int n = data.rank;
  Mat binv = data.lattice_basis.inverse();
  IVec kmax(n);
  for (int i = 0; i < n; ++i)
    kmax[i] = static_cast<int>(std::floor(binv.row(i).norm() * cutoff)) + 1;

  std::vector<DominantWeight> out;
  IVec k = IVec::Zero(n);
  for (int i = 0; i < n; ++i) k[i] = -kmax[i];
  while (true) {
    Vec mu = Vec::Zero(n);
    for (int i = 0; i < n; ++i) mu += static_cast<double>(k[i]) * data.lattice_basis.col(i);
    if (mu.norm() <= cutoff + 1e-12) {
      bool dominant = true;
      for (const auto& a : data.simple_roots)
        if (mu.dot(a) < -1e-12) {
          dominant = false;
          break;
        }
      if (dominant) {
        DominantWeight dw;
        dw.lattice_coords = k;
        dw.coords = mu;
        dw.norm = mu.norm();
        out.push_back(std::move(dw));
      }
    }
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++k[i] <= kmax[i]) break;
      k[i] = -kmax[i];
    }
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end(), [n](const DominantWeight& a, const DominantWeight& b) {
    for (int i = 0; i < n; ++i)
      if (a.lattice_coords[i] != b.lattice_coords[i]) return a.lattice_coords[i] < b.lattice_coords[i];
    return false;
  });
  return out;
}

cplx weyl_orbit_sum(const SymmetricSpaceData& data, const SpectralParameter& lambda, const Vec& theta) {
  cplx sum = 0.0;
  for (const auto& w : data.weyl) {
    CVec wl = w.cast<cplx>() * lambda.coords;
    cplx phase = 0.0;
    for (int i = 0; i < data.rank; ++i) phase += wl[i] * theta[i];
    sum += std::exp(cplx(0.0, 1.0) * phase);
  }
  return sum;
}

IVec to_lattice_coords(const SymmetricSpaceData& data, const Vec& weight, double tol) {
  Vec k = data.lattice_basis.fullPivLu().solve(weight);
  IVec out(k.size());
  for (int i = 0; i < k.size(); ++i) {
    const double r = std::round(k[i]);
    if (std::abs(k[i] - r) > tol) throw DomainError("weight is not a Lambda lattice point");
    out[i] = static_cast<int>(r);
  }
  return out;
}

Vec nearest_representative(const SymmetricSpaceData& data, const Vec& x) {
  const int n = data.rank;
  double best = std::numeric_limits<double>::infinity();
  Vec out = x;
  std::vector<int> c(n, -2);
  while (true) {
    Vec xc = x;
    for (int i = 0; i < n; ++i) xc[i] += static_cast<double>(c[i]);
    const double d = (data.period_basis * xc).norm();
    if (d < best) {
      best = d;
      out = xc;
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++c[i] <= 2) break;
      c[i] = -2;
    }
    if (i == n) break;
  }
  return out;
}

double torus_distance(const SymmetricSpaceData& data, const Vec& theta) {
  const int n = data.rank;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> c(n, -2);
  while (true) {
    Vec v = theta;
    for (int i = 0; i < n; ++i) v += static_cast<double>(c[i]) * data.period_basis.col(i);
    best = std::min(best, v.norm());
    int i = 0;
    for (; i < n; ++i) {
      if (++c[i] <= 2) break;
      c[i] = -2;
    }
    if (i == n) break;
  }
  return best;
}

SpectralParameter shifted_weyl(const SymmetricSpaceData& data, int w_index, const SpectralParameter& lambda) {
  CVec shifted = lambda.coords + data.rho.cast<cplx>();
  CVec moved = data.weyl[w_index].cast<cplx>() * shifted;
  return SpectralParameter(moved - data.rho.cast<cplx>());
}

}  // namespace hk
