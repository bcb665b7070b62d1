#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace hk {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;
using IMat = Eigen::MatrixXi;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------- errors ---

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WallEvaluationError : DomainError {
  using DomainError::DomainError;
};
struct SpectralSingularityError : DomainError {
  using DomainError::DomainError;
};
struct AliasingError : DomainError {
  using DomainError::DomainError;
};
struct RangeError : DomainError {
  using DomainError::DomainError;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- threads ---

// Number of worker threads: --threads flag > HK_THREADS env > hardware.
int default_thread_count();
void set_thread_count(int n);

// Chunked parallel for over [0, n). Falls back to serial for small n or a
// single worker. fn must be safe to call concurrently on disjoint indices.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk_fn);

inline void parallel_for_each(std::size_t n, const std::function<void(std::size_t)>& fn) {
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) fn(i);
  });
}

// ---------------------------------------------------------------- helpers ---

inline double sqr(double x) { return x * x; }

inline bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) <= tol; }

std::string format_g17(double x);

}  // namespace hk
