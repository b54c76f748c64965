#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <stdexcept>

namespace weylstrip {

using Complex = std::complex<double>;

// Small fixed-size vector/matrix types for the spatial dimension d <= 2.
// Components beyond the active dimension stay at zero.
using Vec = std::array<double, 2>;
using Mat = std::array<std::array<double, 2>, 2>;
using CVec = std::array<Complex, 2>;
using CMat = std::array<std::array<Complex, 2>, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Cap on exponents fed to std::exp; larger magnitudes are refused loudly
// instead of silently producing Inf.
inline constexpr double kExpCap = 700.0;

inline double dot(const Vec& a, const Vec& b, int dim) {
  double s = a[0] * b[0];
  if (dim > 1) s += a[1] * b[1];
  return s;
}

inline double norm2(const Vec& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline Vec add(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec scale(double s, const Vec& a) { return {s * a[0], s * a[1]}; }

inline Vec matvec(const Mat& m, const Vec& v, int dim) {
  Vec r{m[0][0] * v[0], 0.0};
  if (dim > 1) {
    r[0] += m[0][1] * v[1];
    r[1] = m[1][0] * v[0] + m[1][1] * v[1];
  }
  return r;
}

// Deterministic pairwise reduction. The reduction tree depends only on the
// index range, never on thread count or chunking, so sums are reproducible
// bit for bit.
template <class T, class F>
T pairwise_sum(std::size_t begin, std::size_t end, const F& term) {
  const std::size_t n = end - begin;
  if (n <= 16) {
    T acc{};
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum<T>(begin, mid, term) + pairwise_sum<T>(mid, end, term);
}

template <class T, class F>
T pairwise_sum(std::size_t n, const F& term) {
  return pairwise_sum<T>(0, n, term);
}

// OpenMP map over [0, n) with exception capture (exceptions must not cross a
// parallel region). Each index is processed exactly once by one thread, so
// outputs written per-index are identical to a serial run.
template <class F>
void parallel_for(std::size_t n, bool parallel, const F& body) {
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static) if (parallel)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(weylstrip_parallel_for_err)
      {
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace weylstrip
