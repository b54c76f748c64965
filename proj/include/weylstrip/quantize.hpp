#pragma once

#include <cstdint>

#include "weylstrip/symbol.hpp"

namespace weylstrip {

// Discretized integral operator on the Lebesgue side (U_p-conjugated):
//   entries(y, x) = h^d (2pi)^{-d/2} c^{-d} F2a((x+y)/2c, (x-y)/c)
//                   exp((1/2 - 1/p)(phi(y) - phi(x))),
//   b_diag(y)     = a_b(y/c).
struct KernelMatrix {
  GridSpec spec;
  PExponent p;
  double c = 1.0;
  bool has_entries = false;  // false for pure multiplier symbols (entries == 0)
  std::vector<Complex> entries;  // row-major, entries[y * N + x]
  std::vector<Complex> b_diag;   // size N

  std::size_t rows() const { return spec.size(); }
};

KernelMatrix build_kernel(const SymbolF2& sym, const Potential& pot, const PExponent& p,
                          const GridSpec& spec);

// (K f)(y) = sum_x entries(y, x) f(x) + b_diag(y) f(y)  (Lebesgue side).
GridFunction kernel_apply(const KernelMatrix& k, const GridFunction& f);

// Adjoint with respect to the (uniformly weighted) discrete inner product.
GridFunction kernel_apply_adjoint(const KernelMatrix& k, const GridFunction& f);

// Weighted-measure side: U_p^{-1} (entries . U_p f) + b_diag f. The
// multiplier part commutes with U_p exactly, so it is applied directly.
GridFunction kernel_apply_mu(const KernelMatrix& k, const Potential& pot,
                             const GridFunction& f);

// e^epsilon * ||a||_{HS(M)}: the Young convolution bound on the operator norm.
double young_upper_bound(const HsNormReport& report, double epsilon);

// Lower estimate of the weighted-l^p operator norm from seeded random smooth
// test functions; for p = 2 additionally runs power iteration on K*K.
double norm_lower_estimate(const KernelMatrix& k, double p, int trials,
                           std::uint64_t seed);

// Dense operator matrix entries + multiplier diagonal (for composition checks).
std::vector<Complex> dense_operator(const KernelMatrix& k);

std::vector<Complex> matmul(const std::vector<Complex>& a, const std::vector<Complex>& b,
                            std::size_t n);
double frobenius(const std::vector<Complex>& a);

namespace serial {
KernelMatrix build_kernel(const SymbolF2& sym, const Potential& pot, const PExponent& p,
                          const GridSpec& spec);
GridFunction kernel_apply(const KernelMatrix& k, const GridFunction& f);
}  // namespace serial

}  // namespace weylstrip
