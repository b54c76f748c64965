#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weylstrip/potential.hpp"

namespace weylstrip {

// Affine growth map M(x) = Mtilde x + ell with real-symmetric linear part.
struct GrowthMap {
  int dim = 1;
  Mat linear{};
  Vec offset{};

  Vec operator()(const Vec& x) const { return add(matvec(linear, x, dim), offset); }
  static GrowthMap zero(int dim) { return GrowthMap{dim, {}, {}}; }
  bool is_zero() const;
};

struct GrowthPair {
  GrowthMap map;
  double epsilon = 0.0;
};

// A symbol in F2 representation: the holomorphic-strip part is carried by an
// evaluator for F2a0(x, k) (closed form, sampled+interpolated, or a quadrature
// closure from a Moyal product); the multiplier part a_b(x) is kept separate
// and never pushed through F2.
struct SymbolF2 {
  using F2Eval = std::function<Complex(const Vec& x, const Vec& k)>;
  using BEval = std::function<Complex(const Vec& x)>;

  int dim = 1;
  std::string name;
  F2Eval f2_hs0;    // empty if the symbol has no HS0 part
  BEval multiplier; // empty if the symbol has no multiplier part
  F2Eval position;  // optional closed form a(x, xi), for FFT cross-checks

  bool has_hs0() const { return static_cast<bool>(f2_hs0); }
  bool has_multiplier() const { return static_cast<bool>(multiplier); }
};

SymbolF2 zero_symbol(int dim);
// a(x, xi) = exp(-s |xi|^2); F2a(x, k) = (2s)^{-d/2} exp(-|k|^2 / (4s)).
SymbolF2 gaussian_symbol(int dim, double s);
SymbolF2 multiplier_symbol(int dim, SymbolF2::BEval b, std::string name);
// F2 samples with multilinear interpolation; evaluation outside the sampled
// box throws, naming the offending coordinate.
SymbolF2 sampled_symbol(const PhaseGridFunction& f2_samples, std::string name);

SymbolF2 symbol_sum(const SymbolF2& a, const SymbolF2& b);
SymbolF2 symbol_scale(Complex alpha, const SymbolF2& a);

// Growth-normalized F2: F2a(x,k) = (2pi)^{d/2} exp(-|k.M(x)|) g(x,k), so
// g(x,k) = (2pi)^{-d/2} F2a(x,k) exp(+|k.M(x)|).
Complex symbol_g(const SymbolF2& sym, const GrowthMap& m, const Vec& x, const Vec& k);

struct HsNormReport {
  GridSpec k_spec;
  std::vector<double> g_max;  // sup over the x grid of |g|, per k cell
  double hs0_norm = 0.0;
  double b_norm = 0.0;
  double total = 0.0;
};

// Holomorphic-strip norm realized on the grid: the L^1-dominating majorant is
// the pointwise sup of |g| over the sampled x box.
HsNormReport hs_norm(const SymbolF2& sym, const GrowthMap& m, const GridSpec& xspec,
                     const GridSpec& kspec);

// Strip extension a(x, xi + i t M(x)) =
//   (2pi)^{-d/2} \int F2a(x,k) e^{i k.xi} e^{-t k.M(x)} dk, |t| <= 1.
Complex strip_extend(const SymbolF2& sym, const GrowthMap& m, const Vec& x,
                     const Vec& xi, double t, const GridSpec& kspec);

// For phi(x) = x.Nx + l.x: M(x) = M_p (c^2 N x + c l / 2), epsilon = 0.
GrowthPair quadratic_growth_pair(const QuadraticPotential& pot, const PExponent& p);

struct GrowthPairCheck {
  double epsilon_hat = 0.0;
  Vec argmax_x{};
  Vec argmax_y{};
};

// epsilon_hat = max over sampled (x, y) of
//   | |1/2 - 1/p| |phi(x) - phi(y)| - |((x-y)/c) . M((x+y)/(2c))| |.
GrowthPairCheck validate_growth_pair(const Potential& pot, const PExponent& p,
                                     const GrowthPair& gp, const GridSpec& spec);

// \int max_{|y| >= |x|} G(y) dx for a sampled nonnegative G.
double r_bound_integral(const std::vector<double>& g, const GridSpec& kspec);

// Sample F2 of a symbol on the k grid dual to xi_spec (frequency side).
PhaseGridFunction materialize_f2(const SymbolF2& sym, const GridSpec& xspec,
                                 const GridSpec& xi_spec);
// Sample the position-side evaluator (throws if the symbol has none).
PhaseGridFunction materialize_position(const SymbolF2& sym, const GridSpec& xspec,
                                       const GridSpec& xi_spec);

namespace serial {
HsNormReport hs_norm(const SymbolF2& sym, const GrowthMap& m, const GridSpec& xspec,
                     const GridSpec& kspec);
PhaseGridFunction materialize_f2(const SymbolF2& sym, const GridSpec& xspec,
                                 const GridSpec& xi_spec);
}  // namespace serial

}  // namespace weylstrip
