#pragma once

#include <optional>

#include "weylstrip/symbol.hpp"

namespace weylstrip {

// Eigendecomposition N = V diag(lambda) V^T of a real-symmetric d x d matrix,
// eigenvalues ascending; all matrix functions of N go through this.
struct SymmetricEig {
  int dim = 1;
  Vec eigenvalues{};
  Mat vectors{};  // columns are eigenvectors

  Vec column(int i) const {
    Vec v{vectors[0][i], 0.0};
    if (dim > 1) v[1] = vectors[1][i];
    return v;
  }
};

SymmetricEig eigh(const Mat& n, int dim);

struct ComplexSymMatrix {
  int dim = 1;
  CMat m{};
};

// N_z = N^{-1} tanh(zN) with the entire branch tanh(z*0)/0 := z on the
// kernel of N. Throws if z*lambda is within pole_guard of a pole of tanh.
ComplexSymMatrix ou_time_matrix(const SymmetricEig& eig, Complex z,
                                double pole_guard = 1e-8);

// Scalar branch used by ou_time_matrix, exposed for region predicates.
Complex ou_time_scalar(double lambda, Complex z, double pole_guard = 1e-8);

// Closed-form symbol of exp(-zL) for the quadratic potential:
//   a_z(x, xi)   = det(cosh(zN)^{-1} e^{zN})
//                  exp(-(1/c^2) xi.N_z xi - u.N_z u),  u = cNx + l/2,
//   F2a_z(x, k)  = 2^{-d/2} c^d det(N_z^{-1/2} cosh(zN)^{-1} e^{zN})
//                  exp(-(c^2/4) k.N_z^{-1} k - u.N_z u),
// principal branch for N_z^{-1/2}. Requires Re of every eigenvalue of N_z to
// be positive (real z > 0 always qualifies).
SymbolF2 ou_semigroup_symbol(const QuadraticPotential& pot, Complex z);

// Smallest eigenvalue of Re(N_z^{-1}) - M_p^2 Re(N_z)^{-1}; per eigenvalue of
// N this is (cos^2(arg nz) - M_p^2) / (|nz| cos(arg nz)). Throws when
// Re(nz) = 0 ("argument pi/2").
double gaussian_majorant_rate(const SymmetricEig& eig, Complex z, const PExponent& p);

// G(k) = c^d / (2^d pi^{d/2}) |det(N_z^{-1/2} cosh(zN)^{-1} e^{zN})|
//        exp(-(c^2/4) sigma |k|^2); throws when sigma <= 0.
double gaussian_majorant(const QuadraticPotential& pot, const PExponent& p, Complex z,
                         const Vec& k);

// \int G dk in closed form: |det(sigma N_z)|^{-1/2} |det(cosh(zN)^{-1} e^{zN})|.
double gaussian_majorant_integral(const QuadraticPotential& pot, const PExponent& p,
                                  Complex z);

// Epperson-type regions. Both require N positive definite.
// in_epperson_region: every eigenvalue nz of N_z satisfies
// |arg nz| < pi/2 - theta_p, and z is not a pole point i pi (m+1/2)/lambda.
bool in_epperson_region(const SymmetricEig& eig, Complex z, const PExponent& p);
// in_epperson_core: cos^2(arg nz) > M_p^2 + eps for every eigenvalue, and
// dist(z, {i pi m / (2 lambda); m != 0, lambda an eigenvalue of N}) > delta.
bool in_epperson_core(const SymmetricEig& eig, Complex z, const PExponent& p,
                      double eps, double delta);

struct RegionBitmap {
  int width = 0;   // real-axis pixels
  int height = 0;  // imaginary-axis pixels
  double re0 = 0, re1 = 0, im0 = 0, im1 = 0;
  std::vector<std::uint8_t> inside;  // row-major, row = imaginary index (im0 first)

  Complex pixel_center(int i, int j) const;
  std::uint8_t at(int i, int j) const { return inside[static_cast<std::size_t>(j) * width + i]; }
};

struct EpsDelta {
  double eps = 0.0;
  double delta = 0.0;
};

// Per-pixel membership raster of E^N (no eps/delta) or E^N_{eps,delta}.
RegionBitmap rasterize_region(const SymmetricEig& eig, const PExponent& p,
                              const std::optional<EpsDelta>& core, double re0, double re1,
                              double im0, double im1, int resolution);

namespace serial {
RegionBitmap rasterize_region(const SymmetricEig& eig, const PExponent& p,
                              const std::optional<EpsDelta>& core, double re0, double re1,
                              double im0, double im1, int resolution);
}  // namespace serial

}  // namespace weylstrip
