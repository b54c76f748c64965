#pragma once

#include <functional>
#include <limits>
#include <string>

#include "weylstrip/grid.hpp"

namespace weylstrip {

// A C^2 potential phi with closed-form gradient and Laplacian, and the
// scaling c > 0 of the associated position/momentum pair
//   (Q_i f)(x) = (x_i/c) f(x),
//   (P_i f)(x) = -i c (d/dx_i - (1/2) dphi/dx_i) f(x).
struct Potential {
  int dim = 1;
  double c = 1.0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<double(const Vec&)> laplacian;
};

// phi(x) = x.Nx + l.x with N real symmetric, eigenvalues >= 0.
struct QuadraticPotential {
  int dim = 1;
  Mat n_matrix{};
  Vec linear{};
  double c = 1.0;

  static QuadraticPotential make(int dim, const Mat& n, const Vec& l, double c);
  // N = I/2, l = 0: the classical Ornstein-Uhlenbeck weight exp(-x^2/2).
  static QuadraticPotential classical(int dim, double c);

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  double laplacian(const Vec& x) const;
  Potential as_potential() const;
};

// Lebesgue exponent p in [1, inf] with M_p = |1 - 2/p| and
// theta_p = arcsin(M_p).
struct PExponent {
  double p = 2.0;
  double mp = 0.0;
  double theta = 0.0;

  static PExponent make(double p);
  bool is_inf() const { return std::isinf(p); }
};

// C_phi(x) = (1/4)|grad phi(cx)|^2 - (1/2) (Delta phi)(cx).
double c_phi(const Potential& pot, const Vec& x);

// Ornstein-Uhlenbeck action L f = -Delta f + grad phi . grad f, discretized
// with the composite central-difference stencil D(Df) (one-sided fallback at
// the two boundary layers).
GridFunction ou_apply(const Potential& pot, const GridFunction& f);

// First-order central difference along one axis; exposed for the momentum
// operator and the residual check below.
GridFunction diff1(const GridFunction& f, int axis);

// P_i f = -i c (D_i f - (1/2) (d_i phi) f).
GridFunction momentum_apply(const Potential& pot, const GridFunction& f, int axis);

// Multiplication by exp(-phi(x)/p) (the isometry L^p(mu) -> L^p(lambda)) and
// its inverse. Throws "weight overflow" if |phi/p| exceeds the exponent cap.
GridFunction u_p_forward(const Potential& pot, const PExponent& p, const GridFunction& f);
GridFunction u_p_inverse(const Potential& pot, const PExponent& p, const GridFunction& f);

// Max interior discrepancy between L f and C_phi(x/c) f + (1/c^2) sum_i P_i^2 f,
// both sides built from the same first-order stencil. O(h^2) for smooth
// compactly supported f; identically zero stencils when phi == 0.
double ou_representation_residual(const Potential& pot, const GridFunction& f,
                                  double margin_fraction = 0.1);

// Probabilists' Hermite polynomials He_n (eigenfunctions of -d^2 + x d).
double hermite(int n, double x);

}  // namespace weylstrip
