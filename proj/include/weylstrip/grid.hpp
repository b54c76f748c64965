#pragma once

#include <functional>
#include <vector>

#include "weylstrip/types.hpp"

namespace weylstrip {

struct AxisSpec {
  double half_width = 0.0;  // grid covers [-half_width, half_width)
  int points = 0;           // even, >= 8

  double spacing() const { return 2.0 * half_width / points; }
  double coord(int j) const { return -half_width + j * spacing(); }
  bool operator==(const AxisSpec&) const = default;
};

// Uniform tensor grid over R^d, d = 1 or 2, half-open per axis with points
// x_j = -L + j*h, h = 2L/n.
struct GridSpec {
  int dim = 1;
  std::array<AxisSpec, 2> axis{};

  static GridSpec uniform(int dim, double half_width, int points);
  static GridSpec make(int dim, const std::array<AxisSpec, 2>& axes);

  std::size_t size() const;
  double cell_volume() const;
  std::array<int, 2> unflatten(std::size_t flat) const;
  Vec point(std::size_t flat) const;

  // Grid of the dual variable under the FFT pairing: same point count,
  // spacing 2*pi/(2L).
  GridSpec frequency_dual() const;

  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

struct GridFunction {
  GridSpec spec;
  std::vector<Complex> values;

  static GridFunction zeros(const GridSpec& spec);
  static GridFunction sample(const GridSpec& spec,
                             const std::function<Complex(const Vec&)>& f);
};

// h^d * sum of samples (left Riemann rule) with pairwise reduction.
// Throws "non-finite samples" on NaN/Inf input.
Complex quadrature(const GridFunction& f);
double quadrature(const GridSpec& spec, const std::vector<double>& values);

enum class PhaseSide { position, frequency };

// Samples of a phase-space function a(x, xi) (side == position) or of its
// partial Fourier transform F2a(x, k) (side == frequency).
// Layout: values[x_flat * second.size() + s_flat].
struct PhaseGridFunction {
  GridSpec xspec;
  GridSpec xi_spec;  // position-side second axis; the k grid is its dual
  PhaseSide side = PhaseSide::position;
  std::vector<Complex> values;

  GridSpec second_spec() const;
  static PhaseGridFunction sample(
      const GridSpec& xspec, const GridSpec& xi_spec, PhaseSide side,
      const std::function<Complex(const Vec&, const Vec&)>& f);
};

// F2a(x, k) = (2pi)^{-d/2} \int a(x, xi) e^{-i k.xi} dxi, one FFT per x row
// with explicit phase factors for the grid offset.
PhaseGridFunction partial_fourier_forward(const PhaseGridFunction& a);

// a(x, xi) = (2pi)^{-d/2} \int F2a(x, k) e^{+i k.xi} dk; exact inverse of the
// forward map up to FFT roundoff.
PhaseGridFunction partial_fourier_inverse(const PhaseGridFunction& f);

namespace serial {
PhaseGridFunction partial_fourier_forward(const PhaseGridFunction& a);
PhaseGridFunction partial_fourier_inverse(const PhaseGridFunction& f);
}  // namespace serial

}  // namespace weylstrip
