#include "weylstrip/grid.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace weylstrip {

GridSpec GridSpec::uniform(int dim, double half_width, int points) {
  GridSpec s;
  s.dim = dim;
  for (int a = 0; a < dim; ++a) s.axis[a] = AxisSpec{half_width, points};
  s.validate();
  return s;
}

GridSpec GridSpec::make(int dim, const std::array<AxisSpec, 2>& axes) {
  GridSpec s;
  s.dim = dim;
  s.axis = axes;
  if (dim < 2) s.axis[1] = AxisSpec{};
  s.validate();
  return s;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(axis[a].points);
  return n;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= axis[a].spacing();
  return v;
}

std::array<int, 2> GridSpec::unflatten(std::size_t flat) const {
  if (dim == 1) return {static_cast<int>(flat), 0};
  const int n1 = axis[1].points;
  return {static_cast<int>(flat) / n1, static_cast<int>(flat) % n1};
}

Vec GridSpec::point(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Vec p{axis[0].coord(idx[0]), 0.0};
  if (dim > 1) p[1] = axis[1].coord(idx[1]);
  return p;
}

GridSpec GridSpec::frequency_dual() const {
  GridSpec s;
  s.dim = dim;
  for (int a = 0; a < dim; ++a) {
    const int n = axis[a].points;
    const double hk = kTwoPi / (2.0 * axis[a].half_width);
    s.axis[a] = AxisSpec{0.5 * n * hk, n};
  }
  return s;
}

void GridSpec::validate() const {
  if (dim < 1 || dim > 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (!(axis[a].half_width > 0.0))
      throw std::invalid_argument("grid half-width must be positive");
    if (axis[a].points < 8) throw std::invalid_argument("grid too coarse (n < 8)");
    if (axis[a].points % 2 != 0) throw std::invalid_argument("grid size must be even");
  }
}

GridFunction GridFunction::zeros(const GridSpec& spec) {
  spec.validate();
  return GridFunction{spec, std::vector<Complex>(spec.size(), Complex{})};
}

GridFunction GridFunction::sample(const GridSpec& spec,
                                  const std::function<Complex(const Vec&)>& f) {
  GridFunction g = zeros(spec);
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = f(spec.point(i));
  return g;
}

Complex quadrature(const GridFunction& f) {
  for (const Complex& v : f.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::runtime_error("non-finite samples");
  const Complex s = pairwise_sum<Complex>(
      f.values.size(), [&](std::size_t i) { return f.values[i]; });
  return f.spec.cell_volume() * s;
}

double quadrature(const GridSpec& spec, const std::vector<double>& values) {
  if (values.size() != spec.size())
    throw std::invalid_argument("quadrature: size mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw std::runtime_error("non-finite samples");
  const double s =
      pairwise_sum<double>(values.size(), [&](std::size_t i) { return values[i]; });
  return spec.cell_volume() * s;
}

GridSpec PhaseGridFunction::second_spec() const {
  return side == PhaseSide::position ? xi_spec : xi_spec.frequency_dual();
}

PhaseGridFunction PhaseGridFunction::sample(
    const GridSpec& xspec, const GridSpec& xi_spec, PhaseSide side,
    const std::function<Complex(const Vec&, const Vec&)>& f) {
  xspec.validate();
  xi_spec.validate();
  PhaseGridFunction out{xspec, xi_spec, side, {}};
  const GridSpec second = out.second_spec();
  const std::size_t rl = second.size();
  out.values.resize(xspec.size() * rl);
  for (std::size_t r = 0; r < xspec.size(); ++r) {
    const Vec x = xspec.point(r);
    for (std::size_t j = 0; j < rl; ++j) out.values[r * rl + j] = f(x, second.point(j));
  }
  return out;
}

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Shared forward/inverse FFT driver. With grids x_j = -L + j*h and
// k_m = -K + m*hk, hk = pi/L, K = n*hk/2, the continuum transform reduces to
// a centered DFT:
//   F_m = scale * (-1)^{m + n/2} * DFT[(-1)^j a_j]_m,  scale = (2pi)^{-d/2} h^d
// and the inverse is the mirrored statement with the unnormalised backward
// DFT and the k spacing.
PhaseGridFunction partial_fourier_impl(const PhaseGridFunction& in, bool forward,
                                       bool parallel) {
  in.xspec.validate();
  in.xi_spec.validate();
  if (forward && in.side != PhaseSide::position)
    throw std::invalid_argument("partial_fourier_forward: input must be on the xi side");
  if (!forward && in.side != PhaseSide::frequency)
    throw std::invalid_argument("partial_fourier_inverse: input must be on the k side");

  const int d = in.xi_spec.dim;
  const GridSpec in_second = in.second_spec();
  const std::size_t rows = in.xspec.size();
  const std::size_t rl = in_second.size();
  if (in.values.size() != rows * rl)
    throw std::invalid_argument("partial_fourier: value buffer size mismatch");

  double scl = std::pow(kTwoPi, -0.5 * d);
  double center = 1.0;
  for (int a = 0; a < d; ++a) {
    scl *= in_second.axis[a].spacing();
    if ((in.xi_spec.axis[a].points / 2) % 2 != 0) center = -center;
  }

  std::vector<double> parity(rl);
  for (std::size_t j = 0; j < rl; ++j) {
    const auto idx = in.xi_spec.unflatten(j);
    parity[j] = ((idx[0] + idx[1]) % 2 == 0) ? 1.0 : -1.0;
  }

  PhaseGridFunction out{in.xspec, in.xi_spec,
                        forward ? PhaseSide::frequency : PhaseSide::position,
                        std::vector<Complex>(rows * rl)};

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    std::vector<Complex> pi(rl), po(rl);
    int sizes[2] = {in.xi_spec.axis[0].points, in.xi_spec.axis[1].points};
    plan = fftw_plan_dft(d, sizes, reinterpret_cast<fftw_complex*>(pi.data()),
                         reinterpret_cast<fftw_complex*>(po.data()),
                         forward ? FFTW_FORWARD : FFTW_BACKWARD,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
  }

#pragma omp parallel if (parallel)
  {
    std::vector<Complex> bin(rl), bout(rl);
#pragma omp for schedule(static)
    for (long long r = 0; r < static_cast<long long>(rows); ++r) {
      const Complex* src = in.values.data() + r * rl;
      Complex* dst = out.values.data() + r * rl;
      for (std::size_t j = 0; j < rl; ++j) bin[j] = src[j] * parity[j];
      fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(bin.data()),
                       reinterpret_cast<fftw_complex*>(bout.data()));
      for (std::size_t m = 0; m < rl; ++m) dst[m] = bout[m] * (parity[m] * center * scl);
    }
  }

  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

PhaseGridFunction partial_fourier_forward(const PhaseGridFunction& a) {
  return partial_fourier_impl(a, true, true);
}

PhaseGridFunction partial_fourier_inverse(const PhaseGridFunction& f) {
  return partial_fourier_impl(f, false, true);
}

namespace serial {

PhaseGridFunction partial_fourier_forward(const PhaseGridFunction& a) {
  return partial_fourier_impl(a, true, false);
}

PhaseGridFunction partial_fourier_inverse(const PhaseGridFunction& f) {
  return partial_fourier_impl(f, false, false);
}

}  // namespace serial

}  // namespace weylstrip
