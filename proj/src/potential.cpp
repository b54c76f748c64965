#include "weylstrip/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace weylstrip {

QuadraticPotential QuadraticPotential::make(int dim, const Mat& n, const Vec& l,
                                            double c) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("potential dimension must be 1 or 2");
  if (!(c > 0.0)) throw std::invalid_argument("potential scaling c must be positive");
  const double scale = std::max({1.0, std::abs(n[0][0]), std::abs(n[1][1])});
  if (dim == 2 && std::abs(n[0][1] - n[1][0]) > 1e-12 * scale)
    throw std::invalid_argument("quadratic potential matrix must be symmetric");
  QuadraticPotential q;
  q.dim = dim;
  q.n_matrix = n;
  if (dim == 2) {
    const double sym = 0.5 * (n[0][1] + n[1][0]);
    q.n_matrix[0][1] = sym;
    q.n_matrix[1][0] = sym;
  } else {
    q.n_matrix[0][1] = q.n_matrix[1][0] = q.n_matrix[1][1] = 0.0;
  }
  q.linear = l;
  if (dim == 1) q.linear[1] = 0.0;
  q.c = c;
  return q;
}

QuadraticPotential QuadraticPotential::classical(int dim, double c) {
  Mat n{};
  n[0][0] = 0.5;
  if (dim == 2) n[1][1] = 0.5;
  return make(dim, n, Vec{0.0, 0.0}, c);
}

double QuadraticPotential::value(const Vec& x) const {
  return dot(x, matvec(n_matrix, x, dim), dim) + dot(linear, x, dim);
}

Vec QuadraticPotential::gradient(const Vec& x) const {
  return add(scale(2.0, matvec(n_matrix, x, dim)), linear);
}

double QuadraticPotential::laplacian(const Vec&) const {
  double tr = n_matrix[0][0];
  if (dim > 1) tr += n_matrix[1][1];
  return 2.0 * tr;
}

Potential QuadraticPotential::as_potential() const {
  Potential p;
  p.dim = dim;
  p.c = c;
  QuadraticPotential q = *this;
  p.value = [q](const Vec& x) { return q.value(x); };
  p.gradient = [q](const Vec& x) { return q.gradient(x); };
  p.laplacian = [q](const Vec& x) { return q.laplacian(x); };
  return p;
}

PExponent PExponent::make(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must lie in [1, inf]");
  PExponent e;
  e.p = p;
  e.mp = std::abs(1.0 - 2.0 / p);  // 2/inf == 0
  e.theta = std::asin(e.mp);
  return e;
}

double c_phi(const Potential& pot, const Vec& x) {
  const Vec cx = scale(pot.c, x);
  const Vec g = pot.gradient(cx);
  return 0.25 * dot(g, g, pot.dim) - 0.5 * pot.laplacian(cx);
}

GridFunction diff1(const GridFunction& f, int axis) {
  f.spec.validate();
  if (axis < 0 || axis >= f.spec.dim) throw std::invalid_argument("diff1: bad axis");
  const int n = f.spec.axis[axis].points;
  const double h = f.spec.axis[axis].spacing();
  const std::size_t stride =
      (f.spec.dim == 2 && axis == 0) ? static_cast<std::size_t>(f.spec.axis[1].points) : 1;

  GridFunction out = GridFunction::zeros(f.spec);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const int j = f.spec.unflatten(i)[axis];
    if (j == 0)
      out.values[i] = (f.values[i + stride] - f.values[i]) / h;
    else if (j == n - 1)
      out.values[i] = (f.values[i] - f.values[i - stride]) / h;
    else
      out.values[i] = (f.values[i + stride] - f.values[i - stride]) / (2.0 * h);
  }
  return out;
}

GridFunction ou_apply(const Potential& pot, const GridFunction& f) {
  f.spec.validate();
  if (pot.dim != f.spec.dim) throw std::invalid_argument("ou_apply: dimension mismatch");
  GridFunction out = GridFunction::zeros(f.spec);
  for (int a = 0; a < pot.dim; ++a) {
    const GridFunction d1 = diff1(f, a);
    const GridFunction d2 = diff1(d1, a);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      const Vec x = f.spec.point(i);
      out.values[i] += -d2.values[i] + pot.gradient(x)[a] * d1.values[i];
    }
  }
  return out;
}

GridFunction momentum_apply(const Potential& pot, const GridFunction& f, int axis) {
  const GridFunction d1 = diff1(f, axis);
  GridFunction out = GridFunction::zeros(f.spec);
  const Complex mic{0.0, -pot.c};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const Vec x = f.spec.point(i);
    out.values[i] = mic * (d1.values[i] - 0.5 * pot.gradient(x)[axis] * f.values[i]);
  }
  return out;
}

namespace {

GridFunction u_p_weighted(const Potential& pot, const PExponent& p,
                          const GridFunction& f, double sign) {
  GridFunction out = GridFunction::zeros(f.spec);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double t = 0.0;
    if (!p.is_inf()) {
      t = pot.value(f.spec.point(i)) / p.p;
      if (std::abs(t) > kExpCap) throw std::runtime_error("weight overflow");
    }
    out.values[i] = f.values[i] * std::exp(sign * t);
  }
  return out;
}

}  // namespace

GridFunction u_p_forward(const Potential& pot, const PExponent& p, const GridFunction& f) {
  return u_p_weighted(pot, p, f, -1.0);
}

GridFunction u_p_inverse(const Potential& pot, const PExponent& p, const GridFunction& f) {
  return u_p_weighted(pot, p, f, +1.0);
}

double ou_representation_residual(const Potential& pot, const GridFunction& f,
                                  double margin_fraction) {
  const GridFunction lhs = ou_apply(pot, f);

  GridFunction rhs = GridFunction::zeros(f.spec);
  for (std::size_t i = 0; i < rhs.values.size(); ++i) {
    const Vec x = f.spec.point(i);
    rhs.values[i] = c_phi(pot, scale(1.0 / pot.c, x)) * f.values[i];
  }
  const double inv_c2 = 1.0 / (pot.c * pot.c);
  for (int a = 0; a < pot.dim; ++a) {
    const GridFunction p2 = momentum_apply(pot, momentum_apply(pot, f, a), a);
    for (std::size_t i = 0; i < rhs.values.size(); ++i)
      rhs.values[i] += inv_c2 * p2.values[i];
  }

  double r = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const auto idx = f.spec.unflatten(i);
    bool interior = true;
    for (int a = 0; a < f.spec.dim; ++a) {
      const int n = f.spec.axis[a].points;
      const int m = std::max(2, static_cast<int>(margin_fraction * n));
      if (idx[a] < m || idx[a] >= n - m) interior = false;
    }
    if (interior) r = std::max(r, std::abs(lhs.values[i] - rhs.values[i]));
  }
  return r;
}

double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: order must be >= 0");
  double prev = 1.0;  // He_0
  if (n == 0) return prev;
  double cur = x;  // He_1
  for (int m = 1; m < n; ++m) {
    const double next = x * cur - m * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace weylstrip
