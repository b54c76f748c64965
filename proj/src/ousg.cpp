#include "weylstrip/ousg.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace weylstrip {

namespace {

// tanh via exp(-2w) on the Re >= 0 half-plane; never overflows away from the
// poles of cosh.
Complex stable_tanh(Complex w) {
  if (w.real() < 0.0) return -stable_tanh(-w);
  const Complex em = std::exp(-2.0 * w);
  return (1.0 - em) / (1.0 + em);
}

// e^w / cosh(w) = 2 / (1 + e^{-2w}), the per-eigenvalue factor of
// det(cosh(zN)^{-1} e^{zN}).
Complex cosh_exp_factor(Complex w) {
  if (w.real() >= 0.0) return 2.0 / (1.0 + std::exp(-2.0 * w));
  const Complex e2 = std::exp(2.0 * w);
  return 2.0 * e2 / (1.0 + e2);
}

double pole_distance(Complex w) {
  // poles of tanh at w = i pi (m + 1/2)
  const double m = std::round(w.imag() / kPi - 0.5);
  double best = std::numeric_limits<double>::infinity();
  for (double mm : {m - 1.0, m, m + 1.0})
    best = std::min(best, std::hypot(w.real(), w.imag() - kPi * (mm + 0.5)));
  return best;
}

double eig_scale(const SymmetricEig& eig) {
  return std::max({1.0, std::abs(eig.eigenvalues[0]), std::abs(eig.eigenvalues[1])});
}

void require_positive_definite(const SymmetricEig& eig) {
  for (int i = 0; i < eig.dim; ++i)
    if (!(eig.eigenvalues[i] > 0.0))
      throw std::invalid_argument("region predicates require N positive definite");
}

}  // namespace

SymmetricEig eigh(const Mat& n, int dim) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("eigh: dimension must be 1 or 2");
  SymmetricEig e;
  e.dim = dim;
  if (dim == 1) {
    e.eigenvalues = {n[0][0], 0.0};
    e.vectors = {{{1.0, 0.0}, {0.0, 0.0}}};
    return e;
  }
  const double a = n[0][0];
  const double c = n[1][1];
  const double b = 0.5 * (n[0][1] + n[1][0]);
  if (std::abs(n[0][1] - n[1][0]) > 1e-12 * std::max({1.0, std::abs(a), std::abs(c)}))
    throw std::invalid_argument("eigh: matrix must be symmetric");

  const double th = 0.5 * std::atan2(2.0 * b, a - c);
  const double cs = std::cos(th);
  const double sn = std::sin(th);
  double l1 = cs * cs * a + 2.0 * cs * sn * b + sn * sn * c;
  double l2 = sn * sn * a - 2.0 * cs * sn * b + cs * cs * c;
  Vec v1{cs, sn};
  Vec v2{-sn, cs};
  if (l1 > l2) {
    std::swap(l1, l2);
    std::swap(v1, v2);
  }
  e.eigenvalues = {l1, l2};
  e.vectors = {{{v1[0], v2[0]}, {v1[1], v2[1]}}};

  const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(c), std::abs(b)});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double rec = 0.0;
      for (int s = 0; s < 2; ++s)
        rec += e.vectors[i][s] * e.eigenvalues[s] * e.vectors[j][s];
      if (std::abs(rec - n[i][j]) > tol)
        throw std::logic_error("eigh: reconstruction check failed");
    }
  return e;
}

Complex ou_time_scalar(double lambda, Complex z, double pole_guard) {
  if (lambda <= 0.0) return z;  // entire extension of tanh(z l)/l at l = 0
  const Complex w = z * lambda;
  if (pole_distance(w) < pole_guard)
    throw std::runtime_error("z within delta_guard of a pole of tanh(zN)");
  return stable_tanh(w) / lambda;
}

ComplexSymMatrix ou_time_matrix(const SymmetricEig& eig, Complex z, double pole_guard) {
  CVec f{};
  for (int i = 0; i < eig.dim; ++i) {
    const double lam = eig.eigenvalues[i];
    const double tiny = 1e-14 * eig_scale(eig);
    f[i] = (lam > tiny) ? ou_time_scalar(lam, z, pole_guard) : z;
  }
  ComplexSymMatrix out;
  out.dim = eig.dim;
  for (int i = 0; i < eig.dim; ++i)
    for (int j = 0; j < eig.dim; ++j) {
      Complex s{};
      for (int t = 0; t < eig.dim; ++t)
        s += eig.vectors[i][t] * f[t] * eig.vectors[j][t];
      out.m[i][j] = s;
    }
  return out;
}

SymbolF2 ou_semigroup_symbol(const QuadraticPotential& pot, Complex z) {
  const int d = pot.dim;
  const SymmetricEig eig = eigh(pot.n_matrix, d);
  const double tiny = 1e-14 * eig_scale(eig);

  CVec f{}, finv{};
  Complex det_ce{1.0, 0.0};
  Complex det_inv_sqrt{1.0, 0.0};
  for (int i = 0; i < d; ++i) {
    const double lam = eig.eigenvalues[i];
    f[i] = (lam > tiny) ? ou_time_scalar(lam, z) : z;
    if (!(f[i].real() > 1e-12 * std::abs(f[i])))
      throw std::runtime_error("z outside the holomorphy region of the semigroup symbol");
    finv[i] = 1.0 / f[i];
    det_ce *= cosh_exp_factor(z * std::max(lam, 0.0));
    det_inv_sqrt *= 1.0 / std::sqrt(f[i]);
  }

  // principal-branch consistency: |det(N_z^{-1/2})|^2 = 1/|det(N_z)|
  {
    Complex det_nz{1.0, 0.0};
    for (int i = 0; i < d; ++i) det_nz *= f[i];
    const double lhs = std::norm(det_inv_sqrt);
    const double rhs = 1.0 / std::abs(det_nz);
    if (std::abs(lhs - rhs) > 1e-12 * std::max(lhs, rhs))
      throw std::logic_error("N_z^{-1/2} branch inconsistency");
  }

  struct Params {
    int d;
    double c;
    SymmetricEig eig;
    CVec f, finv;
    Mat n_matrix;
    Vec half_l;
    Complex pref_pos, pref_f2;
  };
  Params prm{d, pot.c, eig, f, finv, pot.n_matrix, scale(0.5, pot.linear), det_ce,
             std::pow(2.0, -0.5 * d) * std::pow(pot.c, d) * det_ce * det_inv_sqrt};

  auto qform = [](const Params& q, const CVec& coeff, const Vec& u) {
    Complex s{};
    for (int i = 0; i < q.d; ++i) {
      const double proj = dot(q.eig.column(i), u, q.d);
      s += coeff[i] * (proj * proj);
    }
    return s;
  };
  auto x_shift = [](const Params& q, const Vec& x) {
    return add(scale(q.c, matvec(q.n_matrix, x, q.d)), q.half_l);
  };

  SymbolF2 sym;
  sym.dim = d;
  {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "ou(z=%g%+gi)", z.real(), z.imag());
    sym.name = buf;
  }
  sym.position = [prm, qform, x_shift](const Vec& x, const Vec& xi) {
    const Complex arg =
        -qform(prm, prm.f, xi) / (prm.c * prm.c) - qform(prm, prm.f, x_shift(prm, x));
    return prm.pref_pos * std::exp(arg);
  };
  sym.f2_hs0 = [prm, qform, x_shift](const Vec& x, const Vec& k) {
    const Complex arg = -0.25 * prm.c * prm.c * qform(prm, prm.finv, k) -
                        qform(prm, prm.f, x_shift(prm, x));
    return prm.pref_f2 * std::exp(arg);
  };
  return sym;
}

double gaussian_majorant_rate(const SymmetricEig& eig, Complex z, const PExponent& p) {
  require_positive_definite(eig);
  double sigma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < eig.dim; ++i) {
    const Complex nz = ou_time_scalar(eig.eigenvalues[i], z);
    const double re = nz.real();
    const double mag = std::abs(nz);
    if (std::abs(re) < 1e-14 * mag)
      throw std::runtime_error("argument pi/2: sigma undefined");
    sigma = std::min(sigma, re / (mag * mag) - p.mp * p.mp / re);
  }
  return sigma;
}

namespace {

double majorant_det(const QuadraticPotential& pot, Complex z) {
  const SymmetricEig eig = eigh(pot.n_matrix, pot.dim);
  double det = 1.0;
  for (int i = 0; i < pot.dim; ++i) {
    const Complex nz = ou_time_scalar(eig.eigenvalues[i], z);
    det *= std::abs(cosh_exp_factor(z * eig.eigenvalues[i])) / std::sqrt(std::abs(nz));
  }
  return det;
}

}  // namespace

double gaussian_majorant(const QuadraticPotential& pot, const PExponent& p, Complex z,
                         const Vec& k) {
  const SymmetricEig eig = eigh(pot.n_matrix, pot.dim);
  const double sigma = gaussian_majorant_rate(eig, z, p);
  if (!(sigma > 0.0))
    throw std::runtime_error("z outside E^N: no integrable majorant");
  const double c = pot.c;
  const double pref = std::pow(c, pot.dim) /
                      (std::pow(2.0, pot.dim) * std::pow(kPi, 0.5 * pot.dim));
  return pref * majorant_det(pot, z) *
         std::exp(-0.25 * c * c * sigma * dot(k, k, pot.dim));
}

double gaussian_majorant_integral(const QuadraticPotential& pot, const PExponent& p,
                                  Complex z) {
  const SymmetricEig eig = eigh(pot.n_matrix, pot.dim);
  const double sigma = gaussian_majorant_rate(eig, z, p);
  if (!(sigma > 0.0))
    throw std::runtime_error("z outside E^N: no integrable majorant");
  double val = 1.0;
  for (int i = 0; i < pot.dim; ++i) {
    const Complex nz = ou_time_scalar(eig.eigenvalues[i], z);
    val *= std::abs(cosh_exp_factor(z * eig.eigenvalues[i])) /
           std::sqrt(sigma * std::abs(nz));
  }
  return val;
}

bool in_epperson_region(const SymmetricEig& eig, Complex z, const PExponent& p) {
  require_positive_definite(eig);
  for (int i = 0; i < eig.dim; ++i) {
    const double lam = eig.eigenvalues[i];
    const Complex w = z * lam;
    if (pole_distance(w) < 1e-12) return false;  // i pi (m + 1/2) / lambda
    const Complex nz = stable_tanh(w) / lam;
    if (!std::isfinite(nz.real()) || !std::isfinite(nz.imag())) return false;
    if (nz == 0.0) return false;  // zeros of tanh: spectrum not in the open sector
    if (!(std::abs(std::arg(nz)) < 0.5 * kPi - p.theta)) return false;
  }
  return true;
}

bool in_epperson_core(const SymmetricEig& eig, Complex z, const PExponent& p,
                      double eps, double delta) {
  require_positive_definite(eig);
  for (int i = 0; i < eig.dim; ++i) {
    const double lam = eig.eigenvalues[i];
    const Complex nz = stable_tanh(z * lam) / lam;
    if (!std::isfinite(nz.real()) || !std::isfinite(nz.imag())) return false;
    const double mag = std::abs(nz);
    if (mag == 0.0) return false;
    const double cos2 = (nz.real() / mag) * (nz.real() / mag);
    if (!(cos2 > p.mp * p.mp + eps)) return false;
    // lattice {i pi m / (2 lambda); m != 0}
    const double step = kPi / (2.0 * lam);
    const double m = std::round(z.imag() / step);
    double dist = std::numeric_limits<double>::infinity();
    for (double mm : {m - 1.0, m, m + 1.0}) {
      if (mm == 0.0) continue;  // the origin is not excluded
      dist = std::min(dist, std::hypot(z.real(), z.imag() - mm * step));
    }
    if (!(dist > delta)) return false;
  }
  return true;
}

Complex RegionBitmap::pixel_center(int i, int j) const {
  const double dre = (re1 - re0) / width;
  const double dim_ = (im1 - im0) / height;
  // offset-from-center form keeps conjugate pixels exactly mirrored when the
  // box is symmetric about the real axis
  const double re = 0.5 * (re0 + re1) + (i + 0.5 - 0.5 * width) * dre;
  const double im = 0.5 * (im0 + im1) + (j + 0.5 - 0.5 * height) * dim_;
  return Complex{re, im};
}

namespace {

RegionBitmap rasterize_impl(const SymmetricEig& eig, const PExponent& p,
                            const std::optional<EpsDelta>& core, double re0, double re1,
                            double im0, double im1, int resolution, bool parallel) {
  if (resolution < 16) throw std::invalid_argument("raster resolution must be >= 16");
  require_positive_definite(eig);
  RegionBitmap bm;
  bm.width = bm.height = resolution;
  bm.re0 = re0;
  bm.re1 = re1;
  bm.im0 = im0;
  bm.im1 = im1;
  bm.inside.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  parallel_for(bm.inside.size(), parallel, [&](std::size_t px) {
    const int i = static_cast<int>(px) % resolution;
    const int j = static_cast<int>(px) / resolution;
    const Complex z = bm.pixel_center(i, j);
    const bool in = core ? in_epperson_core(eig, z, p, core->eps, core->delta)
                         : in_epperson_region(eig, z, p);
    bm.inside[px] = in ? 1 : 0;
  });
  return bm;
}

}  // namespace

RegionBitmap rasterize_region(const SymmetricEig& eig, const PExponent& p,
                              const std::optional<EpsDelta>& core, double re0, double re1,
                              double im0, double im1, int resolution) {
  return rasterize_impl(eig, p, core, re0, re1, im0, im1, resolution, true);
}

namespace serial {

RegionBitmap rasterize_region(const SymmetricEig& eig, const PExponent& p,
                              const std::optional<EpsDelta>& core, double re0, double re1,
                              double im0, double im1, int resolution) {
  return rasterize_impl(eig, p, core, re0, re1, im0, im1, resolution, false);
}

}  // namespace serial

}  // namespace weylstrip
