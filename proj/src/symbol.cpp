#include "weylstrip/symbol.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace weylstrip {

bool GrowthMap::is_zero() const {
  for (int a = 0; a < dim; ++a) {
    if (offset[a] != 0.0) return false;
    for (int b = 0; b < dim; ++b)
      if (linear[a][b] != 0.0) return false;
  }
  return true;
}

SymbolF2 zero_symbol(int dim) { return SymbolF2{dim, "0", {}, {}, {}}; }

SymbolF2 gaussian_symbol(int dim, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("gaussian symbol needs s > 0");
  SymbolF2 sym;
  sym.dim = dim;
  sym.name = "gaussian(" + std::to_string(s) + ")";
  const double pref = std::pow(2.0 * s, -0.5 * dim);
  sym.f2_hs0 = [dim, s, pref](const Vec&, const Vec& k) {
    return Complex{pref * std::exp(-dot(k, k, dim) / (4.0 * s)), 0.0};
  };
  sym.position = [dim, s](const Vec&, const Vec& xi) {
    return Complex{std::exp(-s * dot(xi, xi, dim)), 0.0};
  };
  return sym;
}

SymbolF2 multiplier_symbol(int dim, SymbolF2::BEval b, std::string name) {
  SymbolF2 sym;
  sym.dim = dim;
  sym.name = std::move(name);
  sym.multiplier = std::move(b);
  return sym;
}

SymbolF2 sampled_symbol(const PhaseGridFunction& f2_samples, std::string name) {
  if (f2_samples.side != PhaseSide::frequency)
    throw std::invalid_argument("sampled_symbol expects F2-side samples");
  auto data = std::make_shared<const PhaseGridFunction>(f2_samples);
  const GridSpec kspec = data->second_spec();
  const int d = data->xspec.dim;

  SymbolF2 sym;
  sym.dim = d;
  sym.name = std::move(name);
  sym.f2_hs0 = [data, kspec, d](const Vec& x, const Vec& k) {
    // Multilinear interpolation over the combined (x, k) axes.
    int lo[4];
    double fr[4];
    int nax = 0;
    auto locate = [&](const AxisSpec& ax, double v, const char* label) {
      const double u = (v + ax.half_width) / ax.spacing();
      int i0 = static_cast<int>(std::floor(u));
      double f = u - i0;
      if (i0 == ax.points - 1 && f < 1e-9) {
        i0 -= 1;
        f = 1.0;
      }
      if (i0 < 0 || i0 > ax.points - 2) {
        std::ostringstream msg;
        msg << "sampled symbol: " << label << " shift " << v
            << " outside the sampled box [" << -ax.half_width << ", "
            << ax.coord(ax.points - 1) << "]";
        throw std::runtime_error(msg.str());
      }
      lo[nax] = i0;
      fr[nax] = f;
      ++nax;
    };
    for (int a = 0; a < d; ++a) locate(data->xspec.axis[a], x[a], "x");
    for (int a = 0; a < d; ++a) locate(kspec.axis[a], k[a], "k");

    const std::size_t rl = kspec.size();
    auto value_at = [&](const int* idx) {
      std::size_t xf = idx[0];
      if (d == 2) xf = xf * data->xspec.axis[1].points + idx[1];
      std::size_t kf = idx[d];
      if (d == 2) kf = kf * kspec.axis[1].points + idx[d + 1];
      return data->values[xf * rl + kf];
    };

    Complex acc{};
    const int corners = 1 << nax;
    for (int cbits = 0; cbits < corners; ++cbits) {
      double w = 1.0;
      int idx[4];
      for (int a = 0; a < nax; ++a) {
        const int up = (cbits >> a) & 1;
        idx[a] = lo[a] + up;
        w *= up ? fr[a] : (1.0 - fr[a]);
      }
      if (w != 0.0) acc += w * value_at(idx);
    }
    return acc;
  };
  return sym;
}

namespace {

SymbolF2::F2Eval sum_f2(SymbolF2::F2Eval a, SymbolF2::F2Eval b) {
  if (!a) return b;
  if (!b) return a;
  return [a = std::move(a), b = std::move(b)](const Vec& x, const Vec& k) {
    return a(x, k) + b(x, k);
  };
}

}  // namespace

SymbolF2 symbol_sum(const SymbolF2& a, const SymbolF2& b) {
  if (a.dim != b.dim) throw std::invalid_argument("symbol_sum: dimension mismatch");
  SymbolF2 out;
  out.dim = a.dim;
  out.name = "(" + a.name + " + " + b.name + ")";
  out.f2_hs0 = sum_f2(a.f2_hs0, b.f2_hs0);
  if (a.multiplier && b.multiplier) {
    out.multiplier = [ba = a.multiplier, bb = b.multiplier](const Vec& x) {
      return ba(x) + bb(x);
    };
  } else if (a.multiplier) {
    out.multiplier = a.multiplier;
  } else if (b.multiplier) {
    out.multiplier = b.multiplier;
  }
  return out;
}

SymbolF2 symbol_scale(Complex alpha, const SymbolF2& a) {
  SymbolF2 out;
  out.dim = a.dim;
  out.name = "scaled(" + a.name + ")";
  if (a.f2_hs0)
    out.f2_hs0 = [alpha, e = a.f2_hs0](const Vec& x, const Vec& k) { return alpha * e(x, k); };
  if (a.multiplier)
    out.multiplier = [alpha, b = a.multiplier](const Vec& x) { return alpha * b(x); };
  if (a.position)
    out.position = [alpha, e = a.position](const Vec& x, const Vec& xi) {
      return alpha * e(x, xi);
    };
  return out;
}

Complex symbol_g(const SymbolF2& sym, const GrowthMap& m, const Vec& x, const Vec& k) {
  if (!sym.has_hs0()) return Complex{};
  if (sym.dim != m.dim) throw std::invalid_argument("symbol_g: dimension mismatch");
  const double e = std::abs(dot(k, m(x), sym.dim));
  const Complex f2 = sym.f2_hs0(x, k);
  if (f2 == 0.0) return Complex{};
  const double pref = std::pow(kTwoPi, -0.5 * sym.dim);
  if (e <= 200.0) return pref * f2 * std::exp(e);
  const double lmag = std::log(std::abs(f2)) + e;
  if (lmag > kExpCap)
    throw std::runtime_error("g blow-up: symbol not in HS0(M) on this grid");
  return std::polar(pref * std::exp(lmag), std::arg(f2));
}

namespace {

HsNormReport hs_norm_impl(const SymbolF2& sym, const GrowthMap& m, const GridSpec& xspec,
                          const GridSpec& kspec, bool parallel) {
  xspec.validate();
  kspec.validate();
  HsNormReport rep;
  rep.k_spec = kspec;
  if (sym.has_hs0()) {
    rep.g_max.assign(kspec.size(), 0.0);
    const std::size_t nx = xspec.size();
    parallel_for(kspec.size(), parallel, [&](std::size_t kk) {
      const Vec k = kspec.point(kk);
      double gm = 0.0;
      for (std::size_t xx = 0; xx < nx; ++xx)
        gm = std::max(gm, std::abs(symbol_g(sym, m, xspec.point(xx), k)));
      rep.g_max[kk] = gm;
    });
    rep.hs0_norm = quadrature(kspec, rep.g_max);
  }
  if (sym.has_multiplier()) {
    double bm = 0.0;
    for (std::size_t xx = 0; xx < xspec.size(); ++xx)
      bm = std::max(bm, std::abs(sym.multiplier(xspec.point(xx))));
    if (!std::isfinite(bm)) throw std::runtime_error("non-finite samples");
    rep.b_norm = bm;
  }
  rep.total = rep.hs0_norm + rep.b_norm;
  return rep;
}

}  // namespace

HsNormReport hs_norm(const SymbolF2& sym, const GrowthMap& m, const GridSpec& xspec,
                     const GridSpec& kspec) {
  return hs_norm_impl(sym, m, xspec, kspec, true);
}

Complex strip_extend(const SymbolF2& sym, const GrowthMap& m, const Vec& x,
                     const Vec& xi, double t, const GridSpec& kspec) {
  if (std::abs(t) > 1.0) throw std::invalid_argument("strip_extend: |t| must be <= 1");
  kspec.validate();
  Complex acc{};
  if (sym.has_hs0()) {
    const Vec mx = m(x);
    acc = pairwise_sum<Complex>(kspec.size(), [&](std::size_t i) {
      const Vec k = kspec.point(i);
      const Complex phase{-t * dot(k, mx, sym.dim), dot(k, xi, sym.dim)};
      return sym.f2_hs0(x, k) * std::exp(phase);
    });
    acc *= std::pow(kTwoPi, -0.5 * sym.dim) * kspec.cell_volume();
  }
  return acc;
}

GrowthPair quadratic_growth_pair(const QuadraticPotential& pot, const PExponent& p) {
  GrowthMap m;
  m.dim = pot.dim;
  const double c2mp = p.mp * pot.c * pot.c;
  for (int a = 0; a < pot.dim; ++a)
    for (int b = 0; b < pot.dim; ++b) m.linear[a][b] = c2mp * pot.n_matrix[a][b];
  m.offset = scale(0.5 * p.mp * pot.c, pot.linear);
  return GrowthPair{m, 0.0};
}

GrowthPairCheck validate_growth_pair(const Potential& pot, const PExponent& p,
                                     const GrowthPair& gp, const GridSpec& spec) {
  spec.validate();
  const std::size_t n = spec.size();
  const double half_gap = std::abs(0.5 - (p.is_inf() ? 0.0 : 1.0 / p.p));
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = pot.value(spec.point(i));

  std::vector<double> row_max(n, 0.0);
  std::vector<std::size_t> row_arg(n, 0);
  parallel_for(n, true, [&](std::size_t i) {
    const Vec x = spec.point(i);
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Vec y = spec.point(j);
      const double lhs = half_gap * std::abs(phi[i] - phi[j]);
      const Vec mid = gp.map(scale(0.5 / pot.c, add(x, y)));
      const double rhs = std::abs(dot(scale(1.0 / pot.c, sub(x, y)), mid, pot.dim));
      const double dev = std::abs(lhs - rhs);
      if (dev > best) {
        best = dev;
        arg = j;
      }
    }
    row_max[i] = best;
    row_arg[i] = arg;
  });

  GrowthPairCheck chk;
  std::size_t arg_i = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (row_max[i] > chk.epsilon_hat) {
      chk.epsilon_hat = row_max[i];
      arg_i = i;
    }
  }
  chk.argmax_x = spec.point(arg_i);
  chk.argmax_y = spec.point(row_arg[arg_i]);
  return chk;
}

double r_bound_integral(const std::vector<double>& g, const GridSpec& kspec) {
  kspec.validate();
  const std::size_t n = kspec.size();
  if (g.size() != n) throw std::invalid_argument("r_bound_integral: size mismatch");
  for (double v : g)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("r_bound_integral: G must be finite and >= 0");

  std::vector<double> radius(n);
  for (std::size_t i = 0; i < n; ++i) radius[i] = norm2(kspec.point(i), kspec.dim);

  std::vector<double> tail_sup(n, 0.0);
  parallel_for(n, true, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (radius[j] >= radius[i]) s = std::max(s, g[j]);
    tail_sup[i] = s;
  });
  return quadrature(kspec, tail_sup);
}

namespace {

PhaseGridFunction materialize_f2_impl(const SymbolF2& sym, const GridSpec& xspec,
                                      const GridSpec& xi_spec, bool parallel) {
  xspec.validate();
  xi_spec.validate();
  PhaseGridFunction out{xspec, xi_spec, PhaseSide::frequency, {}};
  const GridSpec kspec = out.second_spec();
  const std::size_t rl = kspec.size();
  out.values.assign(xspec.size() * rl, Complex{});
  if (!sym.has_hs0()) return out;
  parallel_for(xspec.size(), parallel, [&](std::size_t r) {
    const Vec x = xspec.point(r);
    Complex* dst = out.values.data() + r * rl;
    for (std::size_t j = 0; j < rl; ++j) dst[j] = sym.f2_hs0(x, kspec.point(j));
  });
  return out;
}

}  // namespace

PhaseGridFunction materialize_f2(const SymbolF2& sym, const GridSpec& xspec,
                                 const GridSpec& xi_spec) {
  return materialize_f2_impl(sym, xspec, xi_spec, true);
}

PhaseGridFunction materialize_position(const SymbolF2& sym, const GridSpec& xspec,
                                       const GridSpec& xi_spec) {
  if (!sym.position)
    throw std::invalid_argument("symbol has no position-side evaluator");
  PhaseGridFunction pos =
      PhaseGridFunction::sample(xspec, xi_spec, PhaseSide::position, sym.position);
  return pos;
}

namespace serial {

HsNormReport hs_norm(const SymbolF2& sym, const GrowthMap& m, const GridSpec& xspec,
                     const GridSpec& kspec) {
  return hs_norm_impl(sym, m, xspec, kspec, false);
}

PhaseGridFunction materialize_f2(const SymbolF2& sym, const GridSpec& xspec,
                                 const GridSpec& xi_spec) {
  return materialize_f2_impl(sym, xspec, xi_spec, false);
}

}  // namespace serial

}  // namespace weylstrip
