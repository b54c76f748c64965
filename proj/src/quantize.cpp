#include "weylstrip/quantize.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace weylstrip {

namespace {

constexpr std::size_t kMaxRows = 4096;  // dense kernels only at desk scale

KernelMatrix build_kernel_impl(const SymbolF2& sym, const Potential& pot,
                               const PExponent& p, const GridSpec& spec, bool parallel) {
  spec.validate();
  if (sym.dim != spec.dim || pot.dim != spec.dim)
    throw std::invalid_argument("build_kernel: dimension mismatch");
  const std::size_t n = spec.size();
  if (n > kMaxRows) throw std::invalid_argument("build_kernel: more than 4096 rows");

  KernelMatrix k;
  k.spec = spec;
  k.p = p;
  k.c = pot.c;
  k.has_entries = sym.has_hs0();
  k.entries.assign(n * n, Complex{});
  k.b_diag.assign(n, Complex{});

  const double c = pot.c;
  const double w = 0.5 - (p.is_inf() ? 0.0 : 1.0 / p.p);

  std::vector<Vec> pts(n);
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = spec.point(i);
    phi[i] = pot.value(pts[i]);
  }

  if (k.has_entries) {
    const double pref =
        spec.cell_volume() * std::pow(kTwoPi, -0.5 * spec.dim) * std::pow(c, -spec.dim);
    parallel_for(n, parallel, [&](std::size_t y) {
      Complex* row = k.entries.data() + y * n;
      for (std::size_t x = 0; x < n; ++x) {
        const double wexp = w * (phi[y] - phi[x]);
        if (std::abs(wexp) > kExpCap) throw std::runtime_error("weight overflow");
        const Vec mid = scale(0.5 / c, add(pts[x], pts[y]));
        const Vec dif = scale(1.0 / c, sub(pts[x], pts[y]));
        row[x] = pref * sym.f2_hs0(mid, dif) * std::exp(wexp);
      }
    });
    for (const Complex& v : k.entries)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::runtime_error("non-finite kernel entries");
  }
  if (sym.has_multiplier()) {
    for (std::size_t y = 0; y < n; ++y) k.b_diag[y] = sym.multiplier(scale(1.0 / c, pts[y]));
  }
  return k;
}

GridFunction kernel_apply_impl(const KernelMatrix& k, const GridFunction& f,
                               bool parallel) {
  if (!(f.spec == k.spec)) throw std::invalid_argument("kernel_apply: grid mismatch");
  const std::size_t n = k.rows();
  GridFunction out = GridFunction::zeros(f.spec);
  parallel_for(n, parallel, [&](std::size_t y) {
    Complex acc{};
    if (k.has_entries) {
      const Complex* row = k.entries.data() + y * n;
      acc = pairwise_sum<Complex>(n, [&](std::size_t x) { return row[x] * f.values[x]; });
    }
    out.values[y] = acc + k.b_diag[y] * f.values[y];
  });
  return out;
}

double weighted_norm(const GridFunction& f, double p) {
  const double vol = f.spec.cell_volume();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const double s = pairwise_sum<double>(
      f.values.size(), [&](std::size_t i) { return std::pow(std::abs(f.values[i]), p); });
  return std::pow(vol * s, 1.0 / p);
}

}  // namespace

KernelMatrix build_kernel(const SymbolF2& sym, const Potential& pot, const PExponent& p,
                          const GridSpec& spec) {
  return build_kernel_impl(sym, pot, p, spec, true);
}

GridFunction kernel_apply(const KernelMatrix& k, const GridFunction& f) {
  return kernel_apply_impl(k, f, true);
}

GridFunction kernel_apply_adjoint(const KernelMatrix& k, const GridFunction& f) {
  if (!(f.spec == k.spec)) throw std::invalid_argument("kernel_apply_adjoint: grid mismatch");
  const std::size_t n = k.rows();
  GridFunction out = GridFunction::zeros(f.spec);
  parallel_for(n, true, [&](std::size_t x) {
    Complex acc{};
    if (k.has_entries) {
      acc = pairwise_sum<Complex>(
          n, [&](std::size_t y) { return std::conj(k.entries[y * n + x]) * f.values[y]; });
    }
    out.values[x] = acc + std::conj(k.b_diag[x]) * f.values[x];
  });
  return out;
}

GridFunction kernel_apply_mu(const KernelMatrix& k, const Potential& pot,
                             const GridFunction& f) {
  if (!(f.spec == k.spec)) throw std::invalid_argument("kernel_apply_mu: grid mismatch");
  const std::size_t n = k.rows();
  GridFunction out = GridFunction::zeros(f.spec);
  if (k.has_entries) {
    const GridFunction g = u_p_forward(pot, k.p, f);
    GridFunction h = GridFunction::zeros(f.spec);
    parallel_for(n, true, [&](std::size_t y) {
      const Complex* row = k.entries.data() + y * n;
      h.values[y] =
          pairwise_sum<Complex>(n, [&](std::size_t x) { return row[x] * g.values[x]; });
    });
    out = u_p_inverse(pot, k.p, h);
  }
  for (std::size_t y = 0; y < n; ++y) out.values[y] += k.b_diag[y] * f.values[y];
  return out;
}

double young_upper_bound(const HsNormReport& report, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("young_upper_bound: epsilon must be >= 0");
  return std::exp(epsilon) * report.total;
}

double norm_lower_estimate(const KernelMatrix& k, double p, int trials,
                           std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("norm_lower_estimate: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const GridSpec& spec = k.spec;
  auto random_bump = [&]() {
    // a handful of randomly placed complex Gaussian bumps: smooth, decaying
    // towards the box boundary
    struct Bump {
      Complex amp;
      Vec center;
      double width;
    };
    std::array<Bump, 4> bumps;
    for (auto& b : bumps) {
      const double mag = 0.2 + 0.8 * unit(rng);
      const double ph = kTwoPi * unit(rng);
      b.amp = std::polar(mag, ph);
      for (int a = 0; a < spec.dim; ++a)
        b.center[a] = spec.axis[a].half_width * (unit(rng) - 0.5);
      b.width = spec.axis[0].half_width * (0.08 + 0.2 * unit(rng));
    }
    GridFunction f = GridFunction::zeros(spec);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const Vec x = spec.point(i);
      Complex v{};
      for (const auto& b : bumps) {
        const Vec d = sub(x, b.center);
        v += b.amp * std::exp(-dot(d, d, spec.dim) / (2.0 * b.width * b.width));
      }
      f.values[i] = v;
    }
    return f;
  };

  double best = 0.0;
  GridFunction power_seed = GridFunction::zeros(spec);
  for (int t = 0; t < trials; ++t) {
    const GridFunction f = random_bump();
    if (t == 0) power_seed = f;
    const double nf = weighted_norm(f, p);
    if (nf == 0.0) continue;
    best = std::max(best, weighted_norm(kernel_apply(k, f), p) / nf);
  }

  if (p == 2.0) {
    GridFunction v = power_seed;
    for (int it = 0; it < 60; ++it) {
      GridFunction w = kernel_apply_adjoint(k, kernel_apply(k, v));
      const double nw = weighted_norm(w, 2.0);
      if (nw == 0.0) break;
      for (auto& c : w.values) c /= nw;
      v = w;
    }
    const double nv = weighted_norm(v, 2.0);
    if (nv > 0.0) best = std::max(best, weighted_norm(kernel_apply(k, v), 2.0) / nv);
  }
  return best;
}

std::vector<Complex> dense_operator(const KernelMatrix& k) {
  const std::size_t n = k.rows();
  std::vector<Complex> m = k.entries;
  for (std::size_t y = 0; y < n; ++y) m[y * n + y] += k.b_diag[y];
  return m;
}

std::vector<Complex> matmul(const std::vector<Complex>& a, const std::vector<Complex>& b,
                            std::size_t n) {
  if (a.size() != n * n || b.size() != n * n)
    throw std::invalid_argument("matmul: size mismatch");
  std::vector<Complex> c(n * n, Complex{});
  parallel_for(n, true, [&](std::size_t i) {
    Complex* crow = c.data() + i * n;
    for (std::size_t t = 0; t < n; ++t) {
      const Complex av = a[i * n + t];
      if (av == 0.0) continue;
      const Complex* brow = b.data() + t * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  });
  return c;
}

double frobenius(const std::vector<Complex>& a) {
  const double s =
      pairwise_sum<double>(a.size(), [&](std::size_t i) { return std::norm(a[i]); });
  return std::sqrt(s);
}

namespace serial {

KernelMatrix build_kernel(const SymbolF2& sym, const Potential& pot, const PExponent& p,
                          const GridSpec& spec) {
  return build_kernel_impl(sym, pot, p, spec, false);
}

GridFunction kernel_apply(const KernelMatrix& k, const GridFunction& f) {
  return kernel_apply_impl(k, f, false);
}

}  // namespace serial

}  // namespace weylstrip
