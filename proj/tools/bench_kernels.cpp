// Timing comparison of the OpenMP kernels against their serial reference
// implementations, plus a bit-exactness check between the two paths.

#include <chrono>
#include <cstdio>
#include <functional>

#include "weylstrip/moyal.hpp"
#include "weylstrip/ousg.hpp"
#include "weylstrip/quantize.hpp"

using namespace weylstrip;

namespace {

double run_ms(const std::function<void()>& fn) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-28s %10.2f %10.2f %8.2fx %12.3g\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, max_diff);
}

double max_cdiff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %9s %12s\n", "kernel", "serial/ms", "omp/ms", "speedup",
              "max|delta|");

  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  const Potential potc = pot.as_potential();
  const PExponent p4 = PExponent::make(4.0);
  const SymbolF2 at = ou_semigroup_symbol(pot, Complex{0.5, 0.0});

  {
    const GridSpec g = GridSpec::uniform(1, 12.0, 512);
    const PhaseGridFunction a = materialize_position(at, g, g);
    PhaseGridFunction fs{}, fp{};
    const double ts = run_ms([&] { fs = serial::partial_fourier_forward(a); });
    const double tp = run_ms([&] { fp = partial_fourier_forward(a); });
    row("partial_fourier 512x512", ts, tp, max_cdiff(fs.values, fp.values));
  }

  {
    const GridSpec g = GridSpec::uniform(1, 12.0, 256);
    KernelMatrix ks, kp;
    const double ts = run_ms([&] { ks = serial::build_kernel(at, potc, p4, g); });
    const double tp = run_ms([&] { kp = build_kernel(at, potc, p4, g); });
    row("build_kernel n=256", ts, tp, max_cdiff(ks.entries, kp.entries));
  }

  {
    const GridSpec g = GridSpec::uniform(1, 12.0, 192);
    const GrowthMap m = quadratic_growth_pair(pot, p4).map;
    HsNormReport rs, rp;
    const double ts = run_ms([&] { rs = serial::hs_norm(at, m, g, g.frequency_dual()); });
    const double tp = run_ms([&] { rp = hs_norm(at, m, g, g.frequency_dual()); });
    double d = std::abs(rs.total - rp.total);
    for (std::size_t i = 0; i < rs.g_max.size(); ++i)
      d = std::max(d, std::abs(rs.g_max[i] - rp.g_max[i]));
    row("hs_norm 192x192", ts, tp, d);
  }

  {
    const GridSpec g = GridSpec::uniform(1, 12.0, 96);
    const GridSpec v = GridSpec::uniform(1, 12.0, 256).frequency_dual();
    const SymbolF2 prod = moyal_00(at, at, v);
    PhaseGridFunction fs{}, fp{};
    const double ts = run_ms([&] { fs = serial::materialize_f2(prod, g, g); });
    const double tp = run_ms([&] { fp = materialize_f2(prod, g, g); });
    row("moyal product 96x96x256", ts, tp, max_cdiff(fs.values, fp.values));
  }

  {
    const SymmetricEig eig = eigh(pot.n_matrix, 1);
    RegionBitmap bs, bp;
    const double ts = run_ms(
        [&] { bs = serial::rasterize_region(eig, p4, std::nullopt, -3, 3, -3, 3, 384); });
    const double tp =
        run_ms([&] { bp = rasterize_region(eig, p4, std::nullopt, -3, 3, -3, 3, 384); });
    double d = 0.0;
    for (std::size_t i = 0; i < bs.inside.size(); ++i)
      d = std::max(d, std::abs(double(bs.inside[i]) - double(bp.inside[i])));
    row("region raster 384x384", ts, tp, d);
  }

  return 0;
}
