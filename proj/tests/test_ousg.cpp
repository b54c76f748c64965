#include <doctest.h>

#include <cmath>
#include <random>

#include "weylstrip/grid.hpp"
#include "weylstrip/ousg.hpp"

using namespace weylstrip;

TEST_CASE("eigh: random symmetric 2x2 reconstruction, ascending order") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Mat n{};
    n[0][0] = 2.0 * u(rng);
    n[1][1] = 2.0 * u(rng);
    n[0][1] = n[1][0] = 1.5 * u(rng);
    const SymmetricEig e = eigh(n, 2);
    CHECK(e.eigenvalues[0] <= e.eigenvalues[1]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double rec = 0.0;
        for (int s = 0; s < 2; ++s)
          rec += e.vectors[i][s] * e.eigenvalues[s] * e.vectors[j][s];
        CHECK(std::abs(rec - n[i][j]) < 1e-12);
      }
  }
}

TEST_CASE("ou_time_matrix: scalar values, zero time, pole refusal") {
  Mat n{};
  n[0][0] = 0.5;
  const SymmetricEig e = eigh(n, 1);

  const ComplexSymMatrix m1 = ou_time_matrix(e, Complex{1.0, 0.0});
  CHECK(std::abs(m1.m[0][0] - 2.0 * std::tanh(0.5)) < 1e-15);

  const ComplexSymMatrix m0 = ou_time_matrix(e, Complex{0.0, 0.0});
  CHECK(std::abs(m0.m[0][0]) == 0.0);

  CHECK_THROWS_WITH(ou_time_matrix(e, Complex{0.0, kPi}),
                    "z within delta_guard of a pole of tanh(zN)");
}

TEST_CASE("ou symbol: two closed forms agree in the classical scaling") {
  // N = 1/2, l = 0, c = sqrt(2): a_t(x, xi) = (2/(1+e^{-t})) e^{-s_t(x^2+xi^2)}
  const QuadraticPotential pot = QuadraticPotential::classical(1, std::sqrt(2.0));
  for (double t : {0.1, 1.0, 10.0}) {
    const SymbolF2 a = ou_semigroup_symbol(pot, Complex{t, 0.0});
    const double st = (1.0 - std::exp(-t)) / (1.0 + std::exp(-t));
    const double pref = 2.0 / (1.0 + std::exp(-t));
    double err = 0.0;
    for (double x : {-3.0, -0.5, 0.0, 1.0, 2.5})
      for (double xi : {-2.0, 0.0, 1.5}) {
        const double want = pref * std::exp(-st * (x * x + xi * xi));
        err = std::max(err, std::abs(a.position(Vec{x, 0}, Vec{xi, 0}) - want));
      }
    CHECK(err < 1e-13);
  }
}

TEST_CASE("ou symbol: short-time limit is the identity symbol") {
  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  const SymbolF2 a = ou_semigroup_symbol(pot, Complex{1e-8, 0.0});
  for (double x : {-3.0, 0.0, 3.0})
    for (double xi : {-3.0, 2.0})
      CHECK(std::abs(a.position(Vec{x, 0}, Vec{xi, 0}) - 1.0) < 1e-5);
}

TEST_CASE("ou symbol: FFT of the position side matches the closed-form F2") {
  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  const SymbolF2 a = ou_semigroup_symbol(pot, Complex{0.8, 0.0});
  const GridSpec g = GridSpec::uniform(1, 10.0, 256);
  const PhaseGridFunction pos = materialize_position(a, g, g);
  const PhaseGridFunction f2_fft = partial_fourier_forward(pos);
  const PhaseGridFunction f2_ref = materialize_f2(a, g, g);
  double err = 0.0;
  for (std::size_t i = 0; i < f2_fft.values.size(); ++i)
    err = std::max(err, std::abs(f2_fft.values[i] - f2_ref.values[i]));
  CHECK(err < 1e-7);
}

TEST_CASE("ou symbol: refuses z outside the holomorphy region") {
  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  CHECK_THROWS(ou_semigroup_symbol(pot, Complex{-0.5, 0.0}));
  CHECK_THROWS(ou_semigroup_symbol(pot, Complex{0.0, 1.0}));  // purely imaginary
}

TEST_CASE("gaussian_majorant_rate: scalar arithmetic") {
  Mat n{};
  n[0][0] = 0.5;
  const SymmetricEig e = eigh(n, 1);

  // p = 2, real time: sigma = 1/n_z > 0
  const double nz = 2.0 * std::tanh(0.5);
  CHECK(gaussian_majorant_rate(e, Complex{1.0, 0.0}, PExponent::make(2.0)) ==
        doctest::Approx(1.0 / nz).epsilon(1e-14));

  // p = 4: sigma = (1 - 1/4) / n_z
  CHECK(gaussian_majorant_rate(e, Complex{1.0, 0.0}, PExponent::make(4.0)) ==
        doctest::Approx(0.75 / nz).epsilon(1e-12));

  // purely imaginary z: Re(N_z) = 0
  CHECK_THROWS_WITH(gaussian_majorant_rate(e, Complex{0.0, 0.7}, PExponent::make(4.0)),
                    "argument pi/2: sigma undefined");
}

TEST_CASE("gaussian majorant: quadrature matches the closed-form integral") {
  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  const PExponent p4 = PExponent::make(4.0);
  for (Complex z : {Complex{0.5, 0.0}, Complex{1.0, 0.4}, Complex{2.0, -0.8}}) {
    const SymmetricEig eig = eigh(pot.n_matrix, 1);
    const double sigma = gaussian_majorant_rate(eig, z, p4);
    REQUIRE(sigma > 0.0);
    const double span = std::max(40.0, 9.0 / std::sqrt(0.25 * sigma));
    const GridSpec ks = GridSpec::uniform(1, span, 512);
    std::vector<double> g(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i)
      g[i] = gaussian_majorant(pot, p4, z, ks.point(i));
    const double closed = gaussian_majorant_integral(pot, p4, z);
    CHECK(std::abs(quadrature(ks, g) - closed) < 1e-8 * closed);
  }
}

TEST_CASE("gaussian majorant: dominates the grid majorant of the symbol") {
  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  const PExponent p4 = PExponent::make(4.0);
  const Complex z{0.7, 0.3};
  const SymbolF2 a = ou_semigroup_symbol(pot, z);
  const GrowthMap m = quadratic_growth_pair(pot, p4).map;
  const GridSpec xs = GridSpec::uniform(1, 12.0, 128);
  const GridSpec ks = xs.frequency_dual();
  const HsNormReport rep = hs_norm(a, m, xs, ks);
  std::vector<double> g(ks.size());
  for (std::size_t j = 0; j < ks.size(); ++j) {
    g[j] = gaussian_majorant(pot, p4, z, ks.point(j));
    CHECK(rep.g_max[j] <= g[j] * (1 + 1e-9) + 1e-300);
  }
  CHECK(rep.hs0_norm <= quadrature(ks, g) + 1e-6);

  // positive prefactor at k = 0 for real z
  CHECK(gaussian_majorant(pot, p4, Complex{1.0, 0.0}, Vec{0, 0}) > 0.0);
}

TEST_CASE("gaussian majorant: radial decay makes the tail-sup integral collapse") {
  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  const PExponent p4 = PExponent::make(4.0);
  const Complex z{0.9, 0.2};
  const GridSpec ks = GridSpec::uniform(1, 30.0, 256);
  std::vector<double> g(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    g[i] = gaussian_majorant(pot, p4, z, ks.point(i));
  const double a = r_bound_integral(g, ks);
  const double b = quadrature(ks, g);
  CHECK(std::abs(a - b) < 1e-12 * b);
}

TEST_CASE("epperson region: axis cases and the sigma equivalence") {
  Mat n{};
  n[0][0] = 0.5;
  const SymmetricEig e = eigh(n, 1);
  const PExponent p4 = PExponent::make(4.0);

  CHECK_FALSE(in_epperson_region(e, Complex{0.0, 1.0}, p4));
  for (double t : {0.1, 1.0, 10.0})
    CHECK(in_epperson_region(e, Complex{t, 0.0}, p4));

  // p = 2: membership is the right half-plane
  const PExponent p2 = PExponent::make(2.0);
  for (double re : {-2.0, -0.3})
    for (double im : {-1.0, 0.0, 2.0})
      CHECK_FALSE(in_epperson_region(e, Complex{re, im}, p2));
  for (double re : {0.2, 1.5})
    for (double im : {-2.0, 0.0, 1.0})
      CHECK(in_epperson_region(e, Complex{re, im}, p2));

  // sigma > 0 iff membership, sampled away from poles on the right half-plane
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const Complex z{0.05 + 3.0 * i / 63.0, -3.0 + 6.0 * j / 63.0};
      bool sigma_pos = false;
      try {
        sigma_pos = gaussian_majorant_rate(e, z, p4) > 0.0;
      } catch (const std::exception&) {
        sigma_pos = false;
      }
      CHECK(sigma_pos == in_epperson_region(e, z, p4));
    }
}

TEST_CASE("epperson core: monotone nesting and real-time membership") {
  Mat n{};
  n[0][0] = 0.5;
  const SymmetricEig e = eigh(n, 1);
  const PExponent p4 = PExponent::make(4.0);
  CHECK(in_epperson_core(e, Complex{1.0, 0.0}, p4, 0.05, 0.1));
  CHECK_FALSE(in_epperson_core(e, Complex{0.0, 1.0}, p4, 0.05, 0.1));

  const RegionBitmap tight =
      rasterize_region(e, p4, EpsDelta{0.2, 0.3}, -3, 3, -3, 3, 64);
  const RegionBitmap loose =
      rasterize_region(e, p4, EpsDelta{0.05, 0.1}, -3, 3, -3, 3, 64);
  for (std::size_t i = 0; i < tight.inside.size(); ++i)
    if (tight.inside[i]) CHECK(loose.inside[i]);

  // delta clause: points near i pi m / (2 lambda) are excluded
  const double lattice = kPi;  // lambda = 1/2 -> step pi
  CHECK_FALSE(in_epperson_core(e, Complex{0.05, lattice}, p4, 0.0, 0.2));
}

TEST_CASE("region raster: half-plane at p=2, conjugation symmetry, serial match") {
  Mat n{};
  n[0][0] = 0.5;
  const SymmetricEig e = eigh(n, 1);
  const PExponent p2 = PExponent::make(2.0);
  const RegionBitmap bm = rasterize_region(e, p2, std::nullopt, -3, 3, -3, 3, 64);
  for (int j = 0; j < bm.height; ++j)
    for (int i = 0; i < bm.width; ++i) {
      const Complex z = bm.pixel_center(i, j);
      CHECK(bm.at(i, j) == (z.real() > 0.0 ? 1 : 0));
      CHECK(bm.at(i, j) == bm.at(i, bm.height - 1 - j));
    }
  const RegionBitmap bs = serial::rasterize_region(e, p2, std::nullopt, -3, 3, -3, 3, 64);
  CHECK(bs.inside == bm.inside);

  CHECK_THROWS(rasterize_region(e, p2, std::nullopt, -1, 1, -1, 1, 8));
}

TEST_CASE("prefactor identity: det(cosh^{-1} exp) = (2/(1+e^{-t}))^d at N = I/2") {
  for (int d : {1, 2}) {
    const QuadraticPotential pot = QuadraticPotential::classical(d, 1.0);
    for (double t : {0.3, 1.7}) {
      const SymbolF2 a = ou_semigroup_symbol(pot, Complex{t, 0.0});
      // position value at x = xi = 0 is exactly the determinant prefactor
      const Complex pref = a.position(Vec{0, 0}, Vec{0, 0});
      const double want = std::pow(2.0 / (1.0 + std::exp(-t)), d);
      CHECK(std::abs(pref - want) < 1e-14 * want);
    }
  }
}

TEST_CASE("d=2 regions and majorants with distinct eigenvalues") {
  Mat n{};
  n[0][0] = 0.5;
  n[1][1] = 1.0;
  const SymmetricEig e = eigh(n, 2);
  const PExponent p4 = PExponent::make(4.0);
  CHECK(in_epperson_region(e, Complex{0.7, 0.0}, p4));
  CHECK_FALSE(in_epperson_region(e, Complex{0.0, 2.0}, p4));

  const QuadraticPotential pot = QuadraticPotential::make(2, n, Vec{0.1, -0.3}, 1.0);
  const Complex z{0.9, 0.25};
  const double sigma = gaussian_majorant_rate(e, z, p4);
  REQUIRE(sigma > 0.0);
  const GridSpec ks = GridSpec::uniform(2, std::max(30.0, 9.0 / std::sqrt(0.25 * sigma)), 128);
  std::vector<double> g(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    g[i] = gaussian_majorant(pot, p4, z, ks.point(i));
  const double closed = gaussian_majorant_integral(pot, p4, z);
  CHECK(std::abs(quadrature(ks, g) - closed) < 1e-8 * closed);
}

TEST_CASE("uniform majorant bound over an epperson core patch") {
  const QuadraticPotential pot = QuadraticPotential::classical(1, 1.0);
  const PExponent p4 = PExponent::make(4.0);
  const SymmetricEig e = eigh(pot.n_matrix, 1);

  auto patch_sup = [&](int steps) {
    double sup = 0.0;
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; j <= steps; ++j) {
        const Complex z{0.1 + 2.0 * i / steps, -1.5 + 3.0 * j / steps};
        if (!in_epperson_core(e, z, p4, 0.05, 0.1)) continue;
        sup = std::max(sup, gaussian_majorant_integral(pot, p4, z));
      }
    return sup;
  };
  // nested sampling: the sup grows towards a finite limit as the patch
  // resolution approaches the core boundary, then settles
  const double s64 = patch_sup(64);
  const double s256 = patch_sup(256);
  CHECK(std::isfinite(s256));
  CHECK(s64 <= s256 * (1 + 1e-12));
  CHECK(s256 <= s64 * 1.15);
}
