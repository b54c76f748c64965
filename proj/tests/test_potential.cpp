#include <doctest.h>

#include <cmath>
#include <random>

#include "weylstrip/potential.hpp"

using namespace weylstrip;

namespace {

GridFunction gaussian_bump(const GridSpec& g, double width) {
  return GridFunction::sample(g, [width](const Vec& x) {
    return Complex{std::exp(-dot(x, x, 2) / (width * width)), 0.0};
  });
}

double interior_max(const GridFunction& f, int margin) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    bool in = true;
    for (int a = 0; a < f.spec.dim; ++a) {
      const int j = f.spec.unflatten(i)[a];
      if (j < margin || j >= f.spec.axis[a].points - margin) in = false;
    }
    if (in) m = std::max(m, std::abs(f.values[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("c_phi: classical potential") {
  const Potential pot = QuadraticPotential::classical(1, 1.0).as_potential();
  // phi = x^2/2: C(x) = x^2/4 - 1/2
  CHECK(c_phi(pot, Vec{2.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("c_phi: zero potential") {
  Potential pot;
  pot.dim = 1;
  pot.value = [](const Vec&) { return 0.0; };
  pot.gradient = [](const Vec&) { return Vec{0.0, 0.0}; };
  pot.laplacian = [](const Vec&) { return 0.0; };
  for (double x : {-2.0, 0.0, 1.5}) CHECK(c_phi(pot, Vec{x, 0.0}) == 0.0);
}

TEST_CASE("c_phi: quadratic closed form and finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Mat n{};
    n[0][0] = 0.3 + 0.5 * std::abs(u(rng));
    n[1][1] = 0.3 + 0.5 * std::abs(u(rng));
    n[0][1] = n[1][0] = 0.2 * u(rng);
    const Vec l{u(rng), u(rng)};
    const double c = 0.8 + 0.4 * std::abs(u(rng));
    const QuadraticPotential q = QuadraticPotential::make(2, n, l, c);
    const Potential pot = q.as_potential();
    const Vec x{u(rng), u(rng)};

    // closed form |N(cx) + l/2|^2 - tr N
    const Vec v = add(matvec(n, scale(c, x), 2), scale(0.5, l));
    const double ref = dot(v, v, 2) - (n[0][0] + n[1][1]);
    CHECK(c_phi(pot, x) == doctest::Approx(ref).epsilon(1e-12));

    // numeric differentiation of the value evaluator
    const double h = 1e-5;
    const Vec cx = scale(c, x);
    double num = 0.0, lap = 0.0;
    for (int a = 0; a < 2; ++a) {
      Vec xp = cx, xm = cx;
      xp[a] += h;
      xm[a] -= h;
      const double g = (q.value(xp) - q.value(xm)) / (2 * h);
      num += g * g;
      lap += (q.value(xp) - 2 * q.value(cx) + q.value(xm)) / (h * h);
    }
    CHECK(c_phi(pot, x) == doctest::Approx(0.25 * num - 0.5 * lap).epsilon(1e-6));
  }
}

TEST_CASE("ou_apply: constants are annihilated") {
  const Potential pot = QuadraticPotential::classical(1, 1.0).as_potential();
  const GridSpec g = GridSpec::uniform(1, 8.0, 64);
  GridFunction one = GridFunction::sample(g, [](const Vec&) { return Complex{1.0, 0.0}; });
  const GridFunction lf = ou_apply(pot, one);
  CHECK(interior_max(lf, 4) < 1e-13);
}

TEST_CASE("ou_apply: Hermite eigenrelations at O(h^2)") {
  const Potential pot = QuadraticPotential::classical(1, 1.0).as_potential();

  auto relerr = [&](int n, int pts) {
    const GridSpec g = GridSpec::uniform(1, 10.0, pts);
    const GridFunction he = GridFunction::sample(
        g, [n](const Vec& x) { return Complex{hermite(n, x[0]), 0.0}; });
    const GridFunction lf = ou_apply(pot, he);
    GridFunction diff = lf;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
      diff.values[i] -= double(n) * he.values[i];
    const int margin = pts / 10;
    return interior_max(diff, margin) / std::max(1.0, interior_max(he, margin));
  };

  // He_1, He_2 are exact for the composite stencil
  CHECK(relerr(1, 128) < 1e-12);
  CHECK(relerr(2, 128) < 1e-12);
  // n = 3, 4 converge at second order
  for (int n : {3, 4}) {
    const double e1 = relerr(n, 128);
    const double e2 = relerr(n, 256);
    CHECK(e1 < 1e-2);
    CHECK(e2 < e1 / 3.0);
  }
}

TEST_CASE("u_p: forward weight, p = inf, round trip, isometry") {
  const Potential pot = QuadraticPotential::classical(1, 1.0).as_potential();
  const GridSpec g = GridSpec::uniform(1, 6.0, 64);
  const PExponent p2 = PExponent::make(2.0);

  GridFunction one = GridFunction::sample(g, [](const Vec&) { return Complex{1.0, 0.0}; });
  const GridFunction w = u_p_forward(pot, p2, one);
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const double x = g.point(i)[0];
    CHECK(std::abs(w.values[i] - std::exp(-x * x / 4.0)) < 1e-15);
  }

  const PExponent pinf = PExponent::make(std::numeric_limits<double>::infinity());
  const GridFunction winf = u_p_forward(pot, pinf, one);
  for (std::size_t i = 0; i < winf.values.size(); ++i)
    CHECK(winf.values[i] == one.values[i]);

  const GridFunction f = gaussian_bump(g, 1.3);
  const GridFunction rt = u_p_inverse(pot, p2, u_p_forward(pot, p2, f));
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(rt.values[i] - f.values[i]) <= 1e-13 * std::abs(f.values[i]));

  // discrete isometry: integral |U_p f|^p equals integral |f|^p e^{-phi}
  const double p = 2.0;
  const GridFunction uf = u_p_forward(pot, p2, f);
  GridFunction lhs = GridFunction::zeros(g), rhs = GridFunction::zeros(g);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    lhs.values[i] = std::pow(std::abs(uf.values[i]), p);
    rhs.values[i] =
        std::pow(std::abs(f.values[i]), p) * std::exp(-pot.value(g.point(i)));
  }
  const double a = quadrature(lhs).real(), b = quadrature(rhs).real();
  CHECK(std::abs(a - b) < 1e-13 * b);
}

TEST_CASE("u_p: weight overflow is loud") {
  Potential pot;
  pot.dim = 1;
  pot.c = 1.0;
  pot.value = [](const Vec& x) { return 1e5 * (1.0 + x[0] * x[0]); };
  pot.gradient = [](const Vec& x) { return Vec{2e5 * x[0], 0.0}; };
  pot.laplacian = [](const Vec&) { return 2e5; };
  const GridSpec g = GridSpec::uniform(1, 4.0, 32);
  const GridFunction f = gaussian_bump(g, 1.0);
  CHECK_THROWS_WITH(u_p_forward(pot, PExponent::make(2.0), f), "weight overflow");
}

TEST_CASE("representation residual: second-order convergence and c-independence") {
  for (double c : {1.0, std::sqrt(2.0)}) {
    const Potential pot = QuadraticPotential::classical(1, c).as_potential();
    const GridSpec g1 = GridSpec::uniform(1, 8.0, 128);
    const GridSpec g2 = GridSpec::uniform(1, 8.0, 256);
    const double r1 = ou_representation_residual(pot, gaussian_bump(g1, 1.5));
    const double r2 = ou_representation_residual(pot, gaussian_bump(g2, 1.5));
    CHECK(r1 / r2 > 3.5);
    CHECK(r1 / r2 < 4.5);
  }
}

TEST_CASE("representation residual: identical stencils when phi vanishes") {
  Potential pot;
  pot.dim = 1;
  pot.c = 1.0;
  pot.value = [](const Vec&) { return 0.0; };
  pot.gradient = [](const Vec&) { return Vec{0.0, 0.0}; };
  pot.laplacian = [](const Vec&) { return 0.0; };
  const GridSpec g = GridSpec::uniform(1, 8.0, 128);
  CHECK(ou_representation_residual(pot, gaussian_bump(g, 1.5)) < 1e-12);
}

TEST_CASE("hermite recurrence values") {
  CHECK(hermite(2, 2.0) == 3.0);
  for (double x : {-1.5, 0.0, 2.25}) CHECK(hermite(0, x) == 1.0);
  CHECK(hermite(3, 1.0) == -2.0);  // He_3(x) = x^3 - 3x
}

TEST_CASE("quadratic potential: gradient/laplacian match finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat n{};
  n[0][0] = 0.7;
  n[1][1] = 0.4;
  n[0][1] = n[1][0] = 0.15;
  const QuadraticPotential q = QuadraticPotential::make(2, n, Vec{0.3, -0.2}, 1.0);
  const double h = 1e-4;  // differences of a quadratic are exact; h only sets roundoff
  for (int trial = 0; trial < 8; ++trial) {
    const Vec x{2.0 * u(rng), 2.0 * u(rng)};
    double lap = 0.0;
    for (int a = 0; a < 2; ++a) {
      Vec xp = x, xm = x;
      xp[a] += h;
      xm[a] -= h;
      const double fd = (q.value(xp) - q.value(xm)) / (2 * h);
      CHECK(std::abs(q.gradient(x)[a] - fd) < 1e-9);
      lap += (q.value(xp) - 2 * q.value(x) + q.value(xm)) / (h * h);
    }
    CHECK(std::abs(q.laplacian(x) - lap) < 1e-6);
  }
}
