#include "weylstrip/moyal.hpp"

#include <stdexcept>

namespace weylstrip {

namespace {

void check_dims(const SymbolF2& a1, const SymbolF2& a2) {
  if (a1.dim != a2.dim) throw std::invalid_argument("moyal: dimension mismatch");
}

std::string product_name(const SymbolF2& a1, const SymbolF2& a2) {
  return "(" + a1.name + " # " + a2.name + ")";
}

}  // namespace

SymbolF2 moyal_00(const SymbolF2& a1, const SymbolF2& a2, const GridSpec& vspec) {
  check_dims(a1, a2);
  SymbolF2 out;
  out.dim = a1.dim;
  out.name = product_name(a1, a2);
  if (!a1.has_hs0() || !a2.has_hs0()) return out;  // one factor vanishes
  vspec.validate();
  if (vspec.dim != a1.dim) throw std::invalid_argument("moyal_00: v grid dimension mismatch");

  const double pref = std::pow(kTwoPi, -0.5 * a1.dim) * vspec.cell_volume();
  out.f2_hs0 = [e1 = a1.f2_hs0, e2 = a2.f2_hs0, vspec, pref](const Vec& x, const Vec& k) {
    const Complex s = pairwise_sum<Complex>(vspec.size(), [&](std::size_t i) {
      const Vec v = vspec.point(i);
      const Vec x1 = add(x, scale(0.5, sub(v, k)));
      const Vec x2 = add(x, scale(0.5, v));
      return e1(x1, v) * e2(x2, sub(k, v));
    });
    return pref * s;
  };
  return out;
}

SymbolF2 moyal_0b(const SymbolF2& a1, const SymbolF2& a2) {
  check_dims(a1, a2);
  SymbolF2 out;
  out.dim = a1.dim;
  out.name = product_name(a1, a2);
  if (!a1.has_hs0() || !a2.has_multiplier()) return out;
  out.f2_hs0 = [e1 = a1.f2_hs0, b2 = a2.multiplier](const Vec& x, const Vec& k) {
    return e1(x, k) * b2(add(x, scale(0.5, k)));
  };
  return out;
}

SymbolF2 moyal_b0(const SymbolF2& a1, const SymbolF2& a2) {
  check_dims(a1, a2);
  SymbolF2 out;
  out.dim = a1.dim;
  out.name = product_name(a1, a2);
  if (!a1.has_multiplier() || !a2.has_hs0()) return out;
  out.f2_hs0 = [b1 = a1.multiplier, e2 = a2.f2_hs0](const Vec& x, const Vec& k) {
    return b1(sub(x, scale(0.5, k))) * e2(x, k);
  };
  return out;
}

SymbolF2 moyal_bb(const SymbolF2& a1, const SymbolF2& a2) {
  check_dims(a1, a2);
  SymbolF2 out;
  out.dim = a1.dim;
  out.name = product_name(a1, a2);
  if (!a1.has_multiplier() || !a2.has_multiplier()) return out;
  out.multiplier = [b1 = a1.multiplier, b2 = a2.multiplier](const Vec& x) {
    return b1(x) * b2(x);
  };
  return out;
}

SymbolF2 moyal(const SymbolF2& a1, const SymbolF2& a2, const GridSpec& vspec) {
  check_dims(a1, a2);
  SymbolF2 out;
  out.dim = a1.dim;
  out.name = product_name(a1, a2);

  std::vector<SymbolF2::F2Eval> parts;
  if (a1.has_hs0() && a2.has_hs0()) parts.push_back(moyal_00(a1, a2, vspec).f2_hs0);
  if (a1.has_hs0() && a2.has_multiplier()) parts.push_back(moyal_0b(a1, a2).f2_hs0);
  if (a1.has_multiplier() && a2.has_hs0()) parts.push_back(moyal_b0(a1, a2).f2_hs0);
  if (parts.size() == 1) {
    out.f2_hs0 = parts.front();
  } else if (!parts.empty()) {
    out.f2_hs0 = [parts](const Vec& x, const Vec& k) {
      Complex s{};
      for (const auto& f : parts) s += f(x, k);
      return s;
    };
  }
  out.multiplier = moyal_bb(a1, a2).multiplier;
  return out;
}

SymbolF2 identity_symbol(int dim) {
  SymbolF2 sym;
  sym.dim = dim;
  sym.name = "1";
  sym.multiplier = [](const Vec&) { return Complex{1.0, 0.0}; };
  return sym;
}

}  // namespace weylstrip
