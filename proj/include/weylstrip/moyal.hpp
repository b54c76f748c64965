#pragma once

#include "weylstrip/symbol.hpp"

namespace weylstrip {

// Moyal product of two HS0 parts, as an F2-side twisted convolution:
//   F2(a1 # a2)(x, k) =
//     (2pi)^{-d/2} \int F2a1(x + (v-k)/2, v) F2a2(x + v/2, k - v) dv.
// The v integral is a quadrature over vspec; the result is a closure
// evaluating that quadrature at any requested (x, k), so downstream
// quantization sees no interpolation error.
SymbolF2 moyal_00(const SymbolF2& a1, const SymbolF2& a2, const GridSpec& vspec);

// F2(a1_0 # a2_b)(x, k) = F2a1_0(x, k) a2_b(x + k/2).
SymbolF2 moyal_0b(const SymbolF2& a1, const SymbolF2& a2);

// F2(a1_b # a2_0)(x, k) = a1_b(x - k/2) F2a2_0(x, k).
SymbolF2 moyal_b0(const SymbolF2& a1, const SymbolF2& a2);

// (a1_b # a2_b)(x) = a1_b(x) a2_b(x).
SymbolF2 moyal_bb(const SymbolF2& a1, const SymbolF2& a2);

// Full product on HS(M) = HS0(M) + B: HS0 part is the sum of the 00, 0b, b0
// components; multiplier part is the pointwise product.
SymbolF2 moyal(const SymbolF2& a1, const SymbolF2& a2, const GridSpec& vspec);

// The unit of the Moyal algebra: multiplier part identically 1, no HS0 part.
SymbolF2 identity_symbol(int dim);

}  // namespace weylstrip
