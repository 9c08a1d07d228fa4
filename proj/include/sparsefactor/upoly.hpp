#pragma once

#include <optional>
#include <vector>

#include "sparsefactor/ff.hpp"

namespace sf {

// Dense univariate polynomial, low degree first; the zero polynomial is empty.
using UPoly = std::vector<Fe>;

namespace up {

void trim(UPoly& a);
inline int deg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }
inline Fe lead(const UPoly& a) { return a.empty() ? 0 : a.back(); }

UPoly add(const Field& F, const UPoly& a, const UPoly& b);
UPoly sub(const Field& F, const UPoly& a, const UPoly& b);
UPoly neg(const Field& F, const UPoly& a);
UPoly scale(const Field& F, const UPoly& a, Fe c);
UPoly mul(const Field& F, const UPoly& a, const UPoly& b);
// Product truncated to the first n coefficients.
UPoly mul_trunc(const Field& F, const UPoly& a, const UPoly& b, size_t n);

void divmod(const Field& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly mod(const Field& F, const UPoly& a, const UPoly& b);
UPoly quo(const Field& F, const UPoly& a, const UPoly& b);
std::optional<UPoly> exact_div(const Field& F, const UPoly& a, const UPoly& b);

UPoly monic(const Field& F, const UPoly& a);
UPoly gcd(const Field& F, UPoly a, UPoly b);
// g = s*a + t*b, g monic.
UPoly xgcd(const Field& F, const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);

UPoly mulmod(const Field& F, const UPoly& a, const UPoly& b, const UPoly& m);
UPoly powmod(const Field& F, const UPoly& a, std::uint64_t e, const UPoly& m);
UPoly deriv(const Field& F, const UPoly& a);
Fe eval(const Field& F, const UPoly& a, Fe x);
UPoly from_roots(const Field& F, const std::vector<Fe>& roots);
// Unique polynomial of degree < |xs| through the points; xs distinct.
UPoly interpolate(const Field& F, const std::vector<Fe>& xs, const std::vector<Fe>& ys);
// a(x)^{1/p} for a polynomial in x^p.
UPoly pth_root(const Field& F, const UPoly& a);

}  // namespace up
}  // namespace sf
