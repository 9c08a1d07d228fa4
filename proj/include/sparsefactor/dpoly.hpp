#pragma once

#include <optional>
#include <vector>

#include "sparsefactor/poly.hpp"
#include "sparsefactor/upoly.hpp"

namespace sf {

// Dense multivariate polynomial in a fixed number of variables.  Coefficients
// are stored flat with variable 0 varying fastest; ext[v] = deg_v + 1.
class DPoly {
public:
    DPoly() = default;
    DPoly(FieldPtr F, int nv);
    DPoly(FieldPtr F, std::vector<int> ext);

    static DPoly constant(FieldPtr F, int nv, Fe c);
    static DPoly var(FieldPtr F, int nv, int v, int power = 1);
    static DPoly from_sparse(const SparsePoly& f);
    // Univariate in variable v.
    static DPoly from_upoly(FieldPtr F, int nv, int v, const UPoly& u);
    SparsePoly to_sparse() const;
    // Requires all variables other than v to have degree 0.
    UPoly to_upoly(int v) const;

    const FieldPtr& field() const { return F_; }
    const Field& F() const { return *F_; }
    int nvars() const { return static_cast<int>(ext_.size()); }
    const std::vector<int>& ext() const { return ext_; }
    const std::vector<Fe>& data() const { return c_; }
    std::vector<Fe>& data() { return c_; }

    bool is_zero() const;
    bool is_constant() const;
    Fe constant_value() const { return c_.empty() ? 0 : c_[0]; }
    int deg(int v) const;  // -1 for zero
    int total_degree() const;
    size_t index(const std::vector<int>& e) const;
    Fe at(const std::vector<int>& e) const;
    void set(const std::vector<int>& e, Fe v);
    size_t nterms() const;

    // Shrink extents to the true degrees.
    void normalize();
    // Grow extents (zero padding).
    DPoly reshaped(const std::vector<int>& ext) const;

    bool operator==(const DPoly& o) const;
    bool operator!=(const DPoly& o) const { return !(*this == o); }

    // Coefficient slices in variable v (each has extent 1 in v).
    std::vector<DPoly> coeffs_in(int v) const;
    static DPoly from_coeffs(const std::vector<DPoly>& cs, int v, FieldPtr F, int nv);
    DPoly lc_in(int v) const;
    DPoly eval_var(int v, Fe a) const;
    DPoly derivative(int v) const;
    // f(..., x_v + a, ...)
    DPoly taylor_shift(int v, Fe a) const;
    // Assumes every exponent is divisible by p.
    DPoly pth_root() const;
    bool is_pth_power() const;
    // x_v -> x_v^k
    DPoly inflate(int v, int k) const;
    // Truncate to exponents e_v < lim[v] for all v.
    DPoly truncated(const std::vector<int>& lim) const;
    // Swap variables a and b.
    DPoly swapped(int a, int b) const;

    // Leading coefficient in grevlex over (x_0 > x_1 > ...), and the
    // associate with that coefficient equal to 1.
    Fe grevlex_lc() const;
    DPoly canonical(Fe* unit = nullptr) const;
    // Exponent of the grevlex leading monomial, for sorting.
    std::vector<int> grevlex_lm() const;

    Fe eval(const std::vector<Fe>& point) const;

private:
    FieldPtr F_;
    std::vector<int> ext_;
    std::vector<Fe> c_;
};

DPoly operator+(const DPoly& a, const DPoly& b);
DPoly operator-(const DPoly& a, const DPoly& b);
DPoly operator*(const DPoly& a, const DPoly& b);
DPoly scale(const DPoly& a, Fe c);
DPoly pow(const DPoly& a, unsigned e);
// Product truncated to exponents below lim.
DPoly mul_trunc(const DPoly& a, const DPoly& b, const std::vector<int>& lim);
std::optional<DPoly> exact_div(const DPoly& a, const DPoly& b);
bool divides(const DPoly& b, const DPoly& a);
// Largest k with b^k | a (b non-constant).
int divisibility_power(const DPoly& b, DPoly a);
DPoly map_field(const DPoly& a, const Embedding& emb);
std::optional<DPoly> pull_field(const DPoly& a, const Embedding& emb);

}  // namespace sf
