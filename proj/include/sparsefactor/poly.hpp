#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsefactor/ff.hpp"

namespace sf {

using Mono = std::vector<std::uint32_t>;

// Graded reverse lexicographic order with x_0 > x_1 > ... .
int grevlex_cmp(const Mono& a, const Mono& b);
inline bool grevlex_greater(const Mono& a, const Mono& b) { return grevlex_cmp(a, b) > 0; }

struct Term {
    Mono e;
    Fe c;
};

class SparsePoly {
public:
    SparsePoly() = default;
    SparsePoly(FieldPtr F, int n) : F_(std::move(F)), n_(n) {}

    static SparsePoly constant(FieldPtr F, int n, Fe c);
    static SparsePoly var(FieldPtr F, int n, int i);
    static SparsePoly monomial(FieldPtr F, int n, const Mono& e, Fe c = 1);
    // Combines duplicate exponents, drops zeros, sorts.
    static SparsePoly from_terms(FieldPtr F, int n, std::vector<Term> terms);

    const FieldPtr& field() const { return F_; }
    const Field& F() const { return *F_; }
    int nvars() const { return n_; }
    // Descending grevlex.
    const std::vector<Term>& terms() const { return terms_; }
    size_t sparsity() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    Fe constant_term() const;
    Fe lc() const { return terms_.empty() ? 0 : terms_.front().c; }
    const Mono& lm() const { return terms_.front().e; }

    int individual_degree(int i) const;
    int max_individual_degree() const;
    int total_degree() const;
    Mono degrees() const;
    // Variables occurring in the polynomial.
    std::vector<int> support() const;

    Fe eval(const std::vector<Fe>& point) const;

    bool operator==(const SparsePoly& o) const;
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }
    // Total order on canonical polynomials used for deterministic sorting.
    bool operator<(const SparsePoly& o) const;

    std::string to_string(int base = 1) const;
    std::string key() const;

private:
    friend SparsePoly operator*(const SparsePoly&, const SparsePoly&);
    friend SparsePoly add_impl(const SparsePoly&, const SparsePoly&, bool);
    FieldPtr F_;
    int n_ = 0;
    std::vector<Term> terms_;
};

SparsePoly operator+(const SparsePoly& f, const SparsePoly& g);
SparsePoly operator-(const SparsePoly& f, const SparsePoly& g);
SparsePoly operator-(const SparsePoly& f);
SparsePoly operator*(const SparsePoly& f, const SparsePoly& g);
SparsePoly scale(const SparsePoly& f, Fe c);
SparsePoly pow(const SparsePoly& f, unsigned e);
SparsePoly product(const std::vector<SparsePoly>& fs, FieldPtr F, int n);

// Grevlex division with remultiplication check.
std::optional<SparsePoly> exact_div(const SparsePoly& f, const SparsePoly& g);

// Leading coefficient made 1; unit receives the stripped coefficient.
SparsePoly canonical(const SparsePoly& f, Fe* unit = nullptr);
bool is_canonical(const SparsePoly& f);

// Coefficients of f in x_i; entry j is the coefficient of x_i^j (no x_i inside).
std::vector<SparsePoly> uni_view(const SparsePoly& f, int i);
SparsePoly from_uni_view(const std::vector<SparsePoly>& coeffs, int i, FieldPtr F, int n);

Mono largest_monomial_divisor(const SparsePoly& f);
SparsePoly divide_monomial(const SparsePoly& f, const Mono& m);
SparsePoly mul_monomial(const SparsePoly& f, const Mono& m);
std::string mono_to_string(const Mono& m, int base = 1);

size_t newton_vertices(const SparsePoly& f);

SparsePoly derivative(const SparsePoly& f, int i);
// f with x_i replaced by the constant a.
SparsePoly substitute(const SparsePoly& f, int i, Fe a);
// Image under an embedding of coefficient fields.
SparsePoly map_field(const SparsePoly& f, const Embedding& emb);
// Coefficient preimage; nullopt if some coefficient is outside the subfield.
std::optional<SparsePoly> pull_field(const SparsePoly& f, const Embedding& emb);
// Rename variables: variable i goes to position perm[i] in an m-variate ring.
SparsePoly remap_vars(const SparsePoly& f, const std::vector<int>& perm, int m);

// Content and primitive part of f in x_i (see smallfac for the gcd).
std::pair<SparsePoly, SparsePoly> content_primitive(const SparsePoly& f, int i);

// Parser for  poly := term (('+'|'-') term)* ; factors may be parenthesized and
// raised to powers; multiplication may be implicit.  n < 0 infers n from the
// largest variable index.  base is the index of the first variable name.
SparsePoly parse_poly(const std::string& text, const FieldPtr& F, int n = -1, int base = 1);
// Largest variable index appearing in text, or -1.
int max_var_index(const std::string& text, int base = 1);

}  // namespace sf
