#pragma once

#include <cstdint>
#include <vector>

#include "sparsefactor/poly.hpp"

namespace sf::inst {

// splitmix64; the same seed gives the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : x_(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

private:
    std::uint64_t x_;
};

// Up to s random terms with exponents in [0,d]^n, nonconstant, canonical.
SparsePoly random_sparse(Rng& r, const FieldPtr& F, int n, int s, int d);

// Random irreducible with 2..s terms and individual degree <= d, free of
// monomial factors.  Uses every variable in vars when given.
SparsePoly random_irreducible(Rng& r, const FieldPtr& F, int n, int s, int d, const std::vector<int>& vars = {});

// ell irreducible factors drawn independently.
std::vector<SparsePoly> random_irreducibles(Rng& r, const FieldPtr& F, int n, int s, int d, int ell);

}  // namespace sf::inst
