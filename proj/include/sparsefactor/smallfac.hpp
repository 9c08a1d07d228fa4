#pragma once

#include <utility>
#include <vector>

#include "sparsefactor/dpoly.hpp"
#include "sparsefactor/poly.hpp"
#include "sparsefactor/upoly.hpp"

namespace sf {

struct Factorization {
    Fe unit = 1;
    std::vector<std::pair<SparsePoly, int>> factors;
};

struct UniFactorization {
    Fe unit = 1;
    std::vector<std::pair<UPoly, int>> factors;  // monic irreducibles
};

struct DFactorization {
    Fe unit = 1;
    std::vector<std::pair<DPoly, int>> factors;  // grevlex-canonical irreducibles
};

struct FactorConfig {
    int max_vars = 7;
    // Trial divisions allowed during recombination.
    long recombination_cap = 200000;
    // Evaluation points tried before moving to an extension field.
    long point_budget = 400;
};

// ---- univariate
UniFactorization uni_factor(const Field& F, const UPoly& f);
// Squarefree decomposition of a monic polynomial: (part, multiplicity), parts monic.
std::vector<std::pair<UPoly, int>> uni_squarefree(const Field& F, const UPoly& f);
bool uni_is_irreducible(const Field& F, const UPoly& f);

// ---- dense multivariate
DPoly gcd(const DPoly& a, const DPoly& b);
DPoly content_in(const DPoly& f, int v);
DPoly primitive_in(const DPoly& f, int v);
DFactorization factor_dense(const DPoly& f, const FactorConfig& cfg = {});

// ---- sparse front ends
SparsePoly gcd_full(const SparsePoly& f, const SparsePoly& g);
// gcd in x_i over the fraction field of the other variables, primitive and canonical.
SparsePoly gcd_multi(const SparsePoly& f, const SparsePoly& g, int i);
std::vector<std::pair<SparsePoly, int>> squarefree_decomp(const SparsePoly& f, int i);
Factorization multi_factor(const SparsePoly& f, const FactorConfig& cfg = {});
// unit * prod factor^mult
SparsePoly expand(const Factorization& fz, const FieldPtr& F, int n);

}  // namespace sf
