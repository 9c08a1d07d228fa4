#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sparsefactor/blackbox.hpp"
#include "sparsefactor/gen.hpp"
#include "sparsefactor/poly.hpp"
#include "sparsefactor/smallfac.hpp"

namespace sf {

struct AlgoParams {
    int n = 0;  // 0: taken from the input
    int s = 1;
    int d = 1;
    int ell = 1;
    // S = s^(S_exponent * d^2 * max(1, ceil(log2 n)))
    int S_exponent = 1;
    std::optional<std::uint64_t> m_override;
    // Factorization ops try m = 2, 4, 8, ... before the certified m.
    bool escalate = false;
    FactorConfig fcfg;

    std::uint64_t S() const;
};

// Generator use reported by an operation.
struct RunInfo {
    std::uint64_t m = 0;
    std::uint64_t q = 0;
    bool certified = true;
    std::uint64_t queries = 0;
    std::uint64_t faces = 0;
    // m of the accepted rung in escalation mode, 0 otherwise.
    std::uint64_t rung = 0;

    void absorb(const FaceEngine& e);
};

struct DivisorSet {
    Mono monomial;
    std::vector<SparsePoly> divisors;  // canonical, sorted
};

// D certified by faces for the multiplicity-type tests.
int coprime_box(int d, CharClass cc);

int multiplicity_of(const SparsePoly& phi, const BoxPtr& f, const AlgoParams& P, RunInfo* info = nullptr);
bool divides(const BoxPtr& f, const BoxPtr& g, const AlgoParams& P, RunInfo* info = nullptr);
bool is_complete_power(const BoxPtr& f, int e, const AlgoParams& P, RunInfo* info = nullptr);

struct RationalResult {
    SparsePoly a, b;
};
RationalResult rational_interpolate(const BoxPtr& qbox, const BoxPtr& f, const std::vector<SparsePoly>& Fset,
                                    const AlgoParams& P, RunInfo* info = nullptr);

struct RationalMultiResult {
    std::vector<SparsePoly> a;
    SparsePoly b;
};
RationalMultiResult rational_interpolate_multi(const std::vector<BoxPtr>& qboxes, const BoxPtr& f,
                                               const std::vector<SparsePoly>& Fset, const AlgoParams& P,
                                               RunInfo* info = nullptr);

DivisorSet sparse_divisors(const SparsePoly& f, const AlgoParams& P, RunInfo* info = nullptr);
DivisorSet divisors_of_product(const BoxPtr& f, const AlgoParams& P, RunInfo* info = nullptr);

Factorization factor_product_irreducibles(const BoxPtr& f, const AlgoParams& P, RunInfo* info = nullptr);
std::vector<std::pair<SparsePoly, int>> multiquadratic_factors(const BoxPtr& f, const AlgoParams& P,
                                                               RunInfo* info = nullptr);
Factorization factor_nsd(const SparsePoly& f, const AlgoParams& P, RunInfo* info = nullptr);
Factorization factor_product_general(const BoxPtr& f, const AlgoParams& P, RunInfo* info = nullptr);

struct Audit {
    int count = 0;
    int bound = 0;
    bool ok = false;
    size_t vertices = 0;
    bool vertices_ok = false;
};
Audit divisor_count_audit(const SparsePoly& f, const AlgoParams& P, RunInfo* info = nullptr);

// Sorts factors canonically and merges repeats.
void normalize_factorization(Factorization& fz);

}  // namespace sf
