#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparsefactor/algos.hpp"
#include "sparsefactor/poly.hpp"
#include "sparsefactor/smallfac.hpp"

namespace sf::oracle {

// Sizes the brute-force paths accept.
struct Limits {
    int max_vars = 3;
    int max_degree = 3;
    std::uint64_t max_field = 11;
    long max_subsets = 5000000;
};

// Irreducible factorization by Kronecker substitution and subset recombination.
Factorization brute_factor(const SparsePoly& f, const Limits& lim = {});

// Products of brute_factor's factors, optionally keeping only those with at
// most max_terms terms.
DivisorSet brute_divisors(const SparsePoly& f, std::optional<size_t> max_terms = {}, const Limits& lim = {});

// Whether g is a primitive divisor for the class represented by sample.
// Multiples g*h are searched with total degree up to degree_cap.
bool primitive_divisor_check(const SparsePoly& g, const std::vector<SparsePoly>& sample, int degree_cap,
                             const Limits& lim = {});

struct OracleReport {
    std::string instance;
    std::string oracle_answer;
    std::string algorithm_answer;
    bool agree = false;
    double oracle_ms = 0;
    double algorithm_ms = 0;

    std::string to_json() const;
};

std::string describe(const Factorization& fz);
std::string describe(const DivisorSet& ds);

}  // namespace sf::oracle
