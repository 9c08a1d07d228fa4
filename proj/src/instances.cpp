#include "sparsefactor/instances.hpp"

#include "sparsefactor/errors.hpp"
#include "sparsefactor/smallfac.hpp"

namespace sf::inst {

std::uint64_t Rng::next() {
    std::uint64_t z = (x_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

SparsePoly random_sparse(Rng& r, const FieldPtr& F, int n, int s, int d) {
    for (;;) {
        std::vector<Term> ts;
        for (int j = 0; j < s; ++j) {
            Mono e(n);
            for (auto& x : e) x = static_cast<std::uint32_t>(r.below(d + 1));
            ts.push_back({e, F->element(1 + r.below(F->size() - 1))});
        }
        SparsePoly p = SparsePoly::from_terms(F, n, ts);
        if (!p.is_constant()) return canonical(p);
    }
}

SparsePoly random_irreducible(Rng& r, const FieldPtr& F, int n, int s, int d, const std::vector<int>& vars) {
    for (int tries = 0; tries < 100000; ++tries) {
        const int terms = 2 + static_cast<int>(r.below(std::max(1, s - 1)));
        SparsePoly p = random_sparse(r, F, n, terms, d);
        if (p.sparsity() < 2) continue;
        bool uses = true;
        for (int v : vars) uses = uses && p.individual_degree(v) > 0;
        if (!uses) continue;
        Mono M = largest_monomial_divisor(p);
        bool mono_free = true;
        for (auto e : M) mono_free = mono_free && e == 0;
        if (!mono_free) continue;
        Factorization fz = multi_factor(p);
        if (fz.factors.size() == 1 && fz.factors[0].second == 1) return p;
    }
    fail(ErrorKind::InternalError, "no irreducible found");
}

std::vector<SparsePoly> random_irreducibles(Rng& r, const FieldPtr& F, int n, int s, int d, int ell) {
    std::vector<SparsePoly> out;
    for (int j = 0; j < ell; ++j) out.push_back(random_irreducible(r, F, n, s, d));
    return out;
}

}  // namespace sf::inst
