#include "sparsefactor/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sparsefactor/errors.hpp"
#include "sparsefactor/upoly.hpp"

namespace sf::oracle {

namespace {

void check_limits(const SparsePoly& f, const Limits& lim) {
    if (f.nvars() > lim.max_vars) fail(ErrorKind::LimitExceeded, "too many variables for brute force");
    if (!f.is_zero() && f.max_individual_degree() > lim.max_degree)
        fail(ErrorKind::LimitExceeded, "individual degree too large for brute force");
    if (f.field()->size() > lim.max_field) fail(ErrorKind::LimitExceeded, "field too large for brute force");
}

UPoly kronecker(const SparsePoly& f, int base) {
    UPoly u;
    for (auto& t : f.terms()) {
        size_t e = 0, w = 1;
        for (int i = 0; i < f.nvars(); ++i, w *= base) e += t.e[i] * w;
        if (u.size() <= e) u.resize(e + 1, 0);
        u[e] = f.F().add(u[e], t.c);
    }
    up::trim(u);
    return u;
}

// nullopt when some exponent has a digit above base-1 or too many digits
std::optional<SparsePoly> inverse_kronecker(const UPoly& u, int base, const FieldPtr& F, int n) {
    std::vector<Term> ts;
    for (size_t e = 0; e < u.size(); ++e) {
        if (u[e] == 0) continue;
        Mono m(n, 0);
        size_t r = e;
        for (int i = 0; i < n; ++i) {
            m[i] = static_cast<std::uint32_t>(r % base);
            r /= base;
        }
        if (r) return std::nullopt;
        ts.push_back({m, u[e]});
    }
    return SparsePoly::from_terms(F, n, ts);
}

// Lowest-degree irreducible factor of a monomial-free g, found by subset search.
SparsePoly smallest_factor(const SparsePoly& g, const Limits& lim) {
    const FieldPtr& F = g.field();
    const int n = g.nvars();
    const int base = g.max_individual_degree() + 1;
    const UPoly K = kronecker(g, base);
    UniFactorization uf = uni_factor(*F, K);
    std::vector<UPoly> fac;
    std::vector<int> mult;
    for (auto& [p, e] : uf.factors) {
        fac.push_back(p);
        mult.push_back(e);
    }
    const int total = up::deg(K);
    long visited = 0;
    std::vector<int> k(fac.size(), 0);
    std::optional<SparsePoly> found;
    // sub-multisets of uni factors with Kronecker degree exactly t
    std::function<void(size_t, int, const UPoly&)> rec = [&](size_t j, int left, const UPoly& acc) {
        if (found) return;
        if (j == fac.size()) {
            if (left != 0) return;
            if (++visited > lim.max_subsets) fail(ErrorKind::LimitExceeded, "subset search too large");
            auto h = inverse_kronecker(acc, base, F, n);
            if (!h || h->is_constant()) return;
            if (exact_div(g, *h)) found = canonical(*h);
            return;
        }
        const int dj = up::deg(fac[j]);
        UPoly cur = acc;
        for (int t = 0; t <= mult[j] && t * dj <= left; ++t) {
            if (t) cur = up::mul(*F, cur, fac[j]);
            rec(j + 1, left - t * dj, cur);
            if (found) return;
        }
    };
    for (int t = 1; 2 * t <= total && !found; ++t) rec(0, t, UPoly{1});
    return found ? *found : canonical(g);
}

}  // namespace

Factorization brute_factor(const SparsePoly& f, const Limits& lim) {
    check_limits(f, lim);
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "factorization of zero");
    const FieldPtr& F = f.field();
    const int n = f.nvars();
    Factorization fz;
    fz.unit = f.lc();
    Mono M = largest_monomial_divisor(f);
    for (int i = 0; i < n; ++i)
        if (M[i]) fz.factors.emplace_back(SparsePoly::var(F, n, i), static_cast<int>(M[i]));
    SparsePoly g = canonical(divide_monomial(f, M));
    while (!g.is_constant()) {
        SparsePoly h = smallest_factor(g, lim);
        int e = 0;
        while (auto q = exact_div(g, h)) {
            g = *q;
            ++e;
        }
        fz.factors.emplace_back(h, e);
    }
    normalize_factorization(fz);
    if (expand(fz, F, n) != f) fail(ErrorKind::InternalError, "brute factorization does not remultiply");
    return fz;
}

DivisorSet brute_divisors(const SparsePoly& f, std::optional<size_t> max_terms, const Limits& lim) {
    Factorization fz = brute_factor(f, lim);
    const FieldPtr& F = f.field();
    const int n = f.nvars();
    DivisorSet ds;
    ds.monomial = largest_monomial_divisor(f);
    std::vector<std::pair<SparsePoly, int>> fs;
    for (auto& [h, e] : fz.factors)
        if (h.sparsity() != 1) fs.emplace_back(h, e);
    std::vector<SparsePoly> out;
    std::function<void(size_t, const SparsePoly&)> rec = [&](size_t j, const SparsePoly& acc) {
        if (j == fs.size()) {
            if (!max_terms || acc.sparsity() <= *max_terms) out.push_back(canonical(acc));
            return;
        }
        SparsePoly cur = acc;
        for (int t = 0; t <= fs[j].second; ++t) {
            if (t) cur = cur * fs[j].first;
            rec(j + 1, cur);
        }
    };
    rec(0, SparsePoly::constant(F, n, 1));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    ds.divisors = out;
    return ds;
}

bool primitive_divisor_check(const SparsePoly& g, const std::vector<SparsePoly>& sample, int degree_cap,
                             const Limits& lim) {
    if (g.is_constant()) return false;
    // exponent vectors over the irreducibles met in g and the sample
    std::map<SparsePoly, int> idx;
    auto vec_of = [&](const SparsePoly& f) {
        std::map<int, int> v;
        for (auto& [h, e] : brute_factor(f, lim).factors) {
            auto it = idx.emplace(h, static_cast<int>(idx.size())).first;
            v[it->second] += e;
        }
        return v;
    };
    std::map<int, int> vg = vec_of(g);
    std::vector<std::map<int, int>> vs;
    for (auto& P : sample) vs.push_back(vec_of(P));
    std::vector<SparsePoly> irr(idx.size());
    for (auto& [h, i] : idx) irr[i] = h;

    // gcd(P, c^t) for large t is a power of c
    auto cond1 = [&](const std::map<int, int>& vc) {
        for (auto& vP : vs) {
            std::optional<int> k;
            for (auto& [j, e] : vc) {
                auto it = vP.find(j);
                const int have = it == vP.end() ? 0 : it->second;
                if (have % e != 0) return false;
                if (k && *k != have / e) return false;
                k = have / e;
            }
        }
        return true;
    };
    if (!cond1(vg)) return false;
    const int dg = g.total_degree();
    std::vector<int> deg(irr.size());
    for (size_t i = 0; i < irr.size(); ++i) deg[i] = irr[i].total_degree();
    bool multiple_passes = false;
    std::map<int, int> vh = vg;
    std::function<void(size_t, int, bool)> rec = [&](size_t j, int left, bool grew) {
        if (multiple_passes) return;
        if (j == irr.size()) {
            if (grew && cond1(vh)) multiple_passes = true;
            return;
        }
        for (int t = 0; t * deg[j] <= left; ++t) {
            if (t) vh[static_cast<int>(j)] += 1;
            rec(j + 1, left - t * deg[j], grew || t > 0);
        }
        auto it = vh.find(static_cast<int>(j));
        if (it != vh.end()) {
            const int base = vg.count(static_cast<int>(j)) ? vg.at(static_cast<int>(j)) : 0;
            if (base) it->second = base;
            else vh.erase(it);
        }
    };
    rec(0, degree_cap - dg, false);
    return !multiple_passes;
}

std::string describe(const Factorization& fz) {
    std::vector<std::string> parts;
    for (auto& [h, e] : fz.factors) parts.push_back("(" + h.to_string() + ")^" + std::to_string(e));
    std::sort(parts.begin(), parts.end());
    std::ostringstream os;
    os << fz.unit;
    for (auto& p : parts) os << " * " << p;
    return os.str();
}

std::string describe(const DivisorSet& ds) {
    std::vector<std::string> parts;
    for (auto& h : ds.divisors) parts.push_back(h.to_string());
    std::sort(parts.begin(), parts.end());
    std::ostringstream os;
    os << "monomial " << mono_to_string(ds.monomial) << ";";
    for (auto& p : parts) os << " {" << p << "}";
    return os.str();
}

std::string OracleReport::to_json() const {
    nlohmann::ordered_json j;
    j["agree"] = agree;
    j["algorithm_answer"] = algorithm_answer;
    j["algorithm_ms"] = algorithm_ms;
    j["instance"] = instance;
    j["oracle_answer"] = oracle_answer;
    j["oracle_ms"] = oracle_ms;
    return j.dump();
}

}  // namespace sf::oracle
