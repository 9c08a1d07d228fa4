// Acceptance checks: one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>

#include "sparsefactor/algos.hpp"
#include "sparsefactor/errors.hpp"
#include "sparsefactor/gen.hpp"
#include "sparsefactor/instances.hpp"
#include "sparsefactor/oracle.hpp"
#include "sparsefactor/resmat.hpp"
#include "sparsefactor/smallfac.hpp"
#include "sparsefactor/upoly.hpp"

using namespace sf;
using inst::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void fail_case(const std::string& what) {
        ++failures;
        pass = false;
        if (first_failure.empty()) first_failure = what;
    }
};

std::string fz_str(const Factorization& fz) { return oracle::describe(fz); }

Factorization expected_of(const std::vector<SparsePoly>& fs, Fe unit) {
    Factorization fz;
    fz.unit = unit;
    for (auto& f : fs) {
        Fe u = 1;
        SparsePoly c = canonical(f, &u);
        fz.unit = f.F().mul(fz.unit, u);
        fz.factors.emplace_back(c, 1);
    }
    normalize_factorization(fz);
    return fz;
}

int max_deg(const std::vector<SparsePoly>& fs) {
    int d = 1;
    for (auto& f : fs) d = std::max(d, f.max_individual_degree());
    return d;
}

int max_terms(const std::vector<SparsePoly>& fs) {
    size_t s = 1;
    for (auto& f : fs) s = std::max(s, f.sparsity());
    return static_cast<int>(s);
}

std::string run_cli(const std::string& cli, const std::string& args, int* status = nullptr) {
    std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return "";
    std::string out;
    std::array<char, 4096> buf;
    size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
    int st = pclose(p);
    if (status) *status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

// ---- AC1

Outcome ac1() {
    Outcome o;
    FieldPtr F = Field::prime(7);
    double worst = 0;
    for (int d : {2, 3})
        for (int k = 1; k <= 3; ++k) {
            ++o.cases;
            std::ostringstream txt;
            for (int i = 1; i <= k; ++i) txt << (i > 1 ? "*" : "") << "(x" << i << "^" << d << "-1)";
            SparsePoly f = parse_poly(txt.str(), F, k);
            AlgoParams P;
            P.n = k;
            P.s = 1 << k;
            P.d = d;
            auto t0 = Clock::now();
            try {
                Audit a = divisor_count_audit(f, P);
                const double el = secs(t0);
                worst = std::max(worst, el);
                const int want = k * d;
                if (a.count != want || a.bound != want || !a.ok)
                    o.fail_case(txt.str() + ": count " + std::to_string(a.count) + " bound " + std::to_string(a.bound));
                if (el >= 60) o.fail_case(txt.str() + ": took " + std::to_string(el) + " s");
            } catch (const Error& e) {
                o.fail_case(txt.str() + ": " + kind_name(e.kind()));
            }
        }
    o.detail = "worst " + std::to_string(worst) + " s";
    return o;
}

// ---- AC2

Outcome ac2() {
    Outcome o;
    Rng r(2002);
    const std::uint64_t primes[] = {5, 7, 11};
    size_t ndiv = 0, nfac = 0;
    auto t0 = Clock::now();
    for (int idx = 0; idx < 300; ++idx) {
        FieldPtr F = Field::prime(primes[idx % 3]);
        const int n = 1 + (idx / 3) % 3;
        const int d = 1 + (idx / 9) % 2;
        SparsePoly f;
        const int ell = std::min(n * d, 1 + (idx / 18) % 3);
        for (;;) {
            std::vector<SparsePoly> fs;
            for (int j = 0; j < ell; ++j)
                fs.push_back(inst::random_sparse(r, F, n, ell == 1 ? 3 : 2, 1 + static_cast<int>(r.below(d))));
            if (r.below(4) == 0) fs.push_back(SparsePoly::var(F, n, static_cast<int>(r.below(n))));
            f = product(fs, F, n);
            if (!f.is_zero() && !f.is_constant() && f.sparsity() <= 6 && f.max_individual_degree() <= d) break;
        }
        const int s = static_cast<int>(f.sparsity()) + static_cast<int>(r.below(7 - f.sparsity()));
        AlgoParams P;
        P.n = n;
        P.s = s;
        P.d = d;
        ++o.cases;
        const std::string tag = f.to_string() + " over F_" + std::to_string(F->p());
        try {
            DivisorSet got = sparse_divisors(f, P);
            DivisorSet want = oracle::brute_divisors(f, static_cast<size_t>(s));
            if (got.monomial != want.monomial || got.divisors != want.divisors) o.fail_case("divisors of " + tag);
            ndiv += want.divisors.size();
            Factorization gf = factor_nsd(f, P);
            Factorization wf = oracle::brute_factor(f);
            if (fz_str(gf) != fz_str(wf)) o.fail_case("factors of " + tag + ": " + fz_str(gf) + " vs " + fz_str(wf));
            nfac += wf.factors.size();
        } catch (const Error& e) {
            o.fail_case(tag + ": " + kind_name(e.kind()) + " " + e.what());
        }
    }
    const double el = secs(t0);
    if (el >= 600) o.fail_case("total " + std::to_string(el) + " s");
    o.detail = std::to_string(ndiv) + " divisors, " + std::to_string(nfac) + " distinct factors, " + std::to_string(el) + " s";
    return o;
}

// ---- AC3

Outcome ac3() {
    Outcome o;
    Rng r(3003);
    FieldPtr F = Field::prime(11);
    auto t0 = Clock::now();
    for (int idx = 0; idx < 100; ++idx) {
        const int n = 1 + idx % 3;
        const int d = 1 + (idx / 3) % 2;
        const int s = 2 + static_cast<int>(r.below(3));
        const int ell = 1 + static_cast<int>(r.below(3));
        std::vector<SparsePoly> fs;
        for (int j = 0; j < ell; ++j) {
            if (j > 0 && r.below(3) == 0) fs.push_back(fs.back());
            else fs.push_back(inst::random_irreducible(r, F, n, s, d));
        }
        const Fe c = F->element(1 + r.below(10));
        fs[0] = scale(fs[0], c);
        AlgoParams P;
        P.n = n;
        P.s = s;
        P.d = d;
        P.ell = ell;
        ++o.cases;
        Factorization want = expected_of(fs, 1);
        try {
            Factorization got = factor_product_irreducibles(make_product(fs, d, s), P);
            if (fz_str(got) != fz_str(want)) o.fail_case(fz_str(got) + " vs " + fz_str(want));
        } catch (const Error& e) {
            o.fail_case(fz_str(want) + ": " + kind_name(e.kind()) + " " + e.what());
        }
    }
    const double el = secs(t0);
    if (el >= 900) o.fail_case("total " + std::to_string(el) + " s");
    o.detail = std::to_string(el) + " s";
    return o;
}

// ---- AC4

Outcome ac4() {
    Outcome o;
    auto t0 = Clock::now();
    int positives = 0;
    for (int mode = 0; mode < 2; ++mode) {
        Rng r(4004 + mode);
        FieldPtr F = mode == 0 ? Field::prime(11) : Field::extension(2, 5);
        for (int idx = 0; idx < 200; ++idx) {
            const int n = 1 + idx % 3;
            const int d = mode == 0 ? 1 + (idx / 3) % 2 : 1 + (idx / 3) % 2;
            const int s = 1 + static_cast<int>(r.below(3));
            std::vector<SparsePoly> gs;
            const int lg = 1 + static_cast<int>(r.below(3));
            for (int j = 0; j < lg; ++j) gs.push_back(inst::random_sparse(r, F, n, s, d));
            std::vector<SparsePoly> fs;
            for (auto& g : gs)
                if (r.below(2)) fs.push_back(g);
            switch (r.below(3)) {
            case 0:
                break;
            case 1:
                fs.push_back(inst::random_sparse(r, F, n, s, d));
                break;
            default:
                fs.push_back(gs[r.below(gs.size())]);
                break;
            }
            if (fs.empty()) fs.push_back(gs[0]);
            std::vector<SparsePoly> all = fs;
            all.insert(all.end(), gs.begin(), gs.end());
            AlgoParams P;
            P.n = n;
            P.d = max_deg(all);
            P.s = max_terms(all);
            ++o.cases;
            const bool want = exact_div(product(gs, F, n), product(fs, F, n)).has_value();
            positives += want;
            try {
                bool got = divides(make_product(fs, P.d, P.s), make_product(gs, P.d, P.s), P);
                if (got != want)
                    o.fail_case(std::string(mode ? "SMALL " : "LARGE ") + product(fs, F, n).to_string() + " | " +
                                product(gs, F, n).to_string());
            } catch (const Error& e) {
                o.fail_case(std::string(kind_name(e.kind())) + " " + e.what());
            }
        }
    }
    const double el = secs(t0);
    if (el >= 600) o.fail_case("total " + std::to_string(el) + " s");
    o.detail = std::to_string(positives) + " dividing pairs, " + std::to_string(el) + " s";
    return o;
}

// ---- AC5

Outcome ac5() {
    Outcome o;
    Rng r(5005);
    FieldPtr F = Field::prime(13);
    const std::uint64_t Q = F->size() - 1;
    for (int idx = 0; idx < 100; ++idx) {
        const int n = 1 + idx % 3;
        const int e = 2 + idx % 2;
        const int d = 1 + (idx / 6) % 2;
        std::vector<SparsePoly> hs = inst::random_irreducibles(r, F, n, 3, d, 1 + static_cast<int>(r.below(2)));
        Fe c = F->pow(F->element(1 + r.below(12)), e);
        Fe twist;
        do twist = F->element(1 + r.below(12));
        while (F->pow(twist, Q / std::gcd<std::uint64_t>(e, Q)) == 1);
        SparsePoly L;
        for (;;) {
            L = SparsePoly::var(F, n, static_cast<int>(r.below(n))) + SparsePoly::constant(F, n, F->element(1 + r.below(12)));
            bool coprime = true;
            for (auto& h : hs) coprime = coprime && canonical(h) != canonical(L);
            if (coprime) break;
        }
        std::vector<SparsePoly> base;
        for (auto& h : hs)
            for (int t = 0; t < e; ++t) base.push_back(h);
        auto with_unit = [&](Fe u) {
            std::vector<SparsePoly> v = base;
            v[0] = scale(v[0], u);
            return v;
        };
        AlgoParams P;
        P.n = n;
        P.d = d;
        P.s = 3;
        ++o.cases;
        try {
            auto planted = with_unit(c);
            auto extra = planted;
            extra.push_back(L);
            auto twisted = with_unit(F->mul(c, twist));
            const bool a = is_complete_power(make_product(planted, d, 3), e, P);
            const bool b = is_complete_power(make_product(extra, d, 3), e, P);
            const bool t = is_complete_power(make_product(twisted, d, 3), e, P);
            if (!a || b || t)
                o.fail_case("e=" + std::to_string(e) + " " + product(planted, F, n).to_string() + ": " + std::to_string(a) +
                            std::to_string(b) + std::to_string(t));
        } catch (const Error& ex) {
            o.fail_case(std::string(kind_name(ex.kind())) + " " + ex.what());
        }
    }
    o.detail = "p = 13";
    return o;
}

// ---- AC6

Outcome ac6() {
    Outcome o;
    Rng r(6006);
    FieldPtr F = Field::prime(11);
    auto t0 = Clock::now();
    for (int idx = 0; idx < 100; ++idx) {
        const int n = 2 + idx % 2;
        const int s = 3;
        std::vector<SparsePoly> mq;
        const int k = 1 + static_cast<int>(r.below(2));
        for (int j = 0; j < k; ++j) {
            if (j > 0 && r.below(3) == 0) mq.push_back(mq.back());
            else mq.push_back(inst::random_irreducible(r, F, n, s, 2));
        }
        SparsePoly hi;
        do hi = inst::random_irreducible(r, F, n, s, 3);
        while (hi.max_individual_degree() < 3);
        std::vector<SparsePoly> fs = mq;
        fs.push_back(hi);
        std::vector<std::pair<SparsePoly, int>> want;
        {
            Factorization w = expected_of(mq, 1);
            want = w.factors;
        }
        if (r.below(3) == 0) {
            const int v = static_cast<int>(r.below(n));
            fs.push_back(SparsePoly::var(F, n, v));
            want.emplace_back(SparsePoly::var(F, n, v), 1);
        }
        std::sort(want.begin(), want.end());
        AlgoParams P;
        P.n = n;
        P.s = s;
        P.d = 3;
        P.ell = static_cast<int>(fs.size());
        ++o.cases;
        try {
            auto got = multiquadratic_factors(make_product(fs, 3, s), P);
            if (got != want) {
                Factorization a, b;
                a.factors = got;
                b.factors = want;
                o.fail_case(fz_str(a) + " vs " + fz_str(b));
            }
        } catch (const Error& e) {
            o.fail_case(std::string(kind_name(e.kind())) + " " + e.what());
        }
    }
    o.detail = std::to_string(secs(t0)) + " s";
    return o;
}

// ---- AC7

Outcome ac7() {
    Outcome o;
    Rng r(7007);
    FieldPtr F = Field::prime(11);
    int multi = 0;
    auto t0 = Clock::now();
    for (int idx = 0; idx < 100; ++idx) {
        const int n = 1 + idx % 3;
        const bool is_multi = idx % 4 == 3 || idx >= 90;
        // f: irreducibles with multiplicities, b: part of f
        std::vector<SparsePoly> irr = inst::random_irreducibles(r, F, n, 3, 1 + static_cast<int>(r.below(2)),
                                                                1 + static_cast<int>(r.below(3)));
        std::vector<SparsePoly> fs, bs, rest;
        for (auto& phi : irr) {
            const int t = 1 + static_cast<int>(r.below(2));
            const int k = static_cast<int>(r.below(t + 1));
            for (int j = 0; j < t; ++j) {
                fs.push_back(phi);
                (j < k ? bs : rest).push_back(phi);
            }
        }
        if (bs.empty()) {
            bs.push_back(fs[0]);
            rest.erase(rest.begin());
        }
        SparsePoly b = product(bs, F, n);
        // a and b live in the (n, 6, 3)-sparse class
        const int cs = 6, cd = 3;
        auto in_class = [&](const SparsePoly& h) {
            return static_cast<int>(h.sparsity()) <= cs && h.max_individual_degree() <= cd;
        };
        if (!in_class(b)) {
            --idx;
            continue;
        }
        auto coprime_to_b = [&](const SparsePoly& a) { return gcd_full(a, b).is_constant(); };
        std::vector<SparsePoly> fset;
        for (auto& phi : irr) fset.push_back(canonical(phi));
        std::sort(fset.begin(), fset.end());
        fset.erase(std::unique(fset.begin(), fset.end()), fset.end());
        ++o.cases;
        try {
            if (!is_multi) {
                SparsePoly a;
                do a = inst::random_sparse(r, F, n, 1 + static_cast<int>(r.below(3)), 1 + static_cast<int>(r.below(2)));
                while (!coprime_to_b(a));
                std::vector<SparsePoly> q = rest;
                q.push_back(a);
                AlgoParams P;
                P.n = n;
                P.d = cd;
                P.s = cs;
                auto res = rational_interpolate(make_product(q, cd, cs), make_product(fs, cd, cs), fset, P);
                if (res.b != canonical(b) || res.a * b != a * res.b)
                    o.fail_case("a=" + a.to_string() + " b=" + b.to_string() + " got " + res.a.to_string() + " / " +
                                res.b.to_string());
            } else {
                ++multi;
                const int D = 2;
                std::vector<SparsePoly> as;
                SparsePoly a1;
                do a1 = inst::random_sparse(r, F, n, 1 + static_cast<int>(r.below(2)), 1);
                while (!coprime_to_b(a1));
                as.push_back(a1);
                // a_2 shares a factor with b
                SparsePoly a2;
                do a2 = inst::random_sparse(r, F, n, 1 + static_cast<int>(r.below(2)), 1) * bs[r.below(bs.size())];
                while (!in_class(a2));
                as.push_back(a2);
                std::vector<BoxPtr> qs;
                AlgoParams P;
                P.n = n;
                P.d = cd;
                P.s = cs;
                for (int j = 1; j <= D; ++j) {
                    std::vector<SparsePoly> q = rest;
                    for (int t = 1; t < j; ++t) q.insert(q.end(), fs.begin(), fs.end());
                    q.push_back(as[j - 1]);
                    qs.push_back(make_product(q, cd, cs));
                }
                auto res = rational_interpolate_multi(qs, make_product(fs, cd, cs), fset, P);
                bool ok = res.b == canonical(b) && res.a.size() == as.size();
                for (size_t j = 0; ok && j < as.size(); ++j) ok = res.a[j] * b == as[j] * res.b;
                if (!ok) o.fail_case("multi b=" + b.to_string() + " got b=" + res.b.to_string());
            }
        } catch (const Error& e) {
            o.fail_case(std::string(kind_name(e.kind())) + " " + e.what() + " b=" + b.to_string());
        }
    }
    if (multi < 20) o.fail_case("only " + std::to_string(multi) + " multi instances");
    o.detail = std::to_string(multi) + " multi, " + std::to_string(secs(t0)) + " s";
    return o;
}

// ---- AC8

std::uint64_t prime_at_least(std::uint64_t v) {
    for (;; ++v) {
        try {
            Field::prime(v);
            return v;
        } catch (const Error&) {
        }
    }
}

Outcome ac8() {
    Outcome o;
    MInputs mi;
    mi.n = 2;
    mi.s = 2;
    mi.d = 1;
    const std::uint64_t m = m_for(Task::CHAR0_COPRIME, mi);
    const std::uint64_t p = prime_at_least(Generator::required_size(m, 2, 1));
    FieldPtr F = Field::prime(p);
    Generator G = Generator::build(m, 2, F, 1);
    Rng r(8008);
    auto rnd = [&] { return F->element(1 + r.below(F->size() - 1)); };
    for (int idx = 0; idx < 100; ++idx) {
        SparsePoly f = inst::random_irreducible(r, F, 2, 2, 1);
        SparsePoly g;
        do g = inst::random_irreducible(r, F, 2, 2, 1);
        while (canonical(g) == canonical(f));
        ++o.cases;
        bool ok = true;
        for (int i = 0; i < 2 && ok; ++i) {
            Generator gi = G.revive(i);
            const int df = f.individual_degree(i), dg = g.individual_degree(i);
            bool certified = false;
            for (int attempt = 0; attempt < 4 && !certified; ++attempt) {
                const Fe y = gi.alpha(1 + r.below(m));
                const Fe z = gi.beta(1 + static_cast<int>(r.below(2)));
                const Fe x = rnd(), w = rnd();
                auto image = [&](const SparsePoly& h, int deg) {
                    std::vector<Fe> us, vs;
                    for (int t = 0; t <= deg; ++t) {
                        us.push_back(F->element(t));
                        vs.push_back(h.eval(gi.eval({x, y, z, w, us.back()})));
                    }
                    return up::interpolate(*F, us, vs);
                };
                UPoly a = image(f, df), b = image(g, dg);
                up::trim(a);
                up::trim(b);
                if (up::deg(a) != df || up::deg(b) != dg) continue;
                const bool coprime = up::deg(up::gcd(*F, a, b)) == 0;
                const bool sqf_a = df == 0 || up::deg(up::gcd(*F, a, up::deriv(*F, a))) == 0;
                const bool sqf_b = dg == 0 || up::deg(up::gcd(*F, b, up::deriv(*F, b))) == 0;
                certified = coprime && sqf_a && sqf_b;
            }
            ok = certified;
        }
        if (!ok) o.fail_case(f.to_string() + " , " + g.to_string());
    }
    o.detail = "m = " + std::to_string(m) + ", p = " + std::to_string(p);
    return o;
}

// ---- AC9

std::uint64_t factorial(int k) {
    std::uint64_t v = 1;
    for (int i = 2; i <= k; ++i) v *= i;
    return v;
}

Outcome ac9() {
    Outcome o;
    FieldPtr F = Field::prime(11);
    int fails[4] = {0, 0, 0, 0};
    // kernel dimension of the Sylvester matrix is the degree of the gcd
    {
        Rng r(9001);
        for (int idx = 0; idx < 200; ++idx) {
            const int n = 1 + idx % 2;
            SparsePoly h = r.below(4) ? inst::random_sparse(r, F, n, 2, 1 + static_cast<int>(r.below(2)))
                                      : SparsePoly::constant(F, n, 1);
            SparsePoly f = inst::random_sparse(r, F, n, 2, 2) * h;
            SparsePoly g = inst::random_sparse(r, F, n, 2, 2) * h;
            if (f.individual_degree(0) + g.individual_degree(0) == 0) g = g * SparsePoly::var(F, n, 0);
            ++o.cases;
            const int want = std::max(0, gcd_full(f, g).individual_degree(0));
            if (kernel_dim(sylvester(f, g, 0)) != want) {
                ++fails[0];
                o.fail_case("kernel " + f.to_string() + " , " + g.to_string());
            }
        }
    }
    // resultant sparsity and degree
    {
        Rng r(9002);
        for (int idx = 0; idx < 200; ++idx) {
            const int n = 2 + idx % 2;
            const int d = 1 + (idx / 2) % 2;
            const int s = 1 + static_cast<int>(r.below(3));
            SparsePoly f = inst::random_sparse(r, F, n, s, d), g = inst::random_sparse(r, F, n, s, d);
            if (f.individual_degree(0) <= 0) f = f * SparsePoly::var(F, n, 0) + SparsePoly::constant(F, n, 1);
            if (g.individual_degree(0) <= 0) g = g * SparsePoly::var(F, n, 0) + SparsePoly::constant(F, n, 2);
            const int se = static_cast<int>(std::max(f.sparsity(), g.sparsity()));
            const int de = std::max(f.max_individual_degree(), g.max_individual_degree());
            ++o.cases;
            SparsePoly R = resultant(f, g, 0);
            const double bound = static_cast<double>(factorial(2 * de)) * std::pow(se, 2 * de);
            if (static_cast<double>(R.sparsity()) > bound || (!R.is_zero() && R.max_individual_degree() > 2 * de * de)) {
                ++fails[1];
                o.fail_case("resultant bound " + f.to_string() + " , " + g.to_string());
            }
        }
    }
    // delta_k vanishing and multiplicity
    {
        Rng r(9003);
        for (int idx = 0; idx < 200; ++idx) {
            const int k = 1 + idx % 3;
            SparsePoly f = SparsePoly::constant(F, 1, 1);
            const int parts = 1 + static_cast<int>(r.below(3));
            for (int j = 0; j < parts; ++j) {
                SparsePoly lin = SparsePoly::var(F, 1, 0) + SparsePoly::constant(F, 1, F->element(r.below(11)));
                f = f * pow(lin, 1 + static_cast<unsigned>(r.below(3)));
            }
            if (f.individual_degree(0) >= 11) continue;
            ++o.cases;
            int maxmult = 0;
            for (auto& [h, e] : multi_factor(f).factors) maxmult = std::max(maxmult, e);
            const bool vanishes = delta_k(f, 0, k).value.is_zero();
            if (vanishes != (maxmult >= k + 1)) {
                ++fails[2];
                o.fail_case("delta_" + std::to_string(k) + " " + f.to_string());
            }
        }
    }
    // delta_1 is lambda_1^deg times the discriminant
    {
        Rng r(9004);
        for (int idx = 0; idx < 200; ++idx) {
            const int n = 1 + idx % 2;
            SparsePoly f = inst::random_sparse(r, F, n, 3, 3);
            if (f.individual_degree(0) <= 0) f = f * SparsePoly::var(F, n, 0) + SparsePoly::constant(F, n, 1);
            ++o.cases;
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            SparsePoly disc = remap_vars(discriminant(f, 0), perm, n + 1);
            Mono lam(n + 1, 0);
            lam[n] = static_cast<std::uint32_t>(f.individual_degree(0));
            if (delta_k(f, 0, 1).value != mul_monomial(disc, lam)) {
                ++fails[3];
                o.fail_case("delta_1 " + f.to_string());
            }
        }
    }
    o.detail = "failures kernel/resultant/delta/identity = " + std::to_string(fails[0]) + "/" + std::to_string(fails[1]) +
               "/" + std::to_string(fails[2]) + "/" + std::to_string(fails[3]);
    return o;
}

// ---- AC10

Outcome ac10(const std::string& cli) {
    Outcome o;
    for (const char* task : {"divisors", "product"}) {
        int st = 0;
        std::string csv = run_cli(cli, std::string("bench --task ") + task + " --p 11 --n 3 --d 2 --ell 2 --s-list 2,4,8,16", &st);
        if (st != 0) {
            o.fail_case(std::string("bench ") + task + " exited " + std::to_string(st));
            continue;
        }
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        if (line != "task,n,s,d,ell,m,queries,millis,count,bound,faces,query_bound") o.fail_case("unexpected header " + line);
        int rows = 0;
        while (std::getline(in, line)) {
            std::vector<std::string> c;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) c.push_back(cell);
            if (c.size() != 12) {
                o.fail_case("bad row " + line);
                continue;
            }
            ++rows;
            ++o.cases;
            const unsigned long long queries = std::stoull(c[6]), count = std::stoull(c[8]), bound = std::stoull(c[9]),
                                     qbound = std::stoull(c[11]);
            if (count > bound) o.fail_case(line + ": count above bound");
            if (queries > qbound) o.fail_case(line + ": queries above the polynomial bound");
        }
        if (rows != 4) o.fail_case(std::string(task) + ": expected 4 rows");
    }
    o.detail = "s in {2,4,8,16}";
    return o;
}

// ---- AC11

Outcome ac11(const std::string& cli) {
    Outcome o;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("sf_accept_" + std::to_string(getpid()));
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& body) {
        std::ofstream(dir / name) << body;
        return "@" + (dir / name).string();
    };
    const std::string cube = write("cube.json", R"({"product":["x1+x2","x1+x2","x1+x2"],"s":2,"d":1})");
    const std::string prod = write("prod.json", R"({"product":["x1*x2+1","x1*x2+1","x1+x2+3","x2+2"],"s":3,"d":2})");
    const std::string f = write("f.json", R"({"product":["x1+4","x2+4"],"s":2,"d":1})");
    const std::string q = write("q.json", R"({"product":["x2","x2+4"],"s":2,"d":1})");
    const std::vector<std::string> cmds = {
        "factor --p 7 --d 2 --s 4 \"(x1+1)^2*(x2+3)\"",
        "factor --p 11 " + prod,
        "factor --p 11 --general " + prod,
        "divisors --p 5 --d 1 --s 4 \"(x1+4)*(x2+4)\"",
        "divisors --p 11 " + prod,
        "divides --p 7 --d 1 --s 2 \"x1+1\" \"x1^2+2*x1+1\"",
        "divides --p 2 --k 5 --d 2 " + cube + " " + prod,
        "power --p 11 --e 3 " + cube,
        "multiquad --p 11 " + prod,
        "multiplicity --p 11 --d 2 \"x1*x2+1\" " + prod,
        "interp --p 5 --d 1 --fset \"x1+4\" " + f + " " + q,
        "audit --p 7 --d 2 --s 4 \"(x1^2-1)*(x2^2-1)\"",
        "selftest --count 12 --no-clock",
        "bench --p 11 --n 3 --d 2 --ell 2 --no-clock",
        "bench --task product --p 11 --n 3 --d 2 --ell 2 --no-clock",
        "--task-m CHAR0_COPRIME --n 2 --s 2 --d 1",
    };
    for (auto& c : cmds) {
        ++o.cases;
        int s1 = 0, s2 = 0;
        const std::string a = run_cli(cli, c, &s1), b = run_cli(cli, c, &s2);
        if (a.empty()) o.fail_case(c + ": no output");
        else if (a != b || s1 != s2) o.fail_case(c + ": outputs differ");
    }
    fs::remove_all(dir);
    o.detail = std::to_string(cmds.size()) + " invocations";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::string cli;
    std::vector<int> only;
    app.add_option("--cli", cli, "path to the sparsefactor executable")->required();
    app.add_option("--only", only, "run only these criteria");
    CLI11_PARSE(app, argc, argv);
    setvbuf(stdout, nullptr, _IONBF, 0);

    struct Crit {
        int id;
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Crit> crits = {
        {1, "divisor-bound exactness", ac1},
        {2, "oracle equivalence grid", ac2},
        {3, "product factorization", ac3},
        {4, "divisibility test", ac4},
        {5, "complete-power test", ac5},
        {6, "multiquadratic recovery", ac6},
        {7, "rational interpolation", ac7},
        {8, "coprimality preservation", ac8},
        {9, "Sylvester and delta_k suite", ac9},
        {10, "scaling shape", [&] { return ac10(cli); }},
        {11, "determinism", [&] { return ac11(cli); }},
    };
    int failed = 0;
    for (auto& c : crits) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.fail_case(std::string("uncaught: ") + e.what());
        }
        failed += !o.pass;
        std::printf("AC%d %s %s: %d cases, %d failed; %s%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.cases, o.failures,
                    o.detail.c_str(), o.first_failure.empty() ? "" : "; first failure: ", o.first_failure.c_str());
    }
    return failed ? 1 : 0;
}
