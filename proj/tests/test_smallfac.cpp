#include <set>

#include "sparsefactor/instances.hpp"
#include "sparsefactor/oracle.hpp"
#include "sparsefactor/resmat.hpp"
#include "sparsefactor/smallfac.hpp"
#include "support.hpp"

using namespace sf;
using sft::P;

namespace {

UPoly U(std::initializer_list<Fe> c) { return UPoly(c); }

}  // namespace

TEST_CASE("univariate factorization") {
    FieldPtr F = Field::prime(5);
    UniFactorization a = uni_factor(*F, U({1, 0, 1}));
    REQUIRE(a.factors.size() == 2);
    CHECK(a.factors[0].first == U({2, 1}));
    CHECK(a.factors[1].first == U({3, 1}));
    UniFactorization b = uni_factor(*F, U({0, 0, 1}));
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0] == std::make_pair(U({0, 1}), 2));
    FieldPtr F2 = Field::prime(2);
    CHECK(uni_is_irreducible(*F2, U({1, 1, 0, 0, 1})));
    UniFactorization c = uni_factor(*F2, U({1, 1, 0, 0, 1}));
    CHECK(c.factors.size() == 1);
}

TEST_CASE("univariate factorization remultiplies over several fields") {
    inst::Rng r(11);
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {3, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        FieldPtr F = Field::extension(p, k);
        for (int t = 0; t < 40; ++t) {
            UPoly f(2 + r.below(9));
            for (auto& c : f) c = r.below(F->size());
            if (f.back() == 0) f.back() = 1;
            UniFactorization fz = uni_factor(*F, f);
            UPoly back = U({fz.unit});
            for (auto& [g, e] : fz.factors) {
                CHECK(up::lead(g) == 1);
                CHECK(uni_is_irreducible(*F, g));
                for (int i = 0; i < e; ++i) back = up::mul(*F, back, g);
            }
            CHECK(back == f);
        }
    }
}

TEST_CASE("squarefree decomposition") {
    FieldPtr F = Field::prime(7);
    auto a = squarefree_decomp(P("(x1-1)^2*(x1-2)", F, 1), 0);
    REQUIRE(a.size() == 2);
    CHECK(a[0] == std::make_pair(P("x1-2", F, 1), 1));
    CHECK(a[1] == std::make_pair(P("x1-1", F, 1), 2));
    SparsePoly g = P("x1^2*x2 + x1 + 1", F, 2);
    auto b = squarefree_decomp(g, 0);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == std::make_pair(g, 1));
    FieldPtr F5 = Field::prime(5);
    auto c = squarefree_decomp(P("x1^5 - 2", F5, 1), 0);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == std::make_pair(P("x1 - 2", F5, 1), 5));
    CHECK(pow(c[0].first, 5) == P("x1^5 - 2", F5, 1));
}

TEST_CASE("multivariate factorization") {
    FieldPtr F = Field::prime(5);
    Factorization a = multi_factor(P("(x1+x2)*(x1+x2+1)", F, 2));
    CHECK(a.factors.size() == 2);
    for (auto& fe : a.factors) CHECK(fe.second == 1);
    Factorization b = multi_factor(P("x1^2 - x2^2", F, 2));
    REQUIRE(b.factors.size() == 2);
    std::set<std::string> got{b.factors[0].first.to_string(), b.factors[1].first.to_string()};
    CHECK(got == std::set<std::string>{P("x1+x2", F, 2).to_string(), P("x1-x2", F, 2).to_string()});
    Factorization c = multi_factor(P("3*(x1*x2+1)^2*x1", F, 2));
    CHECK(c.unit == 3);
    CHECK(expand(c, F, 2) == P("3*(x1*x2+1)^2*x1", F, 2));
}

TEST_CASE("factor count of a reverse monic image is bounded by its y-degree") {
    // x0 plays the role of y: both factors have free term 1
    FieldPtr F = Field::prime(11);
    SparsePoly f = parse_poly("(x0*x1+1)*(1+x0*x1^2)", F, 2, 0);
    Factorization fz = multi_factor(f);
    CHECK(fz.factors.size() == 2);
    CHECK(static_cast<int>(fz.factors.size()) <= f.individual_degree(0));
    for (auto& [h, e] : fz.factors) CHECK(substitute(h, 0, 0).constant_term() == 1);
}

TEST_CASE("gcd in one variable") {
    FieldPtr F = Field::prime(7);
    SparsePoly f = P("3*x1*x2 + 2", F, 2);
    CHECK(gcd_multi(f, SparsePoly(F, 2), 0) == canonical(f));
    CHECK(gcd_multi(P("(x1+x2)^2", F, 2), P("(x1+x2)*(x1+1)", F, 2), 0) == P("x1+x2", F, 2));

    inst::Rng r(14);
    FieldPtr F11 = Field::prime(11);
    int planted = 0;
    for (int t = 0; t < 100 && planted < 40; ++t) {
        SparsePoly h = inst::random_irreducible(r, F11, 3, 3, 2, {0});
        SparsePoly a = inst::random_sparse(r, F11, 3, 2, 1);
        SparsePoly b = inst::random_sparse(r, F11, 3, 2, 1);
        if (a.individual_degree(0) + b.individual_degree(0) == 0) continue;
        if (resultant(a, b, 0).is_zero()) continue;
        ++planted;
        CHECK(gcd_multi(a * h, b * h, 0) == canonical(h));
    }
    CHECK(planted == 40);
}

TEST_CASE("multivariate factorization agrees with the brute-force oracle") {
    inst::Rng r(15);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
        FieldPtr F = Field::prime(p);
        for (int t = 0; t < 40; ++t) {
            const int n = 1 + static_cast<int>(r.below(3));
            SparsePoly f = inst::random_sparse(r, F, n, 2, 1) * inst::random_sparse(r, F, n, 2, 1);
            if (r.below(2)) f = f * inst::random_sparse(r, F, n, 2, 1);
            if (f.max_individual_degree() > 3) continue;
            Factorization got = multi_factor(f);
            CHECK(expand(got, F, n) == f);
            CHECK(oracle::describe(got) == oracle::describe(oracle::brute_factor(f)));
        }
    }
}

TEST_CASE("reported irreducibles have no proper divisor") {
    inst::Rng r(16);
    for (std::uint64_t p : {2, 3, 5, 7}) {
        FieldPtr F = Field::prime(p);
        for (int t = 0; t < 25; ++t) {
            SparsePoly f = inst::random_sparse(r, F, 2, 3, 2) * inst::random_sparse(r, F, 2, 2, 1);
            for (auto& [h, e] : multi_factor(f).factors) {
                if (h.total_degree() > 4 || h.sparsity() == 1) continue;
                // divisors of h: everything except 1 and h itself must be absent
                DivisorSet ds = oracle::brute_divisors(h);
                CHECK(ds.divisors.size() == 2);
            }
        }
    }
}

TEST_CASE("kernel dimension matches gcd degree across modules") {
    inst::Rng r(17);
    FieldPtr F = Field::prime(7);
    for (int t = 0; t < 50; ++t) {
        SparsePoly f = inst::random_sparse(r, F, 2, 3, 2), g = inst::random_sparse(r, F, 2, 3, 2);
        if (r.below(2)) {
            SparsePoly h = inst::random_sparse(r, F, 2, 2, 1);
            f = f * h;
            g = g * h;
        }
        if (f.individual_degree(0) == 0 && g.individual_degree(0) == 0) continue;
        CHECK(kernel_dim(sylvester(f, g, 0)) == gcd_multi(f, g, 0).individual_degree(0));
    }
}
