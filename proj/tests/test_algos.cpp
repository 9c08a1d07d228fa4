#include "sparsefactor/algos.hpp"
#include "sparsefactor/instances.hpp"
#include "sparsefactor/oracle.hpp"
#include "support.hpp"

using namespace sf;
using sft::kind_of;
using sft::P;

namespace {

AlgoParams params(int n, int s, int d, int ell = 1) {
    AlgoParams p;
    p.n = n;
    p.s = s;
    p.d = d;
    p.ell = ell;
    return p;
}

std::vector<SparsePoly> polys(const std::vector<std::string>& ts, const FieldPtr& F, int n) {
    std::vector<SparsePoly> out;
    for (auto& t : ts) out.push_back(P(t, F, n));
    return out;
}

std::string fz(const Factorization& f) { return oracle::describe(f); }

}  // namespace

TEST_CASE("multiplicity of an irreducible") {
    FieldPtr F = Field::prime(11);
    SparsePoly phi = P("x1+x2", F, 2);
    BoxPtr f = make_product(polys({"x1+x2", "x1+x2", "x1+x2", "x1*x2+1"}, F, 2), 1, 2);
    CHECK(multiplicity_of(phi, f, params(2, 2, 1, 4)) == 3);
    CHECK(multiplicity_of(P("x1+1", F, 2), f, params(2, 2, 1, 4)) == 0);
    BoxPtr g = make_product(polys({"x1+x2", "x1+x2", "x1*x2+1"}, F, 2), 1, 2);
    CHECK(multiplicity_of(phi, g, params(2, 2, 1, 3)) == 2);
    CHECK(multiplicity_of(phi, make_explicit(P("(x1+x2)^2*(x1*x2+1)", F, 2), 3, 6), params(2, 6, 3)) == 2);
}

TEST_CASE("multiplicity grows by one under multiplication") {
    inst::Rng r(40);
    FieldPtr F = Field::prime(11);
    for (int t = 0; t < 15; ++t) {
        SparsePoly phi = inst::random_irreducible(r, F, 2, 2, 1);
        std::vector<SparsePoly> fs = inst::random_irreducibles(r, F, 2, 2, 1, 2);
        if (r.below(2)) fs.push_back(phi);
        const int k0 = multiplicity_of(phi, make_product(fs, 1, 2), params(2, 2, 1));
        fs.push_back(phi);
        CHECK(multiplicity_of(phi, make_product(fs, 1, 2), params(2, 2, 1)) == k0 + 1);
    }
}

TEST_CASE("divisibility of products") {
    FieldPtr F = Field::prime(7);
    BoxPtr f = make_product(polys({"x1+1", "x2+3"}, F, 2), 1, 2);
    CHECK(divides(f, f, params(2, 2, 1)));
    BoxPtr a = make_product(polys({"x1+1", "x1+1"}, F, 2), 1, 2);
    BoxPtr b = make_product(polys({"x1+1", "x2+1"}, F, 2), 1, 2);
    CHECK_FALSE(divides(a, b, params(2, 2, 1)));
    CHECK(divides(make_explicit(P("x1+1", F, 2)), make_explicit(P("x1^2+2*x1+1", F, 2)), params(2, 2, 2)));
}

TEST_CASE("divides agrees with exact division") {
    inst::Rng r(41);
    for (std::uint64_t p : {5, 7, 11}) {
        FieldPtr F = Field::prime(p);
        for (int t = 0; t < 12; ++t) {
            const int n = 1 + static_cast<int>(r.below(3));
            SparsePoly f = inst::random_sparse(r, F, n, 2, 1);
            SparsePoly h = inst::random_sparse(r, F, n, 2, 1);
            SparsePoly g = f * h;
            SparsePoly g1 = g + SparsePoly::constant(F, n, 1);
            AlgoParams P = params(n, 4, 2);
            CHECK(divides(make_explicit(f, 2, 4), make_explicit(g, 2, 4), P));
            const bool want = exact_div(g1, f).has_value();
            if (g1.sparsity() <= 4 && g1.max_individual_degree() <= 2)
                CHECK(divides(make_explicit(f, 2, 4), make_explicit(g1, 2, 4), P) == want);
        }
    }
}

TEST_CASE("complete powers") {
    FieldPtr F = Field::prime(11);
    BoxPtr cube = make_product(polys({"x1+x2+1", "x1+x2+1", "x1+x2+1"}, F, 2), 1, 3);
    CHECK(is_complete_power(cube, 3, params(2, 3, 1, 3)));
    CHECK_FALSE(is_complete_power(cube, 2, params(2, 3, 1, 3)));
    FieldPtr F5 = Field::prime(5);
    BoxPtr twice = make_product(polys({"2*x1+2", "x1+1"}, F5, 1), 1, 2);
    CHECK_FALSE(is_complete_power(twice, 2, params(1, 2, 1, 2)));
    BoxPtr four = make_product(polys({"4*x1+4", "x1+1"}, F5, 1), 1, 2);
    CHECK(is_complete_power(four, 2, params(1, 2, 1, 2)));
    FieldPtr F4 = Field::extension(2, 2);
    CHECK(kind_of([&] { is_complete_power(make_explicit(P("x1+1", F4, 1)), 2, params(1, 2, 1)); }) ==
          ErrorKind::CharModeViolation);
}

TEST_CASE("rational interpolation") {
    FieldPtr F = Field::prime(5);
    BoxPtr f = make_product(polys({"x1+4", "x2+4"}, F, 2), 1, 2);
    auto fset = polys({"x1+4", "x2+4"}, F, 2);
    RationalResult a = rational_interpolate(make_explicit(P("x2*(x1+4)*(x2+4)", F, 2), 2, 4), f, fset, params(2, 2, 1, 2));
    CHECK(a.a == P("x2", F, 2));
    CHECK(a.b.is_one());
    RationalResult b = rational_interpolate(make_explicit(P("x2*(x2+4)", F, 2), 2, 2), f, fset, params(2, 2, 1, 2));
    CHECK(b.a == P("x2", F, 2));
    CHECK(b.b == P("x1+4", F, 2));
    RationalResult c = rational_interpolate(make_explicit(P("3", F, 2), 1, 1), f, fset, params(2, 4, 1, 2));
    CHECK(c.a == P("3", F, 2));
    CHECK(c.b == P("(x1+4)*(x2+4)", F, 2));
}

TEST_CASE("rational interpolation with several numerators") {
    FieldPtr F = Field::prime(11);
    auto fs = polys({"x1+1", "x2+2"}, F, 2);
    BoxPtr f = make_product(fs, 1, 2);
    AlgoParams P2 = params(2, 2, 1, 2);
    // D = 1 matches the single version
    BoxPtr q = make_explicit(P("x2*(x2+2)", F, 2), 2, 2);
    RationalMultiResult one = rational_interpolate_multi({q}, f, fs, P2);
    RationalResult ref = rational_interpolate(q, f, fs, P2);
    REQUIRE(one.a.size() == 1);
    CHECK(one.a[0] == ref.a);
    CHECK(one.b == ref.b);
    // a_1 shares x1+1 with b, a_2 does not
    BoxPtr q1 = make_explicit(P("(x1+1)*(x2+2)", F, 2), 2, 4);
    BoxPtr q2 = make_explicit(P("x2*(x1+1)*(x2+2)^2", F, 2), 3, 6);
    RationalMultiResult two = rational_interpolate_multi({q1, q2}, f, fs, P2);
    REQUIRE(two.a.size() == 2);
    CHECK(two.a[0] == P("x1+1", F, 2));
    CHECK(two.a[1] == P("x2", F, 2));
    CHECK(two.b == P("x1+1", F, 2));
    // all a_j = 1 and b = 1
    BoxPtr f1 = make_explicit(P("x1+1", F, 2), 1, 2);
    RationalMultiResult ones = rational_interpolate_multi(
        {make_explicit(P("x1+1", F, 2), 1, 2), make_explicit(P("(x1+1)^2", F, 2), 2, 3)}, f1, polys({"x1+1"}, F, 2),
        params(2, 2, 1));
    REQUIRE(ones.a.size() == 2);
    CHECK(ones.a[0].is_one());
    CHECK(ones.a[1].is_one());
    CHECK(ones.b.is_one());
}

TEST_CASE("sparse divisors") {
    FieldPtr F = Field::prime(5);
    DivisorSet a = sparse_divisors(P("x1+1", F, 1), params(1, 2, 1));
    CHECK(a.monomial == Mono{0});
    CHECK(a.divisors == polys({"1", "x1+1"}, F, 1));
    DivisorSet b = sparse_divisors(P("(x1+4)*(x2+4)", F, 2), params(2, 4, 1));
    CHECK(b.divisors.size() == 4);
    CHECK(b.divisors == oracle::brute_divisors(P("(x1+4)*(x2+4)", F, 2)).divisors);
    DivisorSet c = sparse_divisors(P("x1^2*x2", F, 2), params(2, 1, 2));
    CHECK(c.monomial == Mono{2, 1});
    CHECK(c.divisors == polys({"1"}, F, 2));
}

TEST_CASE("sparse divisors stay within the count bound and match the oracle") {
    inst::Rng r(42);
    for (std::uint64_t p : {5, 7, 11}) {
        FieldPtr F = Field::prime(p);
        for (int t = 0; t < 10; ++t) {
            const int n = 1 + static_cast<int>(r.below(3));
            SparsePoly f = inst::random_sparse(r, F, n, 2, 1) * inst::random_sparse(r, F, n, 2, 1);
            if (f.max_individual_degree() > 2) continue;
            const int s = static_cast<int>(f.sparsity());
            DivisorSet got = sparse_divisors(f, params(n, s, 2));
            std::size_t bound = 1;
            for (int i = 0; i < 2; ++i) bound *= s;
            CHECK(got.divisors.size() <= bound);
            DivisorSet want = oracle::brute_divisors(f, static_cast<std::size_t>(s));
            CHECK(got.divisors == want.divisors);
            CHECK(got.monomial == want.monomial);
        }
    }
}

TEST_CASE("divisors of products") {
    FieldPtr F = Field::prime(11);
    SparsePoly e = P("(x1+3)*(x2+5)", F, 2);
    CHECK(divisors_of_product(make_explicit(e, 1, 4), params(2, 4, 1)).divisors ==
          sparse_divisors(e, params(2, 4, 1)).divisors);
    // (x2+1)(x3+1) has four terms, so it is not a 2-sparse divisor
    BoxPtr b = make_product(polys({"x1+1", "x2+1", "x3+1"}, F, 3), 1, 2);
    DivisorSet ds = divisors_of_product(b, params(3, 2, 1, 3));
    CHECK(ds.divisors == polys({"1", "x3+1", "x2+1", "x1+1"}, F, 3));
    SparsePoly phi = P("x1*x2+3", F, 2);
    DivisorSet sq = divisors_of_product(make_product({phi, phi}, 1, 2), params(2, 2, 1, 2));
    CHECK(sq.divisors == std::vector<SparsePoly>{P("1", F, 2), phi});
    // phi^2 has individual degree 2, so it only counts once d = 2
    DivisorSet sq3 = divisors_of_product(make_product({phi, phi}, 2, 3), params(2, 3, 2, 2));
    CHECK(sq3.divisors == std::vector<SparsePoly>{P("1", F, 2), phi, phi * phi});
}

TEST_CASE("factoring products of irreducibles") {
    FieldPtr F = Field::prime(7);
    Factorization a = factor_product_irreducibles(make_product(polys({"x1+1", "x2+1", "x1+x2+1"}, F, 2), 1, 3),
                                                  params(2, 3, 1, 3));
    CHECK(fz(a) == fz(oracle::brute_factor(P("(x1+1)*(x2+1)*(x1+x2+1)", F, 2))));
    SparsePoly phi = P("x1*x2+x1+3", F, 2);
    Factorization b = factor_product_irreducibles(make_product({phi, phi, phi}, 1, 3), params(2, 3, 1, 3));
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0] == std::make_pair(phi, 3));
    Factorization c = factor_product_irreducibles(make_product(polys({"5*x1+5"}, F, 1), 1, 2), params(1, 2, 1));
    CHECK(c.unit == 5);
    REQUIRE(c.factors.size() == 1);
    CHECK(c.factors[0] == std::make_pair(P("x1+1", F, 1), 1));
}

TEST_CASE("multiquadratic factors") {
    FieldPtr F = Field::prime(11);
    auto a = multiquadratic_factors(make_product(polys({"x1*x2+1", "x1*x2+1", "x1+x2"}, F, 2), 1, 2), params(2, 2, 1, 3));
    CHECK(a == std::vector<std::pair<SparsePoly, int>>{{P("x1+x2", F, 2), 1}, {P("x1*x2+1", F, 2), 2}});
    // x1^3 + x2 + 1 is irreducible of degree 3 in x1
    CHECK(multiquadratic_factors(make_product(polys({"x1^3+x2+1"}, F, 2), 3, 3), params(2, 3, 3)).empty());
    auto c = multiquadratic_factors(make_explicit(P("x1+1", F, 1)), params(1, 2, 1));
    CHECK(c == std::vector<std::pair<SparsePoly, int>>{{P("x1+1", F, 1), 1}});
}

TEST_CASE("factoring sparse polynomials") {
    FieldPtr F = Field::prime(7);
    SparsePoly f = P("(x1+1)^2*(x2+3)", F, 2);
    Factorization a = factor_nsd(f, params(2, 6, 2));
    CHECK(expand(a, F, 2) == f);
    CHECK(fz(a) == fz(oracle::brute_factor(f)));
    SparsePoly g = P("x1*x2+x1+1", F, 2);
    Factorization b = factor_nsd(g, params(2, 3, 1));
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0] == std::make_pair(g, 1));
    // small instance of prod(x_i^n - 1) + n prod(x_i - 1)
    SparsePoly h = P("(x1^2-1)*(x2^2-1) + 2*(x1-1)*(x2-1)", F, 2);
    Factorization c = factor_nsd(h, params(2, static_cast<int>(h.sparsity()), 2));
    CHECK(fz(c) == fz(oracle::brute_factor(h)));
    CHECK(c.factors.size() == 3);
}

TEST_CASE("factoring general products") {
    FieldPtr F = Field::prime(11);
    // x2^2+x2+1 divides the 2-sparse x2^3-1 and is irreducible over F_11
    BoxPtr b = make_product(polys({"x1+1", "x2^2+x2+1"}, F, 2), 3, 2);
    Factorization a = factor_product_general(b, params(2, 2, 3, 2));
    CHECK(fz(a) == fz(oracle::brute_factor(P("(x1+1)*(x2^2+x2+1)", F, 2))));
    SparsePoly e = P("(x1+2)*(x1*x2+5)", F, 2);
    CHECK(fz(factor_product_general(make_explicit(e, 2, 4), params(2, 4, 2))) == fz(factor_nsd(e, params(2, 4, 2))));
    SparsePoly phi = P("x1*x2+x2+4", F, 2);
    Factorization c = factor_product_general(make_product({phi, phi}, 1, 3), params(2, 3, 1, 2));
    REQUIRE(c.factors.size() == 1);
    CHECK(c.factors[0] == std::make_pair(phi, 2));
}

TEST_CASE("divisor count audit") {
    FieldPtr F = Field::prime(5);
    Audit a = divisor_count_audit(P("(x1^2-1)*(x2^2-1)", F, 2), params(2, 4, 2));
    CHECK(a.count == 4);
    CHECK(a.bound == 4);
    CHECK(a.ok);
    CHECK(a.vertices == 4);
    CHECK(a.vertices_ok);
    Audit b = divisor_count_audit(P("x1*x2+x1+1", F, 2), params(2, 3, 1));
    CHECK(b.count == 1);
    CHECK(b.ok);
    Audit c = divisor_count_audit(P("x1+1", F, 1), params(1, 2, 1));
    CHECK(c.count == 1);
    CHECK(c.bound >= 1);
    CHECK(c.ok);
}

TEST_CASE("escalated runs give the verified answer") {
    inst::Rng r(43);
    FieldPtr F = Field::prime(11);
    for (int t = 0; t < 8; ++t) {
        auto fs = inst::random_irreducibles(r, F, 2, 2, 1, 2);
        AlgoParams plain = params(2, 2, 1, 2), esc = plain;
        esc.escalate = true;
        RunInfo ri;
        BoxPtr b = make_product(fs, 1, 2);
        Factorization want = factor_product_irreducibles(b, plain);
        Factorization got = factor_product_irreducibles(b, esc, &ri);
        CHECK(fz(got) == fz(want));
        CHECK(ri.rung >= 2);
        SparsePoly f = product(fs, F, 2);
        CHECK(fz(factor_nsd(f, esc)) == fz(oracle::brute_factor(f)));
    }
}

TEST_CASE("lying declarations raise typed errors") {
    FieldPtr F = Field::prime(11);
    // declared 1-sparse but every factor needs more terms
    SparsePoly f = P("(x1+x2+1)*(x1+2*x2+3)", F, 2);
    bool raised = false;
    try {
        factor_nsd(f, params(2, 1, 1));
    } catch (const Error&) {
        raised = true;
    }
    CHECK(raised);
    FieldPtr F4 = Field::extension(2, 2);
    BoxPtr derived = restrict_zero(make_explicit(P("x1*x2+x1+1", F4, 2)), 1);
    CHECK(kind_of([&] { divisors_of_product(derived, params(2, 2, 1)); }) == ErrorKind::CharModeViolation);
}
