#include "sparsefactor/instances.hpp"
#include "sparsefactor/poly.hpp"
#include "support.hpp"

using namespace sf;
using sft::kind_of;
using sft::P;

TEST_CASE("ring operations") {
    FieldPtr F = Field::prime(5);
    CHECK(P("x1+1", F, 1) * P("x1+4", F, 1) == P("x1^2+4", F, 1));
    SparsePoly f = P("3*x1^2*x2 + x2 + 2", F, 2);
    CHECK(f + SparsePoly(F, 2) == f);
    CHECK(P("x1*x2 + x1", F, 2) * P("x2", F, 2) == P("x1*x2^2 + x1*x2", F, 2));
    CHECK((f - f).is_zero());
    CHECK(kind_of([&] { (void)(f + P("x1", Field::prime(7), 2)); }) == ErrorKind::FieldMismatch);
}

TEST_CASE("exact division") {
    FieldPtr F = Field::prime(5);
    auto q = exact_div(P("x1^2+4", F, 1), P("x1+1", F, 1));
    REQUIRE(q);
    CHECK(*q == P("x1+4", F, 1));
    CHECK_FALSE(exact_div(P("x1^2+1", F, 1), P("x1+1", F, 1)));
    SparsePoly f = P("x1*x2+3*x2^2+1", F, 2);
    CHECK(*exact_div(f, SparsePoly::constant(F, 2, 1)) == f);
    CHECK(kind_of([&] { exact_div(f, SparsePoly(F, 2)); }) == ErrorKind::DivisionByZeroPoly);
}

TEST_CASE("evaluation") {
    FieldPtr F = Field::prime(5);
    CHECK(P("x1*x2+1", F, 2).eval({2, 3}) == 2);
    SparsePoly g = P("x1^2*x2+4*x2+3", F, 2);
    CHECK(g.eval({0, 0}) == g.constant_term());
    CHECK(P("(x1+4)*(x2+4)", F, 2).eval({1, 1}) == 0);
    CHECK(kind_of([&] { g.eval({1}); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("univariate view") {
    FieldPtr F = Field::prime(5);
    auto v = uni_view(parse_poly("x1 + x2*x0", F, 3, 0), 0);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == parse_poly("x1", F, 3, 0));
    CHECK(v[1] == parse_poly("x2", F, 3, 0));
    auto c = uni_view(SparsePoly::constant(F, 1, 3), 0);
    REQUIRE(c.size() == 1);
    CHECK(c[0].constant_term() == 3);
    auto sq = uni_view(parse_poly("x0^2", F, 1, 0), 0);
    REQUIRE(sq.size() == 3);
    CHECK(sq[0].is_zero());
    CHECK(sq[1].is_zero());
    CHECK(sq[2].is_one());
}

TEST_CASE("largest monomial divisor") {
    FieldPtr F = Field::prime(5);
    CHECK(largest_monomial_divisor(P("x1^2*x2 + x1*x2^2", F, 2)) == Mono{1, 1});
    CHECK(largest_monomial_divisor(P("x1+1", F, 1)) == Mono{0});
    CHECK(largest_monomial_divisor(P("x1^3", F, 1)) == Mono{3});
    CHECK(kind_of([&] { largest_monomial_divisor(SparsePoly(F, 1)); }) == ErrorKind::ZeroPolynomial);
}

TEST_CASE("Newton polytope vertices") {
    FieldPtr F = Field::prime(5);
    CHECK(newton_vertices(P("x1*x2 + x1 + x2 + 1", F, 2)) == 4);
    CHECK(newton_vertices(P("x1^2 + x1 + 1", F, 1)) == 2);
    CHECK(newton_vertices(P("(x1^2-1)*(x2^2-1)", F, 2)) == 4);
    CHECK(newton_vertices(P("x1*x2 + x1^2*x2^2 + 1 + x1^2 + x2^2", F, 2)) == 4);
    CHECK(newton_vertices(P("x1 + x2 + x3 + x1*x2*x3", F, 3)) == 4);
    CHECK(kind_of([&] { newton_vertices(SparsePoly(F, 1)); }) == ErrorKind::ZeroPolynomial);
}

TEST_CASE("content and primitive part") {
    FieldPtr F = Field::prime(5);
    auto [c1, p1] = content_primitive(parse_poly("x1*x0 + x1", F, 2, 0), 0);
    CHECK(c1 == parse_poly("x1", F, 2, 0));
    CHECK(p1 == parse_poly("x0+1", F, 2, 0));
    auto [c2, p2] = content_primitive(parse_poly("x0^2+1", F, 1, 0), 0);
    CHECK(c2.is_one());
    CHECK(p2 == parse_poly("x0^2+1", F, 1, 0));
    auto [c3, p3] = content_primitive(parse_poly("(x1+1)*x0 + x1^2+2*x1+1", F, 2, 0), 0);
    CHECK(c3 == parse_poly("x1+1", F, 2, 0));
    CHECK(p3 == parse_poly("x0+x1+1", F, 2, 0));
}

TEST_CASE("parser") {
    FieldPtr F = Field::prime(7);
    SparsePoly f = P("x1^2*x2 + 3", F, 2);
    CHECK(f.sparsity() == 2);
    CHECK(f.individual_degree(0) == 2);
    CHECK(P("x1 - x1", F, 1).is_zero());
    CHECK(P("2(x1+1)^2", F, 1) == P("2*x1^2+4*x1+2", F, 1));
    CHECK(P("-x1", F, 1) == P("6*x1", F, 1));
    try {
        parse_poly("x1^", F, 1);
        FAIL("expected a syntax error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(e.column() == 4);
    }
    CHECK(kind_of([&] { parse_poly("x3", F, 2); }) == ErrorKind::UnknownVariable);
    CHECK(kind_of([&] { parse_poly("9*x1", F, 1); }) == ErrorKind::CoeffOutOfRange);
    CHECK(max_var_index("x1*x7 + x3") == 6);
    CHECK(max_var_index("5") == -1);
}

TEST_CASE("to_string parses back") {
    inst::Rng r(17);
    for (std::uint64_t p : {2, 3, 11}) {
        FieldPtr F = Field::prime(p);
        for (int i = 0; i < 50; ++i) {
            SparsePoly f = inst::random_sparse(r, F, 3, 4, 3);
            CHECK(parse_poly(f.to_string(), F, 3) == f);
        }
    }
}

TEST_CASE("ring axioms and division on random polynomials") {
    inst::Rng r(5);
    FieldPtr F = Field::prime(11);
    for (int i = 0; i < 100; ++i) {
        SparsePoly a = inst::random_sparse(r, F, 3, 3, 2);
        SparsePoly b = inst::random_sparse(r, F, 3, 3, 2);
        SparsePoly c = inst::random_sparse(r, F, 3, 2, 1);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) - b == a);
        auto q = exact_div(a * b, b);
        REQUIRE(q);
        CHECK(*q == a);
        std::vector<Fe> pt{F->element(r.below(11)), F->element(r.below(11)), F->element(r.below(11))};
        CHECK((a * b).eval(pt) == F->mul(a.eval(pt), b.eval(pt)));
        for (int v = 0; v < 3; ++v) CHECK(from_uni_view(uni_view(a, v), v, F, 3) == a);
        Mono M = largest_monomial_divisor(a);
        CHECK(largest_monomial_divisor(divide_monomial(a, M)) == Mono(3, 0));
        CHECK(newton_vertices(a) <= a.sparsity());
        Fe u = 0;
        SparsePoly ca = canonical(a, &u);
        CHECK(is_canonical(ca));
        CHECK(scale(ca, u) == a);
    }
}
