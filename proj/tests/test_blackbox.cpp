#include "sparsefactor/blackbox.hpp"
#include "sparsefactor/instances.hpp"
#include "support.hpp"

using namespace sf;
using sft::kind_of;
using sft::P;

TEST_CASE("queries") {
    FieldPtr F = Field::prime(5);
    BoxPtr e = make_explicit(P("x1+1", F, 1));
    CHECK(e->query({4}) == 0);
    CHECK(e->query_count() == 1);
    BoxPtr p = make_product({P("x1+1", F, 1), P("x1+1", F, 1)}, 1, 2);
    CHECK(p->query({1}) == 4);
    CHECK(p->deg_bound(0) == 2);
    CHECK(kind_of([&] { e->query({1, 2}); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("repeated queries are pure") {
    FieldPtr F = Field::prime(11);
    BoxPtr b = make_product({P("x1*x2+3", F, 2), P("x1+x2+1", F, 2)}, 1, 2);
    BoxPtr g = strip_monomial(b).g;
    const Fe v = b->query({2, 7});
    const Fe w = g->query({0, 7});
    const std::uint64_t c0 = b->query_count();
    for (int i = 0; i < 1000; ++i) {
        CHECK(b->query({2, 7}) == v);
        CHECK(g->query({0, 7}) == w);
    }
    const std::uint64_t per = (b->query_count() - c0) / 1000;
    CHECK(b->query_count() - c0 == per * 1000);
}

TEST_CASE("normalized access") {
    FieldPtr F = Field::prime(11);
    // x0 is the first slot; the normalized box reads y there.
    BoxPtr b = make_explicit(parse_poly("x1 + x2*x0", F, 3, 0));
    BoxPtr nb = normalize_access(b, 0);
    for (Fe y = 0; y < 11; ++y)
        for (Fe a2 = 0; a2 < 11; a2 += 2) CHECK(nb->query({y, 3, a2}) == F->add(1, F->mul(a2, y)));

    BoxPtr c = normalize_access(make_explicit(parse_poly("x1*x2 + 1", F, 3, 0)), 0);
    for (Fe y = 0; y < 11; y += 3) CHECK(c->query({y, 4, 5}) == 1);

    // (x1+x0)(x2+x0) = x1x2 + (x1+x2)x0 + x0^2: f~ = 1 + (x1+x2)y + x1x2 y^2
    BoxPtr d = normalize_access(make_explicit(parse_poly("(x1+x0)*(x2+x0)", F, 3, 0)), 0);
    SparsePoly want = parse_poly("1 + (x1+x2)*x0 + x1*x2*x0^2", F, 3, 0);
    inst::Rng r(3);
    for (int i = 0; i < 50; ++i) {
        std::vector<Fe> pt{r.below(11), r.below(11), r.below(11)};
        CHECK(d->query(pt) == want.eval(pt));
    }
}

TEST_CASE("normalized boxes are reverse monic") {
    FieldPtr F = Field::prime(13);
    inst::Rng r(8);
    for (int i = 0; i < 20; ++i) {
        SparsePoly f = inst::random_sparse(r, F, 3, 3, 2);
        if (f.constant_term() == 0) continue;
        f = f + parse_poly("x0", F, 3, 0);
        Stripped st = strip_var_power(make_explicit(f), 0);
        BoxPtr nb = normalize_access(st.g, 0);
        for (Fe a = 0; a < 13; a += 4) CHECK(nb->query({0, a, F->sub(a, 1)}) == 1);
    }
}

TEST_CASE("stripping a variable power") {
    FieldPtr F = Field::prime(101);
    Stripped a = strip_var_power(make_explicit(parse_poly("x0^2*(x1+1)", F, 2, 0)), 0);
    CHECK(a.k == 2);
    CHECK(a.g->query({5, 6}) == 7);
    BoxPtr one = make_explicit(P("x1+1", F, 1));
    Stripped b = strip_var_power(one, 0);
    CHECK(b.k == 0);
    CHECK(b.g->query({9}) == 10);
    Stripped c = strip_var_power(make_explicit(parse_poly("x0*(x0+x1)", F, 2, 0)), 0);
    CHECK(c.k == 1);
    inst::Rng r(1);
    for (int i = 0; i < 20; ++i) {
        Fe u = r.below(101), v = r.below(101);
        CHECK(c.g->query({u, v}) == F->add(u, v));
    }
}

TEST_CASE("stripping the monomial part") {
    FieldPtr F = Field::prime(101);
    StrippedMono a = strip_monomial(make_explicit(P("x1*x2*(x1+x2)", F, 2)));
    CHECK(a.M == Mono{1, 1});
    CHECK(a.g->query({0, 1}) == 1);
    StrippedMono b = strip_monomial(make_explicit(P("x1+x2+1", F, 2)));
    CHECK(b.M == Mono{0, 0});
    CHECK(b.g->query({3, 4}) == 8);
    StrippedMono c = strip_monomial(make_product({P("x1", F, 2), P("x1", F, 2), P("x1*x2+1", F, 2)}, 1, 2));
    CHECK(c.M == Mono{2, 0});
    CHECK(c.g->query({0, 0}) == 1);
    CHECK(c.g->query({2, 3}) == 7);
}

TEST_CASE("stripped boxes agree with the symbolic quotient") {
    FieldPtr F = Field::prime(101);
    inst::Rng r(12);
    for (int i = 0; i < 30; ++i) {
        SparsePoly h = inst::random_sparse(r, F, 3, 3, 2);
        Mono M{static_cast<std::uint32_t>(r.below(3)), static_cast<std::uint32_t>(r.below(2)), 0};
        SparsePoly f = mul_monomial(h, M);
        StrippedMono st = strip_monomial(make_explicit(f, 4, 3));
        Mono want = largest_monomial_divisor(f);
        CHECK(st.M == want);
        SparsePoly g = divide_monomial(f, want);
        for (int t = 0; t < 10; ++t) {
            std::vector<Fe> pt{r.below(3), r.below(101), r.below(2)};
            CHECK(st.g->query(pt) == g.eval(pt));
        }
    }
}
