#include <set>

#include "sparsefactor/gen.hpp"
#include "sparsefactor/instances.hpp"
#include "sparsefactor/smallfac.hpp"
#include "support.hpp"

using namespace sf;
using sft::kind_of;
using sft::P;

namespace {

std::uint64_t factorial(int k) {
    std::uint64_t r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TEST_CASE("generator sizes") {
    Generator a = Generator::build(4, 2, Field::prime(101), 2);
    CHECK(a.q() == 5);
    CHECK(a.t_size() == 20);
    Generator b = Generator::build(1, 1, Field::prime(7), 1);
    CHECK(b.q() == 2);
    CHECK(b.t_size() == 2);
    Generator c = Generator::build(25, 3, Field::prime(1009), 2);
    CHECK(c.q() == 29);
    CHECK(c.t_size() == 174);
    // A, B, C, T are consecutive and disjoint
    std::set<Fe> seen;
    for (std::uint64_t k = 1; k <= 25; ++k) seen.insert(c.alpha(k));
    for (int j = 1; j <= 3; ++j) {
        seen.insert(c.beta(j));
        seen.insert(c.gamma(j));
    }
    for (std::uint64_t t = 1; t <= c.t_size(); ++t) seen.insert(c.delta(t));
    CHECK(seen.size() == 25 + 6 + 174);
    CHECK(*seen.rbegin() < 1009);
    CHECK(kind_of([] { Generator::build(25, 3, Field::prime(101), 2); }) == ErrorKind::FieldTooSmall);
}

TEST_CASE("generator evaluation") {
    FieldPtr F = Field::prime(101);
    Generator g = Generator::build(4, 3, F, 2);
    Generator r = g.revive(1);
    CHECK(r.arity() == 5);
    CHECK(r.eval({3, 9, 2, 5, 7})[1] == 7);
    CHECK(kind_of([&] { r.eval({3, 9, 2, 5, 7, 1}); }) == ErrorKind::ArityMismatch);
    CHECK(g.eval({0, 0, 0, 0, 0, g.gamma(1)})[0] == 0);

    // y at a node and z at beta_j: coordinate t is (1 + [t=j](w-1)) x^(i^t mod q)
    const Fe x = 6, w = 10;
    for (std::uint64_t i = 1; i <= 4; ++i)
        for (int j = 1; j <= 3; ++j) {
            auto out = g.eval({x, g.alpha(i), g.beta(j), w, 0, g.gamma(1)});
            for (int t = 1; t <= 3; ++t) {
                const std::uint64_t e = ipow(i, t) % g.q();
                const Fe base = F->pow(x, e);
                CHECK(out[t - 1] == (t == j ? F->mul(w, base) : base));
            }
        }
}

TEST_CASE("revival agrees with the full generator off the revived coordinate") {
    FieldPtr F = Field::prime(101);
    Generator g = Generator::build(5, 3, F, 1);
    inst::Rng rng(4);
    for (int i = 0; i < 3; ++i) {
        Generator r = g.revive(i);
        for (int t = 0; t < 20; ++t) {
            std::vector<Fe> in{rng.below(101), rng.below(101), rng.below(101), rng.below(101), rng.below(101)};
            auto a = r.eval(in);
            in.push_back(g.gamma(i + 1));
            auto b = g.eval(in);
            for (int c = 0; c < 3; ++c)
                if (c != i) CHECK(a[c] == b[c]);
        }
    }
}

TEST_CASE("parameter table") {
    MInputs a;
    a.n = 2;
    a.s = 3;
    a.d = 1;
    CHECK(m_for(Task::SPARSE_INTERP, a) == 36);
    CHECK(m_for(Task::DIVISOR_ENUM, a) == 144);
    MInputs b;
    b.n = 2;
    b.s = 2;
    b.d = 1;
    // (n * 8d^2 * (4d)! * s^(8d))^2
    const std::uint64_t root = 2 * 8 * factorial(4) * ipow(2, 8);
    CHECK(m_for(Task::CHAR0_COPRIME, b) == root * root);
    CHECK(m_for_string(Task::CHAR0_COPRIME, b) == std::to_string(root * root));
    CHECK(kind_of([] {
              MInputs c;
              c.n = 3;
              c.s = 4;
              c.d = 2;
              m_for(Task::CHAR0_COPRIME, c);
          }) == ErrorKind::Overflow);
    CHECK(task_from_name("MULTIQUAD") == Task::MULTIQUAD);
    CHECK_FALSE(task_from_name("nope"));
}

TEST_CASE("dense composition") {
    FieldPtr F = Field::prime(101);
    Generator g = Generator::build(3, 2, F, 1);
    SparsePoly c = compose_dense(*make_explicit(SparsePoly::constant(F, 2, 3)), g);
    CHECK(c == SparsePoly::constant(F, 6, 3));
    Generator r = g.revive(1);
    SparsePoly u = compose_dense(*make_explicit(P("x2", F, 2)), r);
    CHECK(u == SparsePoly::var(F, 5, 4));

    BoxPtr b = make_explicit(P("x1+x2", F, 2));
    SparsePoly img = compose_dense(*b, g);
    inst::Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        std::vector<Fe> in(6);
        for (auto& v : in) v = rng.below(101);
        CHECK(img.eval(in) == b->query(g.eval(in)));
    }
}

TEST_CASE("images of factors stay nonzero and keep their degree in u") {
    FieldPtr F = Field::prime(1009);
    inst::Rng rng(21);
    const int n = 2, s = 2, d = 1;
    MInputs mi;
    mi.n = n;
    mi.s = s;
    mi.d = d;
    const std::uint64_t m = m_for(Task::SPARSE_INTERP, mi);
    Generator g = Generator::build(m, n, F, d);
    for (int t = 0; t < 20; ++t) {
        SparsePoly prod = product({inst::random_sparse(rng, F, n, s, d), inst::random_sparse(rng, F, n, s, d)}, F, n);
        for (auto& [h, e] : multi_factor(prod).factors) {
            if (h.max_individual_degree() > d || h.sparsity() > static_cast<size_t>(s)) continue;
            CHECK_FALSE(compose_dense(*make_explicit(h), g).is_zero());
            for (int i = 0; i < n; ++i) {
                SparsePoly img = compose_dense(*make_explicit(h), g.revive(i));
                CHECK(img.individual_degree(4) == h.individual_degree(i));
            }
        }
    }
}

TEST_CASE("sparse reconstruction") {
    FieldPtr F = Field::prime(101);
    CHECK(sparse_reconstruct(*make_explicit(SparsePoly(F, 2), 1, 1), 1, 1).is_zero());
    SparsePoly p = P("x1^2", F, 2);
    CHECK(sparse_reconstruct(*make_explicit(p, 2, 1), 1, 2) == p);
    SparsePoly f = P("x1*x2 + 3*x1 + 1", F, 2);
    CHECK(sparse_reconstruct(*make_explicit(f, 1, 3), 3, 1) == f);

    inst::Rng rng(31);
    for (int t = 0; t < 15; ++t) {
        SparsePoly h = inst::random_sparse(rng, F, 2, 3, 1);
        CHECK(sparse_reconstruct(*make_explicit(h, 1, 3), 3, 1) == h);
    }
    for (int t = 0; t < 5; ++t) {
        SparsePoly h = inst::random_sparse(rng, F, 3, 3, 2);
        CHECK(sparse_reconstruct(*make_explicit(h, 2, 3), 3, 2) == h);
    }
}

TEST_CASE("certified weights") {
    CHECK(weights_injective({1, 3}, 2));
    CHECK_FALSE(weights_injective({1, 2}, 2));
    for (int D : {1, 2, 4}) {
        std::vector<int> coords{0, 1, 2};
        CertifiedM c = m_cert(coords, D);
        CHECK(c.q == next_prime_above(c.m));
        CHECK(weights_injective(ks_weights(c.k, c.q, coords), D));
        CHECK(certified_shift(c.m, coords, D) == c.k);
        if (c.m > 1) CHECK_FALSE(certified_shift(c.m - 1, coords, D));
    }
}

TEST_CASE("faces decode what they compose") {
    FieldPtr F = Field::prime(11);
    FaceEngine eng(F, 3, 2, 2, 2);
    const Face& all = eng.face(FaceSpec{});
    CHECK(all.certified);
    inst::Rng rng(2);
    for (int t = 0; t < 30; ++t) {
        SparsePoly h = inst::random_sparse(rng, F, 3, 4, 2);
        DPoly img = eng.compose(h, all);
        CHECK(img == eng.compose(make_explicit(h, 2, 4), all));
        auto back = eng.decode(img, all);
        REQUIRE(back);
        CHECK(*back == h);
    }
    FaceSpec sp;
    sp.u = 0;
    sp.zero = {2};
    const Face& fu = eng.face(sp);
    SparsePoly h = P("x1^2*x2 + x3 + 1", F, 3);
    DPoly img = eng.compose(h, fu);
    CHECK(img.deg(kFaceU) == 2);
    CHECK(eng.face_count() == 2);
}

TEST_CASE("grid interpolation rejects a degree violation") {
    FieldPtr F = Field::prime(101);
    auto sq = [&](const std::vector<Fe>& v) { return F->mul(v[0], v[0]); };
    DPoly ok = interpolate_grid(F, {2}, sq);
    CHECK(ok.deg(0) == 2);
    CHECK(kind_of([&] { interpolate_grid(F, {1}, sq); }) == ErrorKind::DegreeBoundExceeded);
}
