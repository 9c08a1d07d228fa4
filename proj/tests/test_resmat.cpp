#include "sparsefactor/instances.hpp"
#include "sparsefactor/resmat.hpp"
#include "sparsefactor/smallfac.hpp"
#include "support.hpp"

using namespace sf;
using sft::kind_of;
using sft::P;

namespace {

// f viewed in n+k variables with the lambdas appended.
SparsePoly widen(const SparsePoly& f, int k) {
    std::vector<int> perm(f.nvars());
    for (int i = 0; i < f.nvars(); ++i) perm[i] = i;
    return remap_vars(f, perm, f.nvars() + k);
}

}  // namespace

TEST_CASE("Sylvester matrix of two linear polynomials") {
    FieldPtr F = Field::prime(11);
    for (Fe a = 0; a < 11; a += 3)
        for (Fe b = 0; b < 11; b += 4) {
            SparsePoly f = P("x1 - " + std::to_string(a), F, 1), g = P("x1 - " + std::to_string(b), F, 1);
            PolyMatrix M = sylvester(f, g, 0);
            CHECK(M.rows() == 2);
            // lc(f)^deg g * g(a)
            CHECK(determinant(M) == SparsePoly::constant(F, 1, g.eval({a})));
        }
    SparsePoly f = P("x1^2 + 3*x1 + 1", F, 1);
    CHECK(determinant(sylvester(f, f, 0)).is_zero());
    CHECK(kernel_dim(sylvester(P("x1^2-1", Field::prime(5), 1), P("x1-1", Field::prime(5), 1), 0)) == 1);
    CHECK(kind_of([&] { sylvester(P("x2", F, 2), P("x2+1", F, 2), 0); }) == ErrorKind::BothConstant);
}

TEST_CASE("resultants") {
    FieldPtr F = Field::prime(11);
    CHECK(resultant(P("x1^2 + x2*x1 + x3", F, 3), P("x1", F, 3), 0) == P("x3", F, 3));
    SparsePoly f = P("x1*x2 + x2^2 + 1", F, 2);
    CHECK(resultant(f, f, 0).is_zero());
    SparsePoly r = resultant(P("x1 - x2", F, 3), P("x1 - x3", F, 3), 0);
    SparsePoly want = P("x2 - x3", F, 3);
    CHECK((r == want || r == -want));
}

TEST_CASE("discriminants") {
    FieldPtr F = Field::prime(11);
    CHECK(discriminant(P("x1^2 + x2*x1 + x3", F, 3), 0) == P("4*x3 - x2^2", F, 3));
    FieldPtr F5 = Field::prime(5);
    CHECK(discriminant(P("(x1-1)^2", F5, 1), 0).is_zero());
    CHECK_FALSE(discriminant(P("x1^2+1", F5, 1), 0).is_zero());
    CHECK(kind_of([&] { discriminant(P("x2+1", F, 2), 0); }) == ErrorKind::ConstantInVar);
}

TEST_CASE("Delta_k") {
    FieldPtr F = Field::prime(7);
    // res(f, l f') = l^deg f * res(f, f')
    SparsePoly f = P("x1^2 + 3*x1 + 5", F, 1);
    DeltaK d1 = delta_k(f, 0, 1);
    CHECK(d1.char_ok);
    CHECK(d1.value == widen(discriminant(f, 0), 1) * pow(SparsePoly::var(F, 2, 1), 2));
    CHECK(delta_k(P("(x1-1)^3", F, 1), 0, 2).value.is_zero());
    CHECK_FALSE(delta_k(P("(x1-1)^2*(x1-2)", F, 1), 0, 2).value.is_zero());
    CHECK_FALSE(delta_k(P("x1^8 + 1", F, 1), 0, 1).char_ok);
    CHECK(kind_of([&] { delta_k(P("x2", F, 2), 0, 1); }) == ErrorKind::ConstantInVar);
}

TEST_CASE("kernel dimension") {
    FieldPtr F = Field::prime(5);
    PolyMatrix I(3, 3, F, 1);
    for (int i = 0; i < 3; ++i) I.at(i, i) = SparsePoly::constant(F, 1, 1);
    CHECK(kernel_dim(I) == 0);
    CHECK(rank(I) == 3);
    CHECK(kernel_dim(PolyMatrix(2, 3, F, 1)) == 3);
}

TEST_CASE("kernel dimension equals the degree of the gcd") {
    inst::Rng r(77);
    FieldPtr F = Field::prime(11);
    for (int t = 0; t < 60; ++t) {
        SparsePoly h = inst::random_sparse(r, F, 2, 2, 1 + static_cast<int>(r.below(2)));
        SparsePoly a = inst::random_sparse(r, F, 2, 3, 2);
        SparsePoly b = inst::random_sparse(r, F, 2, 3, 2);
        SparsePoly f = a * h, g = b * h;
        if (f.individual_degree(0) == 0 && g.individual_degree(0) == 0) continue;
        SparsePoly gg = gcd_multi(f, g, 0);
        CHECK(kernel_dim(sylvester(f, g, 0)) == gg.individual_degree(0));
        CHECK(gg.individual_degree(0) >= h.individual_degree(0));
    }
}

TEST_CASE("resultant and Delta_k size bounds") {
    inst::Rng r(78);
    FieldPtr F = Field::prime(11);
    const std::size_t fact[] = {1, 1, 2, 6, 24};
    for (int t = 0; t < 40; ++t) {
        const int d = 1 + static_cast<int>(r.below(2));
        const std::size_t s = 2 + r.below(2);
        SparsePoly f = inst::random_sparse(r, F, 3, static_cast<int>(s), d);
        SparsePoly g = inst::random_sparse(r, F, 3, static_cast<int>(s), d);
        if (f.individual_degree(0) == 0 && g.individual_degree(0) == 0) continue;
        SparsePoly res = resultant(f, g, 0);
        std::size_t bound = fact[2 * d];
        for (int i = 0; i < 2 * d; ++i) bound *= s;
        CHECK(res.sparsity() <= bound);
        CHECK(res.max_individual_degree() <= 2 * d * d);
        if (f.individual_degree(0) == 0) continue;
        for (int k = 1; k <= d; ++k) {
            SparsePoly dk = delta_k(f, 0, k).value;
            std::size_t kb = fact[2 * d];
            for (int i = 0; i < 2 * d; ++i) kb *= k * s;
            CHECK(dk.sparsity() <= kb);
            CHECK(dk.max_individual_degree() <= 2 * d * d);
        }
    }
}

TEST_CASE("discriminant vanishes exactly on non-squarefree input") {
    inst::Rng r(79);
    FieldPtr F = Field::prime(13);
    for (int t = 0; t < 60; ++t) {
        SparsePoly a = inst::random_sparse(r, F, 2, 2, 1);
        SparsePoly f = r.below(2) ? a * a * inst::random_sparse(r, F, 2, 2, 1) : a * inst::random_sparse(r, F, 2, 3, 2);
        if (f.individual_degree(0) == 0) continue;
        bool squarefree = true;
        for (auto& [h, e] : squarefree_decomp(f, 0)) squarefree = squarefree && (e == 1 || h.individual_degree(0) == 0);
        CHECK(discriminant(f, 0).is_zero() == !squarefree);
    }
}

TEST_CASE("Delta_k detects multiplicity above k") {
    inst::Rng r(80);
    FieldPtr F = Field::prime(13);
    for (int t = 0; t < 200; ++t) {
        // univariate with planted multiplicities, degree below the characteristic
        SparsePoly f = SparsePoly::constant(F, 1, 1);
        const int parts = 1 + static_cast<int>(r.below(3));
        for (int j = 0; j < parts; ++j) {
            SparsePoly lin = P("x1 - " + std::to_string(r.below(13)), F, 1);
            f = f * pow(lin, 1 + static_cast<unsigned>(r.below(3)));
        }
        if (f.individual_degree(0) >= 13) continue;
        int maxmult = 0;
        for (auto& [h, e] : multi_factor(f).factors) maxmult = std::max(maxmult, e);
        const int k = 1 + static_cast<int>(r.below(3));
        CAPTURE(f.to_string());
        CHECK(delta_k(f, 0, k).value.is_zero() == (maxmult >= k + 1));
    }
}
