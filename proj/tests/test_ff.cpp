#include "sparsefactor/ff.hpp"
#include "support.hpp"

using namespace sf;

using sft::kind_of;

TEST_CASE("prime field arithmetic") {
    FieldPtr F = Field::prime(5);
    CHECK(F->add(2, 4) == 1);
    CHECK(F->inv(2) == 3);
    CHECK(F->sub(1, 3) == 3);
    CHECK(F->mul(4, 4) == 1);
    CHECK(F->div(1, 2) == 3);
    CHECK(F->pow(2, 4) == 1);
    CHECK(F->from_int(-1) == 4);
    CHECK(F->modulus().empty());
    CHECK(kind_of([&] { F->inv(0); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("F_4 reduces t*t to t+1") {
    FieldPtr F = Field::extension(2, 2);
    CHECK(F->modulus() == std::vector<std::uint64_t>{1, 1, 1});
    const Fe t = 2, t1 = 3;
    CHECK(F->mul(t, t) == t1);
    CHECK(F->add(t, 1) == t1);
}

TEST_CASE("F_9 modulus is the first irreducible quadratic") {
    // Monic quadratics over F_3 in ascending (c1, c0); the first without a root.
    std::vector<std::uint64_t> want;
    for (std::uint64_t c1 = 0; c1 < 3 && want.empty(); ++c1)
        for (std::uint64_t c0 = 0; c0 < 3 && want.empty(); ++c0) {
            bool root = false;
            for (std::uint64_t x = 0; x < 3; ++x) root = root || (x * x + c1 * x + c0) % 3 == 0;
            if (!root) want = {c0, c1, 1};
        }
    FieldPtr F = Field::extension(3, 2);
    CHECK(F->modulus() == want);
    CHECK(F->size() == 9);
    CHECK(Field::extension(3, 2)->modulus() == F->modulus());
}

TEST_CASE("field construction errors") {
    CHECK(kind_of([] { Field::prime(9); }) == ErrorKind::NotPrime);
    CHECK(kind_of([] { Field::extension(4, 2); }) == ErrorKind::NotPrime);
    CHECK(kind_of([] { Field::extension(2, 40); }) == ErrorKind::SizeOverflow);
}

TEST_CASE("inverses and Fermat in every small field") {
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {7, 1}, {2, 5}, {3, 3}, {5, 2}, {13, 1}}) {
        FieldPtr F = Field::extension(p, k);
        CAPTURE(F->describe());
        for (Fe a = 1; a < F->size(); ++a) {
            CHECK(F->mul(a, F->inv(a)) == 1);
            CHECK(F->pow(a, F->size() - 1) == 1);
            CHECK(F->pow(F->pth_root(a), p) == a);
        }
        for (Fe a = 0; a < F->size(); ++a)
            for (Fe b = 0; b < F->size(); b += 3) {
                CHECK(F->sub(F->add(a, b), b) == a);
                CHECK(F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b)));
            }
    }
}

TEST_CASE("digits round trip") {
    FieldPtr F = Field::extension(3, 3);
    for (Fe a = 0; a < F->size(); ++a) CHECK(F->from_digits(F->digits(a)) == a);
}

TEST_CASE("embedding is a ring map with a left inverse") {
    FieldPtr F = Field::extension(2, 2), E = Field::extension(2, 4);
    Embedding emb = Embedding::make(F, E);
    for (Fe a = 0; a < F->size(); ++a) {
        CHECK(emb.pull(emb.map(a)) == a);
        for (Fe b = 0; b < F->size(); ++b) {
            CHECK(emb.map(F->mul(a, b)) == E->mul(emb.map(a), emb.map(b)));
            CHECK(emb.map(F->add(a, b)) == E->add(emb.map(a), emb.map(b)));
        }
    }
    int image = 0;
    for (Fe c = 0; c < E->size(); ++c) image += emb.pull(c).has_value();
    CHECK(image == 4);
}

TEST_CASE("working extension grows until large enough") {
    FieldPtr F = Field::prime(5);
    auto W = working_extension(F, 100);
    CHECK(W.E->size() >= 100);
    CHECK(W.E->p() == 5);
    CHECK(working_extension(F, 5).E->size() == 5);
}

TEST_CASE("irreducibility over F_p") {
    CHECK(is_irreducible_mod_p(2, {1, 1, 0, 0, 1}));
    CHECK_FALSE(is_irreducible_mod_p(5, {1, 0, 1}));
    CHECK(is_irreducible_mod_p(3, {1, 0, 1}));
}
