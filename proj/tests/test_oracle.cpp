#include <algorithm>

#include <json.hpp>

#include "sparsefactor/instances.hpp"
#include "sparsefactor/oracle.hpp"
#include "support.hpp"

using namespace sf;
using sft::kind_of;
using sft::P;

namespace {

// Number of ways to write f as an unordered product of members of prims (up to units).
int count_products(const SparsePoly& f, const std::vector<SparsePoly>& prims, size_t from) {
    if (f.is_constant()) return 1;
    int total = 0;
    for (size_t i = from; i < prims.size(); ++i)
        if (auto q = exact_div(f, prims[i])) total += count_products(*q, prims, i);
    return total;
}

}  // namespace

TEST_CASE("brute-force factorization") {
    FieldPtr F = Field::prime(5);
    Factorization a = oracle::brute_factor(P("x1^2-1", F, 1));
    CHECK(oracle::describe(a) == "1 * (x1 + 1)^1 * (x1 + 4)^1");
    Factorization b = oracle::brute_factor(P("x1*x2+1", F, 2));
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0].second == 1);
    Factorization c = oracle::brute_factor(P("(x1+x2)^2", F, 2));
    REQUIRE(c.factors.size() == 1);
    CHECK(c.factors[0] == std::make_pair(P("x1+x2", F, 2), 2));
    CHECK(kind_of([&] { oracle::brute_factor(P("x1^4+1", F, 1)); }) == ErrorKind::LimitExceeded);
    CHECK(kind_of([&] { oracle::brute_factor(P("x1+1", Field::prime(13), 1)); }) == ErrorKind::LimitExceeded);
}

TEST_CASE("brute-force divisors") {
    FieldPtr F = Field::prime(5);
    DivisorSet a = oracle::brute_divisors(P("(x1+4)*(x2+4)", F, 2));
    CHECK(a.divisors.size() == 4);
    SparsePoly phi = P("x1*x2+2", F, 2);
    DivisorSet b = oracle::brute_divisors(pow(phi, 3));
    CHECK(b.divisors == std::vector<SparsePoly>{P("1", F, 2), phi, pow(phi, 2), pow(phi, 3)});
    DivisorSet c = oracle::brute_divisors(P("x1^2", F, 1));
    CHECK(c.monomial == Mono{2});
    CHECK(c.divisors == std::vector<SparsePoly>{P("1", F, 1)});
    DivisorSet d = oracle::brute_divisors(pow(phi, 3), 3);
    CHECK(d.divisors.size() == 3);
}

TEST_CASE("primitive divisors") {
    FieldPtr F = Field::prime(5);
    SparsePoly phi = P("x1*x2+2", F, 2), psi = P("x1+x2+1", F, 2);
    CHECK(oracle::primitive_divisor_check(phi, {phi, psi}, 4));
    CHECK_FALSE(oracle::primitive_divisor_check(phi * psi, {phi, psi}, 4));
    SparsePoly g = P("x1+3", F, 2);
    std::vector<SparsePoly> sample{pow(g, 2), pow(g, 3)};
    CHECK(oracle::primitive_divisor_check(g, sample, 4));
    CHECK_FALSE(oracle::primitive_divisor_check(pow(g, 2), sample, 4));
}

TEST_CASE("class members factor uniquely into primitive divisors") {
    inst::Rng r(50);
    FieldPtr F = Field::prime(3);
    for (int t = 0; t < 6; ++t) {
        std::vector<SparsePoly> sample;
        for (int j = 0; j < 3; ++j) sample.push_back(inst::random_sparse(r, F, 2, 2, 1) * inst::random_sparse(r, F, 2, 2, 1));
        // candidates: every divisor of a member, monomial part included
        std::vector<SparsePoly> prims;
        for (auto& f : sample) {
            DivisorSet ds = oracle::brute_divisors(f);
            for (auto& h : ds.divisors)
                for (std::uint32_t a = 0; a <= ds.monomial[0]; ++a)
                    for (std::uint32_t b = 0; b <= ds.monomial[1]; ++b) {
                        SparsePoly c = mul_monomial(h, Mono{a, b});
                        if (!c.is_constant() && oracle::primitive_divisor_check(c, sample, 4) &&
                            std::find(prims.begin(), prims.end(), c) == prims.end())
                            prims.push_back(c);
                    }
        }
        for (auto& f : sample) {
            SparsePoly core = canonical(f);
            CAPTURE(core.to_string());
            CHECK(count_products(core, prims, 0) == 1);
        }
    }
}

TEST_CASE("brute force agrees with the Hensel path on the tiny grid") {
    inst::Rng r(51);
    int checked = 0;
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
        FieldPtr F = Field::prime(p);
        for (int t = 0; t < 60; ++t) {
            const int n = 1 + static_cast<int>(r.below(3));
            SparsePoly f = inst::random_sparse(r, F, n, 1 + static_cast<int>(r.below(3)), 1 + static_cast<int>(r.below(2)));
            if (r.below(2)) f = f * inst::random_sparse(r, F, n, 2, 1);
            if (f.max_individual_degree() > 3) continue;
            ++checked;
            CHECK(oracle::describe(oracle::brute_factor(f)) == oracle::describe(multi_factor(f)));
        }
    }
    CHECK(checked > 150);
}

TEST_CASE("reports serialize to JSON") {
    oracle::OracleReport rep;
    rep.instance = "x1 + 1";
    rep.oracle_answer = rep.algorithm_answer = "1 * (x1 + 1)^1";
    rep.agree = true;
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["agree"] == true);
    CHECK(j["instance"] == "x1 + 1");
}
