#include <doctest.h>

#include "evokit/oracle.hpp"
#include "evokit/powers.hpp"
#include "helpers.hpp"

using namespace evotest;

TEST_CASE("naive principal powers on known chains") {
    const auto chain3 = alg_q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    CHECK(oracle::naive_principal_power(chain3, 5).empty());
    CHECK(oracle::naive_principal_power(chain3, 1).size() == 3);

    const auto chain2 = alg_q({{0, 1}, {0, 0}});
    const auto sq = oracle::naive_principal_power(chain2, 2);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0] == vec_q({0, 1}));

    CHECK_THROWS_AS(oracle::naive_principal_power(chain2, 6), std::invalid_argument);
}

TEST_CASE("naive nil check on known matrices") {
    CHECK(oracle::naive_nil_check(alg_q({{0, 1, 2, 3}, {0, 0, 4, 5}, {0, 0, 0, 6}, {0, 0, 0, 0}})));
    CHECK_FALSE(oracle::naive_nil_check(alg_q({{0, 1}, {1, 0}})));
    CHECK_FALSE(oracle::naive_nil_check(alg_q({{0, 0}, {0, 2}})));
}

TEST_CASE("naive chains agree with the fast chain subspace by subspace") {
    for (int t = 0; t < 25; ++t) {
        const int n = 2 + (t % 3);
        const auto alg = random_dense(n, static_cast<unsigned>(2000 + t));
        const auto rep = principal_powers(alg);
        const int kmax = std::min(rep.max_exponent(), (1 << n) + 1);
        for (int k = 1; k <= kmax; ++k) {
            const auto naive = oracle::naive_principal_power(alg, k);
            const auto& fast = rep.at_exponent(k);
            REQUIRE(static_cast<int>(naive.size()) == fast.dim());
            for (size_t r = 0; r < naive.size(); ++r) CHECK(naive[r] == fast.basis()[r]);
        }
    }
}

TEST_CASE("naive nil check agrees with the digraph test") {
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + (t % 5);
        const auto alg = random_dense(n, static_cast<unsigned>(3000 + t));
        CHECK(oracle::naive_nil_check(alg) == nil_check(alg).is_nil);
    }
}

TEST_CASE("nil element sampling") {
    CHECK(oracle::naive_nil_element_check(alg_q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), 100));
    CHECK_FALSE(oracle::naive_nil_element_check(alg_q({{1}}), 10));
    CHECK(oracle::naive_nil_element_check(EvolutionAlgebra::zero(3, Field::rational), 50));
}
