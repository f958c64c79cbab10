#include <doctest.h>

#include "evokit/powers.hpp"
#include "evokit/rng.hpp"
#include "helpers.hpp"

using namespace evotest;

namespace {

Subspace span_q(std::initializer_list<std::initializer_list<long>> vecs, int ambient) {
    std::vector<Vector> vs;
    for (const auto& v : vecs) vs.push_back(vec_q(v));
    return Subspace::span(vs, ambient, Field::rational);
}

}  // namespace

TEST_CASE("principal chain of the 3-dimensional chain algebra") {
    const auto alg = alg_q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    const auto rep = principal_powers(alg);
    REQUIRE(rep.index.has_value());
    CHECK(*rep.index == 5);  // 2^(3-1)+1
    CHECK_FALSE(rep.stabilized_at.has_value());
    CHECK(rep.dims == std::vector<int>{3, 2, 1, 1, 0});
    CHECK(check_plateau_laws(rep).empty());
}

TEST_CASE("zero algebra has index 2 in any dimension") {
    for (int n : {1, 2, 5}) {
        const auto rep = principal_powers(EvolutionAlgebra::zero(n, Field::rational));
        CHECK(rep.index == 2);
    }
}

TEST_CASE("chain ending in e_r stabilizes at the plateau") {
    // e1^2 = e2, e_i^2 = e2 for i = 2,3,4
    const auto alg = alg_q({{0, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}});
    const auto rep = principal_powers(alg);
    CHECK_FALSE(rep.index.has_value());
    REQUIRE(rep.stabilized_at.has_value());
    CHECK(*rep.stabilized_at == 2);
    CHECK(equals(rep.subspaces.back(), span_q({{0, 1, 0, 0}}, 4)));
    CHECK(check_plateau_laws(rep).empty());
}

TEST_CASE("right and derived chains") {
    const auto chain3 = alg_q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    const auto r = right_powers(chain3);
    REQUIRE(r.index.has_value());
    CHECK(*r.index == 4);
    CHECK(equals(r.at_exponent(2), span_q({{0, 1, 0}, {0, 0, 1}}, 3)));
    CHECK(equals(r.at_exponent(3), span_q({{0, 0, 1}}, 3)));

    const auto z = EvolutionAlgebra::zero(3, Field::rational);
    CHECK(right_powers(z).index == 2);
    CHECK(derived_powers(z).index == 2);

    const auto idem = alg_q({{1}});
    const auto ri = right_powers(idem);
    CHECK_FALSE(ri.index.has_value());
    CHECK(*ri.stabilized_at == 1);
    const auto di = derived_powers(idem);
    CHECK_FALSE(di.index.has_value());
    CHECK(equals(di.subspaces.back(), Subspace::full(1, Field::rational)));
}

TEST_CASE("nil check") {
    const auto upper = alg_q({{0, 2, -1}, {0, 0, 3}, {0, 0, 0}});
    const auto v = upper.strictly_upper_triangular() ? nil_check(upper) : nil_check(upper);
    CHECK(v.is_nil);
    REQUIRE(v.triangularizing_permutation.has_value());

    const auto loop = alg_q({{1, 0}, {0, 0}});
    const auto vl = nil_check(loop);
    CHECK_FALSE(vl.is_nil);
    CHECK(vl.witness_cycle == std::vector<int>{0});

    const auto swap2 = alg_q({{0, 1}, {1, 0}});
    const auto vs = nil_check(swap2);
    CHECK_FALSE(vs.is_nil);
    REQUIRE(vs.witness_cycle.has_value());
    // cycle product along the reported cycle is nonzero
    const auto& cyc = *vs.witness_cycle;
    Scalar prod = Scalar::one(Field::rational);
    for (size_t i = 0; i < cyc.size(); ++i)
        prod = prod * swap2.at(cyc[i], cyc[(i + 1) % cyc.size()]);
    CHECK_FALSE(prod.is_zero());
}

TEST_CASE("triangularizing permutation renders the matrix strictly upper") {
    SplitMix rng(23);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng.bounded(4));
        const auto upper = random_upper(n, static_cast<unsigned>(9000 + t));
        // scramble the basis: a nil algebra in a shuffled presentation
        std::vector<int> sigma(n);
        for (int i = 0; i < n; ++i) sigma[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(sigma[i], sigma[static_cast<int>(rng.bounded(static_cast<uint64_t>(i + 1)))]);
        std::vector<Scalar> m;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.push_back(upper.at(sigma[i], sigma[j]));
        const EvolutionAlgebra alg(n, std::move(m));

        const auto v = nil_check(alg);
        REQUIRE(v.is_nil);
        const auto& p = *v.triangularizing_permutation;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) CHECK(alg.at(p[i], p[j]).is_zero());
    }
}

TEST_CASE("index wrappers and the paper examples") {
    // b=1, f=1, c=0 four_dim matrix has index 4
    const auto bf = alg_q({{0, 1, 1, 0}, {0, 0, 0, -1}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    CHECK(nilpotent_index(bf) == 4);

    const auto four = alg_q({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    CHECK(nilpotent_index(four) == 9);

    CHECK(nilpotent_index(alg_q({{0}})) == 2);
    CHECK_FALSE(nilpotent_index(alg_q({{1}})).has_value());
    CHECK(is_nilpotent(four));
    CHECK(right_nilpotency_index(four).has_value());
    CHECK(solvability_index(four).has_value());
}

TEST_CASE("the block-constancy law fails exactly on the index-4 family") {
    // The index-4 matrix is the counterexample: E^3 = <e4> but E^4 = 0,
    // although 3 and 4 sit in the same dyadic block.
    const auto bf = alg_q({{0, 1, 1, 0}, {0, 0, 0, -1}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    const auto rep = principal_powers(bf);
    REQUIRE(rep.index == 4);
    CHECK(rep.dims == std::vector<int>{4, 2, 1, 0});
    const auto bad = check_plateau_laws(rep);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "E^3 != E^4");
}

TEST_CASE("max index criterion") {
    const auto five = alg_q({{0, 1, 0, 0, 0},
                             {0, 0, 1, 0, 0},
                             {0, 0, 0, 1, 0},
                             {0, 0, 0, 0, 1},
                             {0, 0, 0, 0, 0}});
    CHECK(max_index_criterion(five));
    CHECK(nilpotent_index(five) == 17);

    const auto gap = alg_q({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    CHECK_FALSE(max_index_criterion(gap));
    CHECK(*nilpotent_index(gap) <= 5);

    CHECK(max_index_criterion(alg_q({{0, 1}, {0, 0}})));
    CHECK(nilpotent_index(alg_q({{0, 1}, {0, 0}})) == 3);

    // permuted presentation: swap basis vectors of the 2-chain
    const auto permuted = alg_q({{0, 0}, {1, 0}});
    CHECK(max_index_criterion(permuted));

    CHECK_THROWS_AS(max_index_criterion(alg_q({{1}})), std::invalid_argument);
}

TEST_CASE("equivalence triangle on random exact algebras") {
    for (int t = 0; t < 150; ++t) {
        const int n = 2 + (t % 4);
        const auto alg = random_dense(n, static_cast<unsigned>(500 + t));
        const bool nil = nil_check(alg).is_nil;
        const bool right_term = right_powers(alg).index.has_value();
        const bool principal_term = principal_powers(alg).index.has_value();
        CHECK(nil == right_term);
        CHECK(right_term == principal_term);
    }
}

TEST_CASE("chain inclusions hold on random algebras") {
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + (t % 4);
        const auto alg = random_dense(n, static_cast<unsigned>(700 + t));
        const auto p = principal_powers(alg);
        const auto r = right_powers(alg);
        const auto d = derived_powers(alg);
        CHECK(check_chain_inclusions(p, r, d).empty());
    }
}

TEST_CASE("nil algebras have nil elements: x^(n+1) = 0") {
    SplitMix rng(31);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng.bounded(4));
        const auto alg = random_upper(n, static_cast<unsigned>(800 + t));
        REQUIRE(nil_check(alg).is_nil);
        for (int s = 0; s < 5; ++s) {
            Vector x;
            for (int i = 0; i < n; ++i) x.push_back(R(static_cast<long>(rng.bounded(5)) - 2));
            CHECK(vector_is_zero(plus_power(alg, x, n + 1)));
        }
    }
}

TEST_CASE("report invariants") {
    SplitMix rng(37);
    for (int t = 0; t < 80; ++t) {
        const int n = 2 + static_cast<int>(rng.bounded(4));
        const auto alg = random_dense(n, static_cast<unsigned>(1200 + t));
        const auto rep = principal_powers(alg);
        CHECK(rep.index.has_value() != rep.stabilized_at.has_value());
        if (rep.index) {
            CHECK(rep.at_exponent(*rep.index).is_zero());
            CHECK_FALSE(rep.at_exponent(*rep.index - 1).is_zero());
        } else {
            CHECK_FALSE(rep.subspaces.back().is_zero());
            // chain is constant from the stabilization exponent on
            for (int k = *rep.stabilized_at; k <= rep.max_exponent(); ++k)
                CHECK(equals(rep.at_exponent(k), rep.subspaces.back()));
        }
        // dims never increase
        for (size_t i = 1; i < rep.dims.size(); ++i) CHECK(rep.dims[i] <= rep.dims[i - 1]);
    }
}
