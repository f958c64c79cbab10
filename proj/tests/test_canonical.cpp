#include <doctest.h>

#include <cmath>

#include "evokit/canonical.hpp"
#include "evokit/rng.hpp"
#include "helpers.hpp"

using namespace evotest;

namespace {

bool entry_is(const CanonicalForm& f, int i, int j, double re, double im = 0.0,
              double eps = 1e-9) {
    const auto z = f.at(i, j).to_complex();
    return std::abs(z - std::complex<double>(re, im)) <= eps;
}

EvolutionAlgebra rescale_basis(const EvolutionAlgebra& alg, const std::vector<double>& d) {
    // e'_i = d_i e_i gives a'_ij = d_i^2 a_ij / d_j
    const int n = alg.dim();
    std::vector<Scalar> m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.push_back(Scalar::complex(d[i] * d[i] * alg.at(i, j).to_complex().real() / d[j]));
    return EvolutionAlgebra(n, std::move(m));
}

}  // namespace

TEST_CASE("canonicalization of a 4-dimensional maximal algebra") {
    const auto alg = alg_q({{0, 1, 5, 7}, {0, 0, 1, 2}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    const auto res = canonicalize_with_transform(alg);
    const auto& f = res.form;
    // lands on the listed form with a_13 = 1 (alpha = sqrt 5)
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool one = (j == i + 1) || (i == 0 && j == 2);
            CHECK(entry_is(f, i, j, one ? 1.0 : 0.0));
        }
    REQUIRE(f.normalized_entry.has_value());
    CHECK(*f.normalized_entry == std::pair<int, int>{0, 2});
    CHECK(verify_isomorphism(alg, f.algebra(), res.transform));
}

TEST_CASE("zero residuals give the rigid form") {
    const auto alg = alg_q({{0, 3, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 5}, {0, 0, 0, 0}});
    const auto f = canonicalize(alg);
    CHECK_FALSE(f.normalized_entry.has_value());
    CHECK(f.residual_entries.empty());
    const auto patterns = enumerate_canonical_families(4);
    CHECK(matches_pattern(f, patterns[0]));
    CHECK_FALSE(matches_pattern(f, patterns[1]));
}

TEST_CASE("2-dimensional canonicalization is a single scaling") {
    const auto f = canonicalize(alg_q({{0, 3}, {0, 0}}));
    CHECK(entry_is(f, 0, 1, 1.0));
    CHECK(entry_is(f, 0, 0, 0.0));
    CHECK(entry_is(f, 1, 0, 0.0));
    CHECK(entry_is(f, 1, 1, 0.0));
}

TEST_CASE("canonicalize rejects non-maximal input") {
    CHECK_THROWS_AS(canonicalize(alg_q({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize(alg_q({{1, 0}, {0, 1}})), std::invalid_argument);
}

TEST_CASE("canonicalize is idempotent and scale invariant") {
    SplitMix rng(99);
    for (int t = 0; t < 20; ++t) {
        const int n = 3 + static_cast<int>(rng.bounded(3));  // 3..5
        families::FamilySpec spec;
        spec.kind = families::FamilyKind::max_index;
        spec.dim = n;
        for (int i = 1; i + 2 <= n; ++i)
            for (int j = i + 2; j <= n; ++j)
                spec.params["a_" + std::to_string(i) + "_" + std::to_string(j)] =
                    std::to_string(static_cast<long>(rng.bounded(7)) - 3);
        const auto alg = families::generate(spec);
        const auto f1 = canonicalize(alg);

        const auto f2 = canonicalize(f1.algebra());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(f1.at(i, j).approx_equal(f2.at(i, j), 1e-7));

        std::vector<double> d(n);
        for (int i = 0; i < n; ++i) d[i] = 0.25 + unit_double(rng.next()) * 3.0;
        const auto f3 = canonicalize(rescale_basis(alg, d));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(f1.at(i, j).approx_equal(f3.at(i, j), 1e-7));
    }
}

TEST_CASE("canonicalization preserves the nilpotent index") {
    const auto alg = alg_q({{0, 2, -1, 3}, {0, 0, 1, -2}, {0, 0, 0, 4}, {0, 0, 0, 0}});
    REQUIRE(nilpotent_index(alg) == 9);
    const auto f = canonicalize(alg);
    CHECK(principal_powers(f.algebra()).index == 9);
}

TEST_CASE("isomorphism decisions inside the maximal class") {
    const auto a = alg_q({{0, 1, 5, 7}, {0, 0, 1, 2}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    CHECK(isomorphic_max_index(a, a));

    std::vector<double> d{2.0, 0.5, 3.0, 1.25};
    CHECK(isomorphic_max_index(a, rescale_basis(a, d)));

    families::FamilySpec c1{families::FamilyKind::canonical_4, 4, {{"variant", "1"}}};
    families::FamilySpec c2{families::FamilyKind::canonical_4, 4, {{"variant", "2"}}};
    CHECK_FALSE(isomorphic_max_index(families::generate(c1), families::generate(c2)));

    CHECK_THROWS_AS(isomorphic_max_index(a, alg_q({{0, 1}, {0, 0}})), dimension_mismatch);
}

TEST_CASE("verify_isomorphism") {
    const auto a = alg_q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    std::vector<Scalar> id, singular;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            id.push_back(Scalar::complex(i == j ? 1.0 : 0.0));
            singular.push_back(Scalar::complex(1.0));
        }
    CHECK(verify_isomorphism(a, a, id));
    CHECK_FALSE(verify_isomorphism(a, a, singular));

    // an honest non-isomorphism: identity map between different algebras
    const auto b = alg_q({{0, 2, 0}, {0, 0, 1}, {0, 0, 0}});
    CHECK_FALSE(verify_isomorphism(a, b, id));
}

TEST_CASE("classification lists") {
    CHECK(enumerate_canonical_families(4).size() == 2);
    const auto fams5 = enumerate_canonical_families(5);
    REQUIRE(fams5.size() == 4);
    CHECK(fams5[0].parameters.empty());
    CHECK(fams5[1].parameters.empty());
    CHECK(fams5[2].parameters == std::vector<std::string>{"d"});
    CHECK(fams5[3].parameters == std::vector<std::string>{"b", "d"});
    CHECK_THROWS_AS(enumerate_canonical_families(3), std::invalid_argument);
}

TEST_CASE("random 4-dimensional maximal algebras land on a listed form") {
    const auto patterns = enumerate_canonical_families(4);
    SplitMix rng(123);
    for (int t = 0; t < 30; ++t) {
        families::FamilySpec spec;
        spec.kind = families::FamilyKind::max_index;
        spec.dim = 4;
        spec.params["a_1_3"] = std::to_string(static_cast<long>(rng.bounded(9)) - 4);
        spec.params["a_1_4"] = std::to_string(static_cast<long>(rng.bounded(9)) - 4);
        spec.params["a_2_4"] = std::to_string(static_cast<long>(rng.bounded(9)) - 4);
        const auto f = canonicalize(families::generate(spec));
        CHECK((matches_pattern(f, patterns[0]) || matches_pattern(f, patterns[1])));
    }
}
