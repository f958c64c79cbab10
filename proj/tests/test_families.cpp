#include <doctest.h>

#include "evokit/powers.hpp"
#include "helpers.hpp"

using namespace evotest;
using namespace evokit::families;

namespace {

FamilySpec spec_of(FamilyKind kind, int n, std::map<std::string, std::string> params = {}) {
    FamilySpec s;
    s.kind = kind;
    s.dim = n;
    s.params = std::move(params);
    return s;
}

}  // namespace

TEST_CASE("chain_to_er tables") {
    const auto alg = generate(spec_of(FamilyKind::chain_to_er, 4, {{"r", "2"}}));
    CHECK(alg == alg_q({{0, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}}));
    CHECK_FALSE(expected_index(spec_of(FamilyKind::chain_to_er, 4, {{"r", "2"}})).has_value());
    CHECK_THROWS_AS(generate(spec_of(FamilyKind::chain_to_er, 4, {{"r", "4"}})),
                    std::invalid_argument);

    // plateau limit is exactly <e_r>
    const auto rep = principal_powers(alg);
    REQUIRE(rep.stabilized_at.has_value());
    CHECK(equals(rep.subspaces.back(),
                 Subspace::span({vec_q({0, 1, 0, 0})}, 4, Field::rational)));
}

TEST_CASE("four_dim_index4 matrix and index") {
    const auto alg =
        generate(spec_of(FamilyKind::four_dim_index4, 4, {{"b", "2"}, {"c", "0"}, {"f", "3"}}));
    CHECK(alg == alg_q({{0, 1, 2, 0}, {0, 0, 0, -12}, {0, 0, 0, 3}, {0, 0, 0, 0}}));
    CHECK(nilpotent_index(alg) == 4);
    CHECK_THROWS_AS(generate(spec_of(FamilyKind::four_dim_index4, 4, {{"b", "0"}})),
                    std::invalid_argument);
}

TEST_CASE("max_index generator and overrides") {
    const auto plain = generate(spec_of(FamilyKind::max_index, 3));
    CHECK(plain == alg_q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
    CHECK(expected_index(spec_of(FamilyKind::max_index, 6)) == 33);

    const auto withfree =
        generate(spec_of(FamilyKind::max_index, 4, {{"a_1_3", "5"}, {"a_1_4", "7"}, {"a_2_4", "2"}}));
    CHECK(withfree.at(0, 2) == R(5));
    CHECK(nilpotent_index(withfree) == 9);

    CHECK_THROWS_AS(generate(spec_of(FamilyKind::max_index, 4, {{"a_2_1", "5"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate(spec_of(FamilyKind::max_index, 4, {{"a_1_2", "0"}})),
                    std::invalid_argument);
}

TEST_CASE("gap family") {
    const auto spec = spec_of(FamilyKind::gap_family, 5, {{"s", "2"}, {"gaps", "2"}});
    const auto alg = generate(spec);
    // row/column 2 vanish except possibly a_{2,5}
    for (int j = 0; j < 4; ++j) CHECK(alg.at(1, j).is_zero());
    for (int i = 0; i < 5; ++i) CHECK(alg.at(i, 1).is_zero());
    CHECK(expected_index(spec) == 9);
    CHECK(nilpotent_index(alg) == 9);

    // nonzero column-n entry on the gap row keeps the index
    auto spec2 = spec;
    spec2.params["a_2_5"] = "3";
    CHECK(nilpotent_index(generate(spec2)) == 9);

    CHECK_THROWS_AS(generate(spec_of(FamilyKind::gap_family, 5, {{"s", "2"}, {"gaps", "4"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        generate(spec_of(FamilyKind::gap_family, 5, {{"s", "3"}, {"gaps", "3,2"}})),
        std::invalid_argument);
}

TEST_CASE("block family") {
    const auto spec = spec_of(FamilyKind::block_family, 6, {{"s", "3"}, {"gaps", "2,4"}});
    const auto alg = generate(spec);
    CHECK(expected_index(spec) == 9);  // 2^max(2,3)+1
    CHECK(nilpotent_index(alg) == 9);
    // gap chain: a_{2,4} = 1 and a_{4,6} = 1
    CHECK(alg.at(1, 3) == R(1));
    CHECK(alg.at(3, 5) == R(1));

    const auto s2 = spec_of(FamilyKind::block_family, 6, {{"s", "2"}, {"gaps", "3"}});
    CHECK(expected_index(s2) == 17);  // 2^max(1,4)+1
    CHECK(nilpotent_index(generate(s2)) == 17);

    CHECK_THROWS_AS(generate(spec_of(FamilyKind::block_family, 6, {{"s", "5"}, {"gaps", "1,2,3,4"}})),
                    std::invalid_argument);
}

TEST_CASE("mid gap family") {
    CHECK(nilpotent_index(mid_gap_family(5, 3, 1)) == 9);
    CHECK(nilpotent_index(mid_gap_family(4, 2, 2)) == 5);
    CHECK_THROWS_AS(mid_gap_family(5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(mid_gap_family(5, 4, 1), std::invalid_argument);

    // chain subspace at k=1 for n=5, m=3: E^3 = <e_2^2, e_5> = <e3, e5>
    const auto rep = principal_powers(mid_gap_family(5, 3, 1));
    CHECK(equals(rep.at_exponent(3),
                 Subspace::span({vec_q({0, 0, 1, 0, 0}), vec_q({0, 0, 0, 0, 1})}, 5,
                                Field::rational)));
    CHECK(expected_index(spec_of(FamilyKind::mid_gap, 5, {{"m", "3"}})) == 9);
}

TEST_CASE("canonical form generators") {
    CHECK(generate(spec_of(FamilyKind::canonical_4, 4, {{"variant", "2"}})).at(0, 2) == R(1));
    const auto c5 = generate(
        spec_of(FamilyKind::canonical_5, 5, {{"variant", "4"}, {"b", "7"}, {"d", "-2"}}));
    CHECK(c5.at(0, 3) == R(7));
    CHECK(c5.at(1, 3) == R(-2));
    CHECK(nilpotent_index(c5) == 17);
    CHECK_THROWS_AS(generate(spec_of(FamilyKind::canonical_4, 4, {{"variant", "3"}})),
                    std::invalid_argument);
}

TEST_CASE("random generators are seed deterministic") {
    const auto a = random_upper(4, 9);
    const auto b = random_upper(4, 9);
    const auto c = random_upper(4, 10);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.strictly_upper_triangular());
    CHECK_FALSE(random_dense(4, 3).strictly_upper_triangular());
}

TEST_CASE("expected index matches the computed index across sampled fills") {
    const char* fills[] = {"1", "-1", "2", "1/2"};
    for (const char* fill : fills) {
        for (int n = 3; n <= 6; ++n) {
            for (int s = 2; s < n; ++s) {
                // one gap layout per (n, s): gaps at 1..s-1
                std::string gaps;
                for (int g = 1; g < s; ++g) gaps += (g > 1 ? "," : "") + std::to_string(g);
                const auto spec = spec_of(FamilyKind::gap_family, n,
                                          {{"s", std::to_string(s)}, {"gaps", gaps}, {"fill", fill}});
                CHECK(nilpotent_index(generate(spec)) == expected_index(spec));
            }
        }
    }
}

TEST_CASE("family names round-trip") {
    for (const auto& name : family_kind_names())
        CHECK(family_kind_name(family_kind_from_name(name)) == name);
    CHECK_THROWS_AS(family_kind_from_name("septenary"), std::invalid_argument);
}
