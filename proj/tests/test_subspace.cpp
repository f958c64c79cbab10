#include <doctest.h>

#include "evokit/rng.hpp"
#include "helpers.hpp"

using namespace evotest;

namespace {

Subspace span_q(std::initializer_list<std::initializer_list<long>> vecs, int ambient) {
    std::vector<Vector> vs;
    for (const auto& v : vecs) vs.push_back(vec_q(v));
    return Subspace::span(vs, ambient, Field::rational);
}

Subspace random_subspace(int n, int count, SplitMix& rng) {
    std::vector<Vector> vs;
    for (int i = 0; i < count; ++i) {
        Vector v;
        for (int j = 0; j < n; ++j) v.push_back(R(static_cast<long>(rng.bounded(5)) - 2));
        vs.push_back(std::move(v));
    }
    return Subspace::span(vs, n, Field::rational);
}

}  // namespace

TEST_CASE("span reduces to a canonical echelon basis") {
    const Subspace s = span_q({{1, 0, 0}, {1, 1, 0}}, 3);
    CHECK(s.dim() == 2);
    CHECK(s.basis()[0] == vec_q({1, 0, 0}));
    CHECK(s.basis()[1] == vec_q({0, 1, 0}));

    CHECK(Subspace::span({}, 3, Field::rational).is_zero());

    const Subspace t = span_q({{1, 2, 0}, {2, 4, 0}, {0, 0, 5}}, 3);
    CHECK(t.dim() == 2);
    CHECK(t.basis()[0] == vec_q({1, 2, 0}));
    CHECK(t.basis()[1] == vec_q({0, 0, 1}));
}

TEST_CASE("sum") {
    const Subspace e1 = span_q({{1, 0}}, 2), e2 = span_q({{0, 1}}, 2);
    CHECK(equals(sum(e1, e2), Subspace::full(2, Field::rational)));
    CHECK(equals(sum(e1, Subspace::zero(2, Field::rational)), e1));
    const Subspace u = span_q({{1, 1}}, 2), v = span_q({{1, -1}}, 2);
    CHECK(equals(sum(u, v), Subspace::full(2, Field::rational)));
    CHECK_THROWS_AS(sum(e1, Subspace::zero(3, Field::rational)), dimension_mismatch);
}

TEST_CASE("product spans pairwise basis products") {
    const auto a2 = alg_q({{0, 1}, {0, 0}});
    const Subspace full2 = Subspace::full(2, Field::rational);
    CHECK(equals(product(a2, full2, full2), span_q({{0, 1}}, 2)));
    CHECK(product(a2, full2, Subspace::zero(2, Field::rational)).is_zero());

    const auto chain3 = alg_q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    const Subspace full3 = Subspace::full(3, Field::rational);
    CHECK(equals(product(chain3, full3, span_q({{1, 0, 0}}, 3)), span_q({{0, 1, 0}}, 3)));
}

TEST_CASE("equality and containment") {
    CHECK(equals(span_q({{1, 1, 0}}, 3), span_q({{2, 2, 0}}, 3)));
    const Subspace full3 = Subspace::full(3, Field::rational);
    CHECK(contains(full3, span_q({{1, -4, 2}}, 3)));
    CHECK_FALSE(contains(span_q({{1, 0, 0}}, 3), span_q({{1, 1, 0}}, 3)));
    CHECK(contains(span_q({{1, 0, 0}}, 3), Subspace::zero(3, Field::rational)));
}

TEST_CASE("span is idempotent on canonical bases") {
    SplitMix rng(7);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + static_cast<int>(rng.bounded(4));
        const Subspace u = random_subspace(n, 1 + static_cast<int>(rng.bounded(4)), rng);
        CHECK(equals(Subspace::span(u.basis(), n, Field::rational), u));
    }
}

TEST_CASE("monotonicity and commutativity of product") {
    SplitMix rng(11);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + static_cast<int>(rng.bounded(3));
        const auto alg = random_dense(n, static_cast<unsigned>(300 + t));
        const Subspace u = random_subspace(n, 2, rng);
        const Subspace v = random_subspace(n, 2, rng);
        CHECK(contains(sum(u, v), u));
        CHECK(equals(product(alg, u, v), product(alg, v, u)));
        const Subspace bigger = sum(u, random_subspace(n, 1, rng));
        CHECK(contains(product(alg, bigger, v), product(alg, u, v)));
    }
}

TEST_CASE("dimension formula against an independent intersection") {
    SplitMix rng(13);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + static_cast<int>(rng.bounded(4));
        const Subspace u = random_subspace(n, 1 + static_cast<int>(rng.bounded(3)), rng);
        const Subspace v = random_subspace(n, 1 + static_cast<int>(rng.bounded(3)), rng);
        CHECK(sum(u, v).dim() + intersection(u, v).dim() == u.dim() + v.dim());
    }
}

TEST_CASE("float backend reduction flushes noise") {
    std::vector<Vector> vs;
    vs.push_back({Scalar::complex(1.0), Scalar::complex(2.0)});
    vs.push_back({Scalar::complex(2.0), Scalar::complex(4.0 + 1e-13)});
    const Subspace s = Subspace::span(vs, 2, Field::complex_float, 1e-9);
    CHECK(s.dim() == 1);

    std::vector<Vector> ws;
    ws.push_back({Scalar::complex(0.5), Scalar::complex(1.0)});
    const Subspace w = Subspace::span(ws, 2, Field::complex_float, 1e-9);
    CHECK(equals(s, w, 1e-9));
}
