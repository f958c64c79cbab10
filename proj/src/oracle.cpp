#include "evokit/oracle.hpp"

#include <algorithm>

#include "evokit/rng.hpp"

namespace evokit::oracle {

namespace {

// Incremental reduced-echelon accumulator, independent of the subspace
// module: rows are kept pivot-normalized and mutually reduced, ordered by
// pivot column.
struct EchelonRows {
    int n;
    Field field;
    std::vector<Vector> rows;
    std::vector<int> pivots;

    void insert(Vector v) {
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!v[pivots[r]].is_zero()) {
                const Scalar f = v[pivots[r]];
                for (int j = 0; j < n; ++j) v[j] = v[j] - f * rows[r][j];
                v[pivots[r]] = Scalar::zero(field);
            }
        }
        int p = 0;
        while (p < n && v[p].is_zero()) ++p;
        if (p == n) return;
        const Scalar inv = Scalar::one(field) / v[p];
        for (int j = 0; j < n; ++j) v[j] = v[j] * inv;
        v[p] = Scalar::one(field);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r][p].is_zero()) {
                const Scalar f = rows[r][p];
                for (int j = 0; j < n; ++j) rows[r][j] = rows[r][j] - f * v[j];
                rows[r][p] = Scalar::zero(field);
            }
        }
        const auto where = std::upper_bound(pivots.begin(), pivots.end(), p) - pivots.begin();
        pivots.insert(pivots.begin() + where, p);
        rows.insert(rows.begin() + where, std::move(v));
    }
};

Vector naive_multiply(const EvolutionAlgebra& alg, const Vector& x, const Vector& y) {
    const int n = alg.dim();
    Vector out(n, Scalar::zero(alg.field()));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) out[k] = out[k] + x[i] * y[i] * alg.at(i, k);
    return out;
}

}  // namespace

std::vector<Vector> naive_principal_power(const EvolutionAlgebra& alg, int k) {
    const int n = alg.dim();
    if (k < 1) throw std::invalid_argument("exponent must be >= 1");
    if (k > (1L << n) + 1)
        throw std::invalid_argument("oracle cost guard: k exceeds 2^dim + 1");

    std::vector<std::vector<Vector>> pw(static_cast<size_t>(k));
    for (int i = 0; i < n; ++i) pw[0].push_back(unit_vector(n, alg.field(), i));
    for (int j = 2; j <= k; ++j) {
        EchelonRows acc{n, alg.field(), {}, {}};
        for (int i = 1; i <= j - 1; ++i)
            for (const auto& u : pw[static_cast<size_t>(i) - 1])
                for (const auto& v : pw[static_cast<size_t>(j - i) - 1])
                    acc.insert(naive_multiply(alg, u, v));
        pw[static_cast<size_t>(j) - 1] = std::move(acc.rows);
    }
    return pw[static_cast<size_t>(k) - 1];
}

namespace {

bool cycles_all_zero(const EvolutionAlgebra& alg, std::vector<int>& tuple, std::vector<bool>& used,
                     const Scalar& partial) {
    const int n = alg.dim();
    // close the current tuple
    if (!tuple.empty()) {
        const Scalar closing = partial * alg.at(tuple.back(), tuple.front());
        if (!closing.is_zero()) return false;
    }
    if (static_cast<int>(tuple.size()) == n) return true;
    for (int next = 0; next < n; ++next) {
        if (used[next]) continue;
        Scalar ext = partial;
        if (!tuple.empty()) {
            ext = partial * alg.at(tuple.back(), next);
            if (ext.is_zero()) continue;  // every longer cycle through this edge has zero product
        }
        used[next] = true;
        tuple.push_back(next);
        const bool ok = cycles_all_zero(alg, tuple, used, ext);
        tuple.pop_back();
        used[next] = false;
        if (!ok) return false;
    }
    return true;
}

}  // namespace

bool naive_nil_check(const EvolutionAlgebra& alg) {
    if (alg.dim() > 8) throw std::invalid_argument("oracle cost guard: dim <= 8");
    std::vector<int> tuple;
    std::vector<bool> used(alg.dim(), false);
    return cycles_all_zero(alg, tuple, used, Scalar::one(alg.field()));
}

bool naive_nil_element_check(const EvolutionAlgebra& alg, int samples, unsigned long long seed) {
    if (alg.field() == Field::complex_float)
        throw std::invalid_argument("nil element sampling needs an exact backend");
    const int n = alg.dim();
    const long bound = (1L << n) + 1;
    SplitMix rng(seed);
    const long vals[5] = {-2, -1, 0, 1, 2};

    for (int s = 0; s < samples; ++s) {
        Vector x(n, Scalar::zero(alg.field()));
        bool all_zero = true;
        for (int i = 0; i < n; ++i) {
            const long v = vals[rng.bounded(5)];
            if (v != 0) all_zero = false;
            x[i] = alg.field() == Field::rational
                       ? Scalar(mpq_class(v))
                       : Scalar::gaussian(v, static_cast<long>(rng.bounded(3)) - 1);
        }
        if (all_zero) continue;

        std::vector<Vector> seen{x};
        Vector p = x;
        bool vanished = false;
        for (long m = 2; m <= bound; ++m) {
            Vector q(n, Scalar::zero(alg.field()));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) q[k] = q[k] + p[i] * x[i] * alg.at(i, k);
            p = std::move(q);
            if (vector_is_zero(p)) {
                vanished = true;
                break;
            }
            for (const auto& old : seen)
                if (old == p) return false;  // the sequence cycles without reaching zero
            seen.push_back(p);
        }
        if (!vanished) return false;
    }
    return true;
}

}  // namespace evokit::oracle
