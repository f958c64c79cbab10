#include "evokit/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace evokit {

namespace {

double inf_norm(const Vector& v) {
    double m = 0.0;
    for (const auto& s : v) m = std::max(m, std::abs(s.to_complex()));
    return m;
}

// Flushes float entries below eps * scale to exact zero. No-op on exact backends.
void flush_small(Vector& v, Field f, double eps) {
    if (f != Field::complex_float) return;
    const double scale = std::max(1.0, inf_norm(v));
    for (auto& s : v)
        if (!s.is_zero() && std::abs(s.as_complex_float()) <= eps * scale)
            s = Scalar::zero(Field::complex_float);
}

}  // namespace

Subspace reduce_to_subspace(std::vector<Vector> rows, int ambient, Field f, double eps) {
    Subspace out(ambient, f);
    const bool fl = (f == Field::complex_float);
    for (auto& r : rows) flush_small(r, f, eps);

    size_t next = 0;  // rows before `next` are finished pivot rows
    for (int col = 0; col < ambient && next < rows.size(); ++col) {
        // Pick a pivot row. Floats use scaled partial pivoting.
        size_t best = rows.size();
        double best_score = 0.0;
        for (size_t i = next; i < rows.size(); ++i) {
            const Scalar& e = rows[i][col];
            if (e.is_zero()) continue;
            if (!fl) {
                best = i;
                break;
            }
            const double nrm = inf_norm(rows[i]);
            const double score = nrm > 0 ? std::abs(e.as_complex_float()) / nrm : 0.0;
            if (best == rows.size() || score > best_score) {
                best = i;
                best_score = score;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[next], rows[best]);

        Vector& p = rows[next];
        const Scalar inv = Scalar::one(f) / p[col];
        for (int j = 0; j < ambient; ++j) p[j] = p[j] * inv;
        p[col] = Scalar::one(f);

        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == next || rows[i][col].is_zero()) continue;
            const Scalar c = rows[i][col];
            for (int j = 0; j < ambient; ++j) rows[i][j] = rows[i][j] - c * p[j];
            rows[i][col] = Scalar::zero(f);
            flush_small(rows[i], f, eps);
        }
        ++next;
    }
    rows.resize(next);

    // Rows are already ordered by pivot column; record the pivots.
    out.rows_ = std::move(rows);
    for (const auto& r : out.rows_) {
        int c = 0;
        while (r[c].is_zero()) ++c;
        out.pivots_.push_back(c);
    }
    return out;
}

Subspace Subspace::full(int ambient_dim, Field f) {
    std::vector<Vector> units;
    for (int i = 0; i < ambient_dim; ++i) units.push_back(unit_vector(ambient_dim, f, i));
    return reduce_to_subspace(std::move(units), ambient_dim, f, kDefaultEps);
}

Subspace Subspace::span(const std::vector<Vector>& vectors, int ambient_dim, Field f, double eps) {
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != ambient_dim)
            throw dimension_mismatch("span: vector length differs from ambient dimension");
        for (const auto& s : v)
            if (s.field() != f) throw backend_mismatch("span: scalar backend differs from subspace");
    }
    return reduce_to_subspace(vectors, ambient_dim, f, eps);
}

namespace {

void require_compatible(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw dimension_mismatch("subspaces live in different ambient dimensions");
    if (u.field() != v.field()) throw backend_mismatch("subspaces use different scalar backends");
}

}  // namespace

Subspace sum(const Subspace& u, const Subspace& v, double eps) {
    require_compatible(u, v);
    std::vector<Vector> rows = u.basis();
    rows.insert(rows.end(), v.basis().begin(), v.basis().end());
    return reduce_to_subspace(std::move(rows), u.ambient_dim(), u.field(), eps);
}

Subspace product(const EvolutionAlgebra& alg, const Subspace& u, const Subspace& v, double eps) {
    require_compatible(u, v);
    if (u.ambient_dim() != alg.dim())
        throw dimension_mismatch("subspace ambient dimension differs from algebra dimension");
    std::vector<Vector> prods;
    prods.reserve(u.basis().size() * v.basis().size());
    for (const auto& a : u.basis())
        for (const auto& b : v.basis()) prods.push_back(multiply(alg, a, b));
    return reduce_to_subspace(std::move(prods), u.ambient_dim(), u.field(), eps);
}

bool equals(const Subspace& u, const Subspace& v, double eps) {
    require_compatible(u, v);
    if (u.dim() != v.dim() || u.pivots() != v.pivots()) return false;
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < u.ambient_dim(); ++j)
            if (!u.basis()[i][j].approx_equal(v.basis()[i][j], eps)) return false;
    return true;
}

Vector reduce_against(const Subspace& u, Vector x, double eps) {
    if (static_cast<int>(x.size()) != u.ambient_dim())
        throw dimension_mismatch("reduce_against: vector length differs from ambient dimension");
    for (int i = 0; i < u.dim(); ++i) {
        const int c = u.pivots()[i];
        if (x[c].is_zero()) continue;
        const Scalar f = x[c];
        for (int j = 0; j < u.ambient_dim(); ++j) x[j] = x[j] - f * u.basis()[i][j];
        x[c] = Scalar::zero(u.field());
    }
    if (u.field() == Field::complex_float) {
        const double scale = std::max(1.0, inf_norm(x));
        for (auto& s : x)
            if (!s.is_zero() && std::abs(s.as_complex_float()) <= eps * scale)
                s = Scalar::zero(Field::complex_float);
    }
    return x;
}

bool contains(const Subspace& u, const Subspace& v, double eps) {
    require_compatible(u, v);
    for (const auto& r : v.basis())
        if (!vector_is_zero(reduce_against(u, r, eps))) return false;
    return true;
}

}  // namespace evokit
