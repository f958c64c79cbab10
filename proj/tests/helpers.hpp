#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "evokit/families.hpp"
#include "evokit/subspace.hpp"

namespace evotest {

using namespace evokit;

inline Scalar R(long v) { return Scalar(mpq_class(v)); }
inline Scalar R(const std::string& lit) { return Scalar(parse_rational_literal(lit)); }

inline EvolutionAlgebra alg_q(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Scalar> m;
    const int n = static_cast<int>(rows.size());
    for (const auto& r : rows)
        for (long v : r) m.push_back(R(v));
    return EvolutionAlgebra(n, std::move(m));
}

inline EvolutionAlgebra alg_qs(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::vector<Scalar> m;
    const int n = static_cast<int>(rows.size());
    for (const auto& r : rows)
        for (const char* v : r) m.push_back(R(v));
    return EvolutionAlgebra(n, std::move(m));
}

inline Vector vec_q(std::initializer_list<long> coords) {
    Vector v;
    for (long c : coords) v.push_back(R(c));
    return v;
}

inline EvolutionAlgebra random_upper(int n, unsigned seed) {
    families::FamilySpec spec;
    spec.kind = families::FamilyKind::random_upper;
    spec.dim = n;
    spec.params["seed"] = std::to_string(seed);
    return families::generate(spec);
}

inline EvolutionAlgebra random_dense(int n, unsigned seed) {
    families::FamilySpec spec;
    spec.kind = families::FamilyKind::random_dense;
    spec.dim = n;
    spec.params["seed"] = std::to_string(seed);
    return families::generate(spec);
}

/// Zassenhaus intersection, used only to cross-check the dimension formula:
/// reduce [U|U; V|0] and read the right halves of rows whose left half died.
inline Subspace intersection(const Subspace& u, const Subspace& v) {
    const int n = u.ambient_dim();
    std::vector<Vector> wide;
    for (const auto& r : u.basis()) {
        Vector w = r;
        w.insert(w.end(), r.begin(), r.end());
        wide.push_back(std::move(w));
    }
    for (const auto& r : v.basis()) {
        Vector w = r;
        for (int i = 0; i < n; ++i) w.push_back(Scalar::zero(u.field()));
        wide.push_back(std::move(w));
    }
    const Subspace reduced = Subspace::span(wide, 2 * n, u.field());
    std::vector<Vector> inter;
    for (const auto& row : reduced.basis()) {
        bool left_zero = true;
        for (int i = 0; i < n && left_zero; ++i) left_zero = row[i].is_zero();
        if (left_zero) inter.push_back(Vector(row.begin() + n, row.end()));
    }
    return Subspace::span(inter, n, u.field());
}

}  // namespace evotest
