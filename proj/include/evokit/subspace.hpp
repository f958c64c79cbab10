#pragma once

#include <vector>

#include "evokit/algebra.hpp"

namespace evokit {

inline constexpr double kDefaultEps = 1e-9;

/// Linear subspace stored as a reduced row-echelon basis, so equal subspaces
/// have identical bases and equality is an entrywise comparison. r = 0 rows
/// encodes the zero subspace.
class Subspace {
public:
    Subspace(int ambient_dim, Field f) : ambient_(ambient_dim), field_(f) {
        if (ambient_ < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    }

    static Subspace zero(int ambient_dim, Field f) { return Subspace(ambient_dim, f); }
    static Subspace full(int ambient_dim, Field f);
    static Subspace span(const std::vector<Vector>& vectors, int ambient_dim, Field f,
                         double eps = kDefaultEps);

    int ambient_dim() const { return ambient_; }
    Field field() const { return field_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    bool is_zero() const { return rows_.empty(); }
    const std::vector<Vector>& basis() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    int ambient_;
    Field field_;
    std::vector<Vector> rows_;   // reduced echelon, pivot entries 1
    std::vector<int> pivots_;    // pivot column of each row, strictly increasing

    friend Subspace reduce_to_subspace(std::vector<Vector> rows, int ambient, Field f, double eps);
};

Subspace sum(const Subspace& u, const Subspace& v, double eps = kDefaultEps);
Subspace product(const EvolutionAlgebra& alg, const Subspace& u, const Subspace& v,
                 double eps = kDefaultEps);
bool equals(const Subspace& u, const Subspace& v, double eps = kDefaultEps);
bool contains(const Subspace& u, const Subspace& v, double eps = kDefaultEps);
/// Residual of x after elimination against u's basis; zero iff x lies in u.
Vector reduce_against(const Subspace& u, Vector x, double eps = kDefaultEps);

}  // namespace evokit
