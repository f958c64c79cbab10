#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evokit/scalar.hpp"

namespace evokit {

using Vector = std::vector<Scalar>;

/// n-dimensional evolution algebra: e_i * e_j = 0 for i != j and
/// e_i^2 = sum_k a_ik e_k, stored as the n x n structural-constants matrix A.
class EvolutionAlgebra {
public:
    EvolutionAlgebra(int dim, std::vector<Scalar> row_major,
                     std::optional<std::string> label = std::nullopt);

    static EvolutionAlgebra zero(int dim, Field f);

    int dim() const { return dim_; }
    Field field() const { return field_; }
    const std::optional<std::string>& label() const { return label_; }
    void set_label(std::string s) { label_ = std::move(s); }

    const Scalar& at(int i, int j) const { return mat_[static_cast<size_t>(i) * dim_ + j]; }
    Scalar& at(int i, int j) { return mat_[static_cast<size_t>(i) * dim_ + j]; }
    const std::vector<Scalar>& entries() const { return mat_; }

    /// Row i of A as a vector, i.e. the coordinates of e_i^2.
    Vector row(int i) const;

    bool strictly_upper_triangular() const;

    /// Entrywise exact equality (same backend required).
    bool operator==(const EvolutionAlgebra& o) const;

private:
    int dim_;
    Field field_;
    std::vector<Scalar> mat_;
    std::optional<std::string> label_;
};

Vector zero_vector(int dim, Field f);
Vector unit_vector(int dim, Field f, int i);
bool vector_is_zero(const Vector& v);

/// Bilinear product of x and y: sum_i x_i y_i e_i^2.
Vector multiply(const EvolutionAlgebra& alg, const Vector& x, const Vector& y);

/// Left-normed principal power ((x*x)*x)*... with m factors.
Vector plus_power(const EvolutionAlgebra& alg, const Vector& x, int m);

}  // namespace evokit
