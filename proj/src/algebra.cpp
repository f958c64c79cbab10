#include "evokit/algebra.hpp"

namespace evokit {

EvolutionAlgebra::EvolutionAlgebra(int dim, std::vector<Scalar> row_major,
                                   std::optional<std::string> label)
    : dim_(dim), mat_(std::move(row_major)), label_(std::move(label)) {
    if (dim_ < 1) throw std::invalid_argument("algebra dimension must be >= 1");
    if (mat_.size() != static_cast<size_t>(dim_) * dim_)
        throw dimension_mismatch("structural matrix is not dim x dim");
    field_ = mat_.front().field();
    for (const auto& s : mat_)
        if (s.field() != field_)
            throw backend_mismatch("structural matrix mixes scalar backends");
}

EvolutionAlgebra EvolutionAlgebra::zero(int dim, Field f) {
    return EvolutionAlgebra(dim, std::vector<Scalar>(static_cast<size_t>(dim) * dim, Scalar::zero(f)));
}

Vector EvolutionAlgebra::row(int i) const {
    Vector r;
    r.reserve(dim_);
    for (int j = 0; j < dim_; ++j) r.push_back(at(i, j));
    return r;
}

bool EvolutionAlgebra::strictly_upper_triangular() const {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j <= i; ++j)
            if (!at(i, j).is_zero()) return false;
    return true;
}

bool EvolutionAlgebra::operator==(const EvolutionAlgebra& o) const {
    if (dim_ != o.dim_) return false;
    for (size_t k = 0; k < mat_.size(); ++k)
        if (mat_[k] != o.mat_[k]) return false;
    return true;
}

Vector zero_vector(int dim, Field f) { return Vector(dim, Scalar::zero(f)); }

Vector unit_vector(int dim, Field f, int i) {
    Vector v = zero_vector(dim, f);
    v[i] = Scalar::one(f);
    return v;
}

bool vector_is_zero(const Vector& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

Vector multiply(const EvolutionAlgebra& alg, const Vector& x, const Vector& y) {
    const int n = alg.dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw dimension_mismatch("vector length does not match algebra dimension");
    Vector out = zero_vector(n, alg.field());
    for (int i = 0; i < n; ++i) {
        if (x[i].is_zero() || y[i].is_zero()) continue;
        const Scalar c = x[i] * y[i];
        for (int k = 0; k < n; ++k) {
            const Scalar& a = alg.at(i, k);
            if (!a.is_zero()) out[k] = out[k] + c * a;
        }
    }
    return out;
}

Vector plus_power(const EvolutionAlgebra& alg, const Vector& x, int m) {
    if (m < 1) throw std::invalid_argument("plus_power exponent must be >= 1");
    Vector acc = x;
    for (int k = 2; k <= m; ++k) acc = multiply(alg, acc, x);
    return acc;
}

}  // namespace evokit
