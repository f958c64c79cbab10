#pragma once

#include <optional>
#include <utility>

#include "evokit/powers.hpp"

namespace evokit {

/// Classification normal form for a maximal-nilpotent-index algebra:
/// strictly upper triangular, ones on the superdiagonal, last column reduced
/// to the e_{n-1} unit, and the first nonzero remaining entry scaled to 1.
/// Entries live on the complex_float backend. Indices are 0-based.
struct CanonicalForm {
    int dim = 0;
    std::vector<Scalar> matrix;  // row-major, complex_float
    std::optional<std::pair<int, int>> normalized_entry;
    std::vector<std::pair<std::pair<int, int>, Scalar>> residual_entries;

    const Scalar& at(int i, int j) const { return matrix.at(static_cast<size_t>(i) * dim + j); }
    EvolutionAlgebra algebra() const { return EvolutionAlgebra(dim, matrix); }
};

struct CanonicalizationResult {
    CanonicalForm form;
    /// Coordinate isomorphism: maps input coordinates to canonical-basis
    /// coordinates (column j = image of the j-th input basis vector).
    std::vector<Scalar> transform;       // n x n, complex_float
    std::vector<Scalar> transform_inv;   // canonical basis in input coordinates
};

/// Reduce a maximal-index algebra to its normal form: triangularize, scale
/// the superdiagonal to ones, clear the last column, then pick the unit
/// normalization that is lexicographically minimal across the admissible
/// root-of-unity rescalings. Throws if the algebra is not nilpotent of
/// maximal index.
CanonicalizationResult canonicalize_with_transform(const EvolutionAlgebra& alg,
                                                   double eps = kDefaultEps);
CanonicalForm canonicalize(const EvolutionAlgebra& alg, double eps = kDefaultEps);

/// Isomorphism test within the maximal-index class: canonical forms agree up
/// to the finite root-of-unity ambiguity of the normalization.
bool isomorphic_max_index(const EvolutionAlgebra& a, const EvolutionAlgebra& b,
                          double eps = kDefaultEps);

/// True iff phi is invertible and phi(x *_a y) = phi(x) *_b phi(y) on all
/// basis pairs. phi maps a-coordinates to b-coordinates, columnwise.
bool verify_isomorphism(const EvolutionAlgebra& a, const EvolutionAlgebra& b,
                        const std::vector<Scalar>& phi, double eps = kDefaultEps);

/// One classified family: fixed entries plus named parameter slots.
struct CanonicalFamilyPattern {
    int dim = 0;
    std::vector<std::string> cells;  // "0", "1", or a parameter name ("b", "d")
    std::vector<std::string> parameters;
};

/// The explicit classification lists: 2 rigid forms for n=4, and for n=5 two
/// rigid forms plus one 1-parameter and one 2-parameter family.
std::vector<CanonicalFamilyPattern> enumerate_canonical_families(int n);

/// Whether a canonical form instantiates the given pattern (fixed cells must
/// match within eps; parameter slots are unconstrained).
bool matches_pattern(const CanonicalForm& form, const CanonicalFamilyPattern& pattern,
                     double eps = kDefaultEps);

}  // namespace evokit
