#pragma once

#include <optional>

#include "evokit/powers.hpp"

namespace evokit {

/// The fixed 2-dimensional algebra <m, w> with m^2 = w^2 = 0 and
/// m*w = (m+w)/2. Coordinates throughout are (m, w).
struct SexDiffAlgebra {
    static std::pair<Scalar, Scalar> multiply(const std::pair<Scalar, Scalar>& x,
                                              const std::pair<Scalar, Scalar>& y);
    /// The same algebra presented in the natural basis (m+w, m-w).
    static EvolutionAlgebra as_evolution_algebra(Field f);
};

/// Pair of linear forms (f, g); a bq-homomorphism when
/// f(xy) = g(xy) = (f(x)g(y) + f(y)g(x))/2 for all x, y.
struct BqPair {
    Vector f;
    Vector g;
    bool nonzero() const { return !vector_is_zero(f) && !vector_is_zero(g); }
};

enum class DibaricDecision { dibaric, not_dibaric, undecided };
enum class DibaricRule {
    two_d_criterion,
    det_obstruction,
    nilpotent_obstruction,
    solvable_obstruction,
    numeric_search,
    none,
};

std::string dibaric_decision_name(DibaricDecision d);
std::string dibaric_rule_name(DibaricRule r);

struct DibaricityVerdict {
    DibaricDecision decision = DibaricDecision::undecided;
    DibaricRule rule = DibaricRule::none;
    std::optional<BqPair> witness;
    bool tolerance_dependent = false;
    std::vector<DibaricRule> fired;  // every obstruction that applied
};

/// Checks the defining identities on all basis pairs; exact backends use
/// exact equality.
bool is_bq_homomorphism(const EvolutionAlgebra& alg, const BqPair& pair, double eps = kDefaultEps);

/// Exact solvability analysis of the 2x2 homomorphism system for the algebra
/// with matrix [[a,b],[c,d]]: dibaric iff b = d = 0 and ac < 0, or b != 0,
/// ad = bc, bd < 0 and a^2 + bd != 0. When dibaric a closed-form witness is
/// attached (float-backed) and re-verified.
DibaricityVerdict dibaric_2d(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d,
                             double eps = kDefaultEps);

/// The printed discriminant-style 2D test built from
/// D = (8a-1)^2 - 32(bd + a^2), B/C = 4a^2+4bd-a +- a*sqrt(D): condition
/// b != 0, ad = bc, D >= 0, B^2 + C^2 != 0 (or b = d = 0, ac < 0). Kept as a
/// diagnostic; it disagrees with the homomorphism system on part of the
/// parameter space, which the unit tests pin down.
bool dibaric_2d_discriminant_test(const Scalar& a, const Scalar& b, const Scalar& c,
                                  const Scalar& d);

/// det(A) != 0, nilpotency and solvability each exclude dibaricity.
DibaricityVerdict not_dibaric_obstructions(const EvolutionAlgebra& alg, double eps = kDefaultEps);

struct BqSearchOptions {
    int attempts = 200;
    double eps = kDefaultEps;
    unsigned long long seed = 0x9e3779b97f4a7c15ULL;
    int workers = 1;
};

/// Multi-start damped least-squares on the bq residuals, with a decaying
/// normalization penalty steering starts away from the zero and the
/// dependent (f = g) solutions. A returned pair re-verifies under
/// is_bq_homomorphism and has f, g linearly independent; absence is
/// evidence, not proof. Deterministic for fixed options regardless of the
/// worker count.
std::optional<BqPair> numeric_bq_search(const EvolutionAlgebra& alg,
                                        const BqSearchOptions& opts = {});

/// Whether phi(x^n) = 0 for the homomorphism of a verified pair; equal to
/// f(x) g(x) (f(x)+g(x)) = 0 independently of n >= 3. With check_direct the
/// power is also evaluated explicitly on both sides and compared.
bool vn_membership(const EvolutionAlgebra& alg, const Vector& x, const BqPair& pair, int n,
                   bool check_direct = false, double eps = kDefaultEps);

/// Layered decision: exact obstructions, then the closed-form 2D criterion,
/// then the numeric search as evidence. The verdict records which layer
/// decided.
DibaricityVerdict decide_dibaric(const EvolutionAlgebra& alg, const BqSearchOptions& opts = {});

/// Exact determinant of the structural matrix (rational backend) or a
/// float determinant for complex_float.
Scalar structural_determinant(const EvolutionAlgebra& alg);

}  // namespace evokit
