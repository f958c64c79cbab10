#pragma once

#include "evokit/algebra.hpp"

namespace evokit::oracle {

/// E^k by the literal definition E^k = sum_{i=1}^{k-1} E^i E^{k-i}, evaluated
/// bottom-up with its own row reduction. Returns the reduced row-echelon
/// basis (empty for the zero subspace). Shares nothing with the fast chain
/// beyond the Scalar type. Guard: k <= 2^dim + 1.
std::vector<Vector> naive_principal_power(const EvolutionAlgebra& alg, int k);

/// Enumerates every tuple of distinct indices and tests the cycle product
/// a_{i1 i2} a_{i2 i3} ... a_{ik i1} directly. Guard: dim <= 8.
bool naive_nil_check(const EvolutionAlgebra& alg);

/// Samples random elements and follows their left-normed powers up to
/// exponent 2^dim + 1. False when a sampled power sequence provably never
/// vanishes (a repeat without reaching zero) or fails to vanish within the
/// bound; true (all samples vanished) is evidence, not proof.
bool naive_nil_element_check(const EvolutionAlgebra& alg, int samples,
                             unsigned long long seed = 1);

}  // namespace evokit::oracle
