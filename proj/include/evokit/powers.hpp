#pragma once

#include <optional>

#include "evokit/subspace.hpp"

namespace evokit {

enum class ChainKind { principal, right, derived };

std::string chain_kind_name(ChainKind k);

/// One computed power chain. subspaces[0] holds exponent 1 (the full space).
/// Exactly one of index / stabilized_at is set: index is the first exponent
/// whose subspace is zero; stabilized_at is the first exponent from which the
/// chain is provably constant at a nonzero limit.
struct PowerChainReport {
    ChainKind kind = ChainKind::principal;
    std::vector<Subspace> subspaces;
    std::vector<int> dims;
    std::optional<int> stabilized_at;
    std::optional<int> index;
    bool tolerance_dependent = false;

    int max_exponent() const { return static_cast<int>(subspaces.size()); }
    const Subspace& at_exponent(int k) const { return subspaces.at(static_cast<size_t>(k) - 1); }
};

struct NilpotencyVerdict {
    bool is_nil = false;
    std::optional<std::vector<int>> witness_cycle;               // 0-based, iff not nil
    std::optional<std::vector<int>> triangularizing_permutation; // 0-based, iff nil
    bool tolerance_dependent = false;
};

/// E^k = sum_{i<=k/2} E^i E^{k-i}, computed for every exponent until the
/// chain hits zero or a plateau E^{2^s+1} = E^{2^{s+1}+1} certifies that it
/// is constant from 2^s+1 on. Bounded by exponent 2^n+1.
PowerChainReport principal_powers(const EvolutionAlgebra& alg, double eps = kDefaultEps);

/// E^<k+1> = E^<k> E.
PowerChainReport right_powers(const EvolutionAlgebra& alg, double eps = kDefaultEps);

/// E^[k+1] = E^[k] E^[k].
PowerChainReport derived_powers(const EvolutionAlgebra& alg, double eps = kDefaultEps);

/// Value of the principal chain at any exponent, extending past the computed
/// range by the termination semantics (zero past the index, constant past
/// the stabilization point).
const Subspace& principal_value_at(const PowerChainReport& principal, int k);

/// Nil test via the digraph on {1..n} with an edge i->j iff a_ij != 0:
/// the algebra is nil iff that digraph is acyclic.
NilpotencyVerdict nil_check(const EvolutionAlgebra& alg, double eps = kDefaultEps);

bool is_nilpotent(const EvolutionAlgebra& alg, double eps = kDefaultEps);
std::optional<int> nilpotent_index(const EvolutionAlgebra& alg, double eps = kDefaultEps);
std::optional<int> right_nilpotency_index(const EvolutionAlgebra& alg, double eps = kDefaultEps);
std::optional<int> solvability_index(const EvolutionAlgebra& alg, double eps = kDefaultEps);

/// For a strictly upper triangular presentation (found via nil_check if
/// needed): true iff a_12 a_23 ... a_{n-1,n} != 0, equivalently the
/// nilpotent index is 2^{n-1}+1. Throws if the algebra is not nil.
bool max_index_criterion(const EvolutionAlgebra& alg, double eps = kDefaultEps);

/// Largest nilpotent index possible in dimension n.
long max_nilpotent_index(int n);

/// Violations of the plateau law E^{2^k+i} = E^{2^{k+1}} over the computed
/// range of a principal chain; empty means the law held everywhere.
std::vector<std::string> check_plateau_laws(const PowerChainReport& principal,
                                            double eps = kDefaultEps);

/// Violations of E^<k> subset of E^k and E^[k+1] subset of E^{2^k}.
std::vector<std::string> check_chain_inclusions(const PowerChainReport& principal,
                                                const PowerChainReport& right,
                                                const PowerChainReport& derived,
                                                double eps = kDefaultEps);

}  // namespace evokit
