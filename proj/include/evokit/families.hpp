#pragma once

#include <map>
#include <optional>

#include "evokit/algebra.hpp"

namespace evokit::families {

enum class FamilyKind {
    max_index,
    chain_to_er,
    gap_family,
    block_family,
    four_dim_index4,
    canonical_4,
    canonical_5,
    mid_gap,
    random_upper,
    random_dense,
};

FamilyKind family_kind_from_name(const std::string& name);
std::string family_kind_name(FamilyKind k);
std::vector<std::string> family_kind_names();

/// Parameters are literal strings, parsed per kind: integers (r, s, m,
/// variant, seed), rationals (b, c, d, f, fill values), comma lists (gaps,
/// values) and per-entry overrides a_<i>_<j> (1-based positions) on the
/// entries each construction leaves free.
struct FamilySpec {
    FamilyKind kind = FamilyKind::max_index;
    int dim = 0;
    std::map<std::string, std::string> params;
};

/// Deterministic generator for the named construction; random kinds are
/// seed-deterministic.
EvolutionAlgebra generate(const FamilySpec& spec);

/// The construction's stated nilpotent index, when it has one; random kinds
/// and the non-nilpotent chain_to_er return nothing.
std::optional<long> expected_index(const FamilySpec& spec);

/// Superdiagonal ones except a_{m,m+1} = 0, with variant 1 setting
/// a_{m,m+2} != 0 and variant 2 setting a_{m-1,m+1} != 0 (1-based m,
/// 2 <= m <= n-2). Nilpotent index 2^{n-2}+1.
EvolutionAlgebra mid_gap_family(int n, int m, int variant);

}  // namespace evokit::families
