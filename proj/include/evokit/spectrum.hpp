#pragma once

#include <map>

#include "evokit/algebra.hpp"

namespace evokit {

/// Enumerates strictly upper triangular n x n matrices with entries drawn
/// from a rational grid and records the nilpotent index of each algebra.
/// Exhaustive when the grid fits the budget, deterministic index-sampling
/// otherwise; sharding across workers does not change the result.
struct SpectrumOptions {
    int n = 3;
    std::vector<mpq_class> grid;
    long budget = 100000;
    int workers = 1;
    unsigned long long seed = 0x5ca1ab1eULL;
};

struct SpectrumResult {
    std::map<long, long> index_counts;
    std::map<long, std::vector<mpq_class>> witnesses;  // first matrix reaching each index
    unsigned long long space_size = 0;
    long enumerated = 0;
    bool exhaustive = false;
};

SpectrumResult run_spectrum(const SpectrumOptions& opts);

/// Builds the algebra for one enumeration point (mixed-radix digits of
/// `point` over the grid fill the strict upper triangle row by row).
EvolutionAlgebra spectrum_algebra(int n, const std::vector<mpq_class>& grid,
                                  unsigned long long point);

}  // namespace evokit
