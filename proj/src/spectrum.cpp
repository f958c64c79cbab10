#include "evokit/spectrum.hpp"

#include <thread>

#include "evokit/powers.hpp"
#include "evokit/rng.hpp"

namespace evokit {

EvolutionAlgebra spectrum_algebra(int n, const std::vector<mpq_class>& grid,
                                  unsigned long long point) {
    std::vector<Scalar> m(static_cast<size_t>(n) * n, Scalar(mpq_class(0)));
    const unsigned long long g = grid.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m[static_cast<size_t>(i) * n + j] = Scalar(grid[point % g]);
            point /= g;
        }
    return EvolutionAlgebra(n, std::move(m));
}

namespace {

unsigned long long pow_checked(unsigned long long base, int exp) {
    unsigned long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > ~0ULL / base) throw std::overflow_error("spectrum grid space overflows");
        r *= base;
    }
    return r;
}

struct Shard {
    std::map<long, long> counts;
    std::map<long, std::pair<long, std::vector<mpq_class>>> witnesses;  // index -> (t, matrix)
};

}  // namespace

SpectrumResult run_spectrum(const SpectrumOptions& opts) {
    if (opts.n < 1) throw std::invalid_argument("spectrum needs n >= 1");
    if (opts.grid.empty()) throw std::invalid_argument("spectrum needs a nonempty grid");
    if (opts.budget < 1) throw std::invalid_argument("spectrum needs a positive budget");

    const int positions = opts.n * (opts.n - 1) / 2;
    const unsigned long long space = pow_checked(opts.grid.size(), positions);
    const bool exhaustive = space <= static_cast<unsigned long long>(opts.budget);
    const long total = exhaustive ? static_cast<long>(space) : opts.budget;

    const auto point_of = [&](long t) -> unsigned long long {
        if (exhaustive) return static_cast<unsigned long long>(t);
        return splitmix64(opts.seed + static_cast<unsigned long long>(t)) % space;
    };

    const int workers = std::max(1, opts.workers);
    std::vector<Shard> shards(static_cast<size_t>(workers));
    const auto work = [&](int w) {
        Shard& sh = shards[static_cast<size_t>(w)];
        for (long t = w; t < total; t += workers) {
            const EvolutionAlgebra alg = spectrum_algebra(opts.n, opts.grid, point_of(t));
            const auto idx = principal_powers(alg).index;
            if (!idx) throw std::logic_error("strictly upper triangular algebra must be nilpotent");
            sh.counts[*idx] += 1;
            auto it = sh.witnesses.find(*idx);
            if (it == sh.witnesses.end() || t < it->second.first) {
                std::vector<mpq_class> mat;
                for (const auto& s : alg.entries()) mat.push_back(s.as_rational());
                sh.witnesses[*idx] = {t, std::move(mat)};
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    SpectrumResult res;
    res.space_size = space;
    res.enumerated = total;
    res.exhaustive = exhaustive;
    std::map<long, std::pair<long, std::vector<mpq_class>>> best;
    for (const auto& sh : shards) {
        for (const auto& [idx, c] : sh.counts) res.index_counts[idx] += c;
        for (const auto& [idx, w] : sh.witnesses) {
            auto it = best.find(idx);
            if (it == best.end() || w.first < it->second.first) best[idx] = w;
        }
    }
    for (auto& [idx, w] : best) res.witnesses[idx] = std::move(w.second);
    return res;
}

}  // namespace evokit
