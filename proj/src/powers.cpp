#include "evokit/powers.hpp"

#include <map>

namespace evokit {

std::string chain_kind_name(ChainKind k) {
    switch (k) {
        case ChainKind::principal: return "principal";
        case ChainKind::right: return "right";
        case ChainKind::derived: return "derived";
    }
    return "?";
}

namespace {

// First exponent (walking back from `upto`) from which every computed
// subspace equals the limit stored at `upto`.
int earliest_constant_exponent(const std::vector<Subspace>& chain, int upto, double eps) {
    int e = upto;
    while (e > 1 && equals(chain[static_cast<size_t>(e) - 2], chain[static_cast<size_t>(upto) - 1], eps))
        --e;
    return e;
}

void finish_report(PowerChainReport& rep, double eps) {
    for (const auto& s : rep.subspaces) rep.dims.push_back(s.dim());
    if (rep.stabilized_at)
        rep.stabilized_at = earliest_constant_exponent(rep.subspaces, *rep.stabilized_at, eps);
}

}  // namespace

PowerChainReport principal_powers(const EvolutionAlgebra& alg, double eps) {
    PowerChainReport rep;
    rep.kind = ChainKind::principal;
    rep.tolerance_dependent = (alg.field() == Field::complex_float);
    const int n = alg.dim();
    const long cap = (1L << n) + 1;

    std::vector<Subspace> chain;  // chain[k-1] = E^k
    chain.push_back(Subspace::full(n, alg.field()));

    // The chain takes few distinct values; products are cached per distinct
    // pair so the exponent loop does subspace products only on new pairs.
    std::vector<int> id_of;  // id = first exponent holding the same subspace
    id_of.push_back(1);
    std::map<std::pair<int, int>, Subspace> prod_cache;

    for (long k = 2; k <= cap; ++k) {
        Subspace acc = Subspace::zero(n, alg.field());
        for (long i = 1; i <= k / 2; ++i) {
            const int a = id_of[static_cast<size_t>(i) - 1];
            const int b = id_of[static_cast<size_t>(k - i) - 1];
            const auto key = std::minmax(a, b);
            auto it = prod_cache.find(key);
            if (it == prod_cache.end()) {
                it = prod_cache
                         .emplace(key, product(alg, chain[static_cast<size_t>(a) - 1],
                                               chain[static_cast<size_t>(b) - 1], eps))
                         .first;
            }
            acc = sum(acc, it->second, eps);
        }
        chain.push_back(acc);
        int id = static_cast<int>(k);
        if (equals(acc, chain[static_cast<size_t>(k) - 2], eps)) id = id_of.back();
        id_of.push_back(id);

        if (acc.is_zero()) {
            rep.index = static_cast<int>(k);
            rep.subspaces = std::move(chain);
            finish_report(rep, eps);
            return rep;
        }
        // Stabilization test at exponents 2^{s+1}+1.
        const long km1 = k - 1;
        if (km1 >= 2 && (km1 & (km1 - 1)) == 0) {
            const long lower = km1 / 2 + 1;  // 2^s + 1
            if (equals(acc, chain[static_cast<size_t>(lower) - 1], eps)) {
                rep.stabilized_at = static_cast<int>(lower);
                rep.subspaces = std::move(chain);
                finish_report(rep, eps);
                return rep;
            }
        }
    }
    throw std::logic_error("principal chain failed to terminate within 2^n+1 exponents");
}

namespace {

PowerChainReport iterated_chain(const EvolutionAlgebra& alg, ChainKind kind, double eps) {
    PowerChainReport rep;
    rep.kind = kind;
    rep.tolerance_dependent = (alg.field() == Field::complex_float);
    const int n = alg.dim();
    const Subspace full = Subspace::full(n, alg.field());
    std::vector<Subspace> chain{full};

    // Both chains are non-increasing, so the first repeat is the limit.
    while (true) {
        const Subspace& prev = chain.back();
        Subspace next = (kind == ChainKind::right) ? product(alg, prev, full, eps)
                                                   : product(alg, prev, prev, eps);
        const int k = static_cast<int>(chain.size()) + 1;
        chain.push_back(std::move(next));
        if (chain.back().is_zero()) {
            rep.index = k;
            break;
        }
        if (equals(chain.back(), chain[static_cast<size_t>(k) - 2], eps)) {
            rep.stabilized_at = k - 1;
            break;
        }
    }
    rep.subspaces = std::move(chain);
    finish_report(rep, eps);
    return rep;
}

}  // namespace

PowerChainReport right_powers(const EvolutionAlgebra& alg, double eps) {
    return iterated_chain(alg, ChainKind::right, eps);
}

PowerChainReport derived_powers(const EvolutionAlgebra& alg, double eps) {
    return iterated_chain(alg, ChainKind::derived, eps);
}

const Subspace& principal_value_at(const PowerChainReport& principal, int k) {
    if (k < 1) throw std::invalid_argument("exponent must be >= 1");
    if (k <= principal.max_exponent()) return principal.at_exponent(k);
    // Past the computed range the chain is zero (terminated) or constant
    // (stabilized); either way the last stored subspace is the value.
    return principal.subspaces.back();
}

NilpotencyVerdict nil_check(const EvolutionAlgebra& alg, double eps) {
    NilpotencyVerdict v;
    v.tolerance_dependent = (alg.field() == Field::complex_float);
    const int n = alg.dim();

    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!alg.at(i, j).is_zero(eps)) adj[i].push_back(j);

    // Iterative DFS: finds one directed cycle or a reverse topological order.
    std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> parent(n, -1);
    std::vector<int> order;
    order.reserve(n);

    for (int root = 0; root < n; ++root) {
        if (color[root] != 0) continue;
        std::vector<std::pair<int, size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < adj[u].size()) {
                const int w = adj[u][next++];
                if (color[w] == 0) {
                    color[w] = 1;
                    parent[w] = u;
                    stack.emplace_back(w, 0);
                } else if (color[w] == 1) {
                    std::vector<int> cycle;
                    for (int x = u; x != w; x = parent[x]) cycle.push_back(x);
                    cycle.push_back(w);
                    std::reverse(cycle.begin(), cycle.end());
                    v.is_nil = false;
                    v.witness_cycle = std::move(cycle);
                    return v;
                }
            } else {
                color[u] = 2;
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::reverse(order.begin(), order.end());  // topological: edges go forward
    v.is_nil = true;
    v.triangularizing_permutation = std::move(order);
    return v;
}

bool is_nilpotent(const EvolutionAlgebra& alg, double eps) {
    return principal_powers(alg, eps).index.has_value();
}

std::optional<int> nilpotent_index(const EvolutionAlgebra& alg, double eps) {
    return principal_powers(alg, eps).index;
}

std::optional<int> right_nilpotency_index(const EvolutionAlgebra& alg, double eps) {
    return right_powers(alg, eps).index;
}

std::optional<int> solvability_index(const EvolutionAlgebra& alg, double eps) {
    return derived_powers(alg, eps).index;
}

long max_nilpotent_index(int n) { return (1L << (n - 1)) + 1; }

bool max_index_criterion(const EvolutionAlgebra& alg, double eps) {
    const int n = alg.dim();
    std::vector<int> perm(n);
    if (alg.strictly_upper_triangular()) {
        for (int i = 0; i < n; ++i) perm[i] = i;
    } else {
        const auto v = nil_check(alg, eps);
        if (!v.is_nil) throw std::invalid_argument("not a nilpotent algebra presentation");
        perm = *v.triangularizing_permutation;
    }
    for (int i = 0; i + 1 < n; ++i)
        if (alg.at(perm[i], perm[i + 1]).is_zero(eps)) return false;
    return true;
}

std::vector<std::string> check_plateau_laws(const PowerChainReport& principal, double eps) {
    std::vector<std::string> bad;
    const int m = principal.max_exponent();
    for (long k = 0;; ++k) {
        const long block_end = 1L << (k + 1);  // exponents 2^k+1 .. 2^{k+1} agree
        if ((1L << k) + 1 > m) break;
        const long last = std::min<long>(block_end, m);
        const Subspace& ref = principal.at_exponent(static_cast<int>(last));
        for (long e = (1L << k) + 1; e < last; ++e) {
            if (!equals(principal.at_exponent(static_cast<int>(e)), ref, eps))
                bad.push_back("E^" + std::to_string(e) + " != E^" + std::to_string(last));
        }
    }
    return bad;
}

std::vector<std::string> check_chain_inclusions(const PowerChainReport& principal,
                                                const PowerChainReport& right,
                                                const PowerChainReport& derived, double eps) {
    std::vector<std::string> bad;
    for (int k = 1; k <= right.max_exponent() && k <= principal.max_exponent(); ++k) {
        if (!contains(principal.at_exponent(k), right.at_exponent(k), eps))
            bad.push_back("E^<" + std::to_string(k) + "> not in E^" + std::to_string(k));
    }
    for (int k = 1; k + 1 <= derived.max_exponent(); ++k) {
        if ((1L << k) > (1L << 30)) break;
        const Subspace& pw = principal_value_at(principal, static_cast<int>(1L << k));
        if (!contains(pw, derived.at_exponent(k + 1), eps))
            bad.push_back("E^[" + std::to_string(k + 1) + "] not in E^2^" + std::to_string(k));
    }
    return bad;
}

}  // namespace evokit
