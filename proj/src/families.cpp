#include "evokit/families.hpp"

#include <algorithm>
#include <sstream>

#include "evokit/rng.hpp"

namespace evokit::families {

FamilyKind family_kind_from_name(const std::string& name) {
    for (const auto& k : {FamilyKind::max_index, FamilyKind::chain_to_er, FamilyKind::gap_family,
                          FamilyKind::block_family, FamilyKind::four_dim_index4,
                          FamilyKind::canonical_4, FamilyKind::canonical_5, FamilyKind::mid_gap,
                          FamilyKind::random_upper, FamilyKind::random_dense})
        if (family_kind_name(k) == name) return k;
    throw std::invalid_argument("unknown family: \"" + name + "\"");
}

std::string family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::max_index: return "max_index";
        case FamilyKind::chain_to_er: return "chain_to_er";
        case FamilyKind::gap_family: return "gap_family";
        case FamilyKind::block_family: return "block_family";
        case FamilyKind::four_dim_index4: return "four_dim_index4";
        case FamilyKind::canonical_4: return "canonical_4";
        case FamilyKind::canonical_5: return "canonical_5";
        case FamilyKind::mid_gap: return "mid_gap";
        case FamilyKind::random_upper: return "random_upper";
        case FamilyKind::random_dense: return "random_dense";
    }
    return "?";
}

std::vector<std::string> family_kind_names() {
    return {"max_index",       "chain_to_er", "gap_family",  "block_family", "four_dim_index4",
            "canonical_4",     "canonical_5", "mid_gap",     "random_upper", "random_dense"};
}

namespace {

struct Params {
    const FamilySpec& spec;

    bool has(const std::string& k) const { return spec.params.count(k) > 0; }

    long get_int(const std::string& k) const {
        const auto it = spec.params.find(k);
        if (it == spec.params.end())
            throw std::invalid_argument(family_kind_name(spec.kind) + " requires parameter " + k);
        return std::stol(it->second);
    }
    long get_int(const std::string& k, long dflt) const { return has(k) ? get_int(k) : dflt; }

    mpq_class get_rat(const std::string& k, const char* dflt) const {
        const auto it = spec.params.find(k);
        return parse_rational_literal(it == spec.params.end() ? dflt : it->second);
    }

    std::vector<long> get_list(const std::string& k) const {
        const auto it = spec.params.find(k);
        if (it == spec.params.end())
            throw std::invalid_argument(family_kind_name(spec.kind) + " requires parameter " + k);
        std::vector<long> out;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
        return out;
    }

    std::vector<mpq_class> get_rat_list(const std::string& k, const char* dflt) const {
        const auto it = spec.params.find(k);
        std::vector<mpq_class> out;
        std::stringstream ss(it == spec.params.end() ? std::string(dflt) : it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(parse_rational_literal(tok));
        return out;
    }
};

struct RatMatrix {
    int n;
    std::vector<mpq_class> m;
    explicit RatMatrix(int dim) : n(dim), m(static_cast<size_t>(dim) * dim, 0) {}
    mpq_class& at1(int i, int j) { return m[static_cast<size_t>(i - 1) * n + (j - 1)]; }

    EvolutionAlgebra build(std::string label) const {
        std::vector<Scalar> s;
        s.reserve(m.size());
        for (const auto& q : m) s.push_back(Scalar(q));
        EvolutionAlgebra a(n, std::move(s));
        a.set_label(std::move(label));
        return a;
    }
};

// Applies a_<i>_<j> overrides (1-based positions), restricted to the
// positions the construction leaves free.
template <typename FreePred>
void apply_overrides(RatMatrix& mat, const FamilySpec& spec, FreePred free,
                     bool nonzero_if_chain = false) {
    for (const auto& [key, val] : spec.params) {
        if (key.rfind("a_", 0) != 0) continue;
        const size_t us = key.find('_', 2);
        if (us == std::string::npos) throw std::invalid_argument("bad entry override " + key);
        const int i = std::stoi(key.substr(2, us - 2));
        const int j = std::stoi(key.substr(us + 1));
        if (i < 1 || j < 1 || i > mat.n || j > mat.n)
            throw std::invalid_argument("entry override out of range: " + key);
        const int kind = free(i, j);  // 0 forbidden, 1 free, 2 must stay nonzero
        if (kind == 0)
            throw std::invalid_argument("entry " + key + " is fixed by the " +
                                        family_kind_name(spec.kind) + " construction");
        mpq_class q = parse_rational_literal(val);
        if (kind == 2 && sgn(q) == 0)
            throw std::invalid_argument("entry " + key + " must be nonzero in " +
                                        family_kind_name(spec.kind));
        mat.at1(i, j) = q;
        (void)nonzero_if_chain;
    }
}

EvolutionAlgebra gen_max_index(const FamilySpec& spec) {
    const int n = spec.dim;
    RatMatrix m(n);
    for (int i = 1; i < n; ++i) m.at1(i, i + 1) = 1;
    apply_overrides(m, spec, [n](int i, int j) {
        if (j == i + 1) return 2;
        return j >= i + 2 ? 1 : 0;
    });
    return m.build("max_index(n=" + std::to_string(n) + ")");
}

EvolutionAlgebra gen_chain_to_er(const FamilySpec& spec) {
    const int n = spec.dim;
    const long r = Params{spec}.get_int("r");
    if (r < 2 || r > n - 1)
        throw std::invalid_argument("chain_to_er requires 2 <= r <= n-1");
    RatMatrix m(n);
    for (int i = 1; i < r; ++i) m.at1(i, i + 1) = 1;
    for (int i = static_cast<int>(r); i <= n; ++i) m.at1(i, static_cast<int>(r)) = 1;
    return m.build("chain_to_er(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")");
}

std::vector<long> validated_gaps(const FamilySpec& spec, long s, int n, int upper) {
    const auto gaps = Params{spec}.get_list("gaps");
    if (static_cast<long>(gaps.size()) != s - 1)
        throw std::invalid_argument("expected s-1 gap positions");
    for (size_t k = 0; k < gaps.size(); ++k) {
        if (gaps[k] < 1 || gaps[k] > upper || (k > 0 && gaps[k] <= gaps[k - 1]))
            throw std::invalid_argument("gap positions must satisfy 1 <= i_1 < ... <= " +
                                        std::to_string(upper));
    }
    (void)n;
    return gaps;
}

EvolutionAlgebra gen_gap_family(const FamilySpec& spec) {
    const int n = spec.dim;
    const Params p{spec};
    const long s = p.get_int("s");
    if (s < 1 || s >= n) throw std::invalid_argument("gap_family requires 1 <= s < n");
    const auto gaps = s == 1 ? std::vector<long>{} : validated_gaps(spec, s, n, n - 2);
    const auto is_gap = [&](long i) { return std::binary_search(gaps.begin(), gaps.end(), i); };

    std::vector<long> live;
    for (long i = 1; i <= n; ++i)
        if (!is_gap(i)) live.push_back(i);

    RatMatrix m(n);
    const mpq_class fill = p.get_rat("fill", "1");
    if (sgn(fill) == 0) throw std::invalid_argument("gap_family fill must be nonzero");
    for (size_t k = 0; k + 1 < live.size(); ++k)
        m.at1(static_cast<int>(live[k]), static_cast<int>(live[k + 1])) = fill;

    apply_overrides(m, spec, [&](int i, int j) {
        if (j <= i) return 0;
        if (is_gap(j)) return 0;               // gap columns are zero
        if (is_gap(i)) return j == n ? 1 : 0;  // gap rows: only column n is open
        // chain entries must stay nonzero
        const auto it = std::find(live.begin(), live.end(), i);
        if (it + 1 != live.end() && *(it + 1) == j) return 2;
        return 1;
    });
    return m.build("gap_family(n=" + std::to_string(n) + ",s=" + std::to_string(s) + ")");
}

EvolutionAlgebra gen_block_family(const FamilySpec& spec) {
    const int n = spec.dim;
    const Params p{spec};
    const long s = p.get_int("s");
    if (s < 2 || s > n - 2) throw std::invalid_argument("block_family requires 2 <= s <= n-2");
    auto gaps = validated_gaps(spec, s, n, n - 2);
    const auto is_gap = [&](long i) { return std::binary_search(gaps.begin(), gaps.end(), i); };

    std::vector<long> live;  // the non-gap block, ending at n
    for (long i = 1; i <= n; ++i)
        if (!is_gap(i)) live.push_back(i);

    RatMatrix m(n);
    const mpq_class fill = p.get_rat("fill", "1");
    if (sgn(fill) == 0) throw std::invalid_argument("block_family fill must be nonzero");
    for (size_t k = 0; k + 1 < live.size(); ++k)
        m.at1(static_cast<int>(live[k]), static_cast<int>(live[k + 1])) = fill;
    // Gap block chain ending at e_n: a_{i_k i_{k+1}} = 1 with i_s = n.
    for (size_t k = 0; k + 1 < gaps.size(); ++k)
        m.at1(static_cast<int>(gaps[k]), static_cast<int>(gaps[k + 1])) = 1;
    m.at1(static_cast<int>(gaps.back()), n) = 1;

    apply_overrides(m, spec, [&](int i, int j) -> int {
        if (j <= i) return 0;
        const bool gi = is_gap(i), gj = is_gap(j);
        if (gi) {
            if (!gj && j != n) return 0;  // gap rows stay inside the gap block and column n
            // chain entries stay nonzero
            const auto it = std::find(gaps.begin(), gaps.end(), i);
            const long succ = (it + 1 != gaps.end()) ? *(it + 1) : n;
            return j == succ ? 2 : 1;
        }
        if (gj) return 0;  // non-gap rows have zeros in gap columns
        const auto it = std::find(live.begin(), live.end(), i);
        if (it + 1 != live.end() && *(it + 1) == j) return 2;
        return 1;
    });
    return m.build("block_family(n=" + std::to_string(n) + ",s=" + std::to_string(s) + ")");
}

EvolutionAlgebra gen_four_dim_index4(const FamilySpec& spec) {
    if (spec.dim != 4 && spec.dim != 0)
        throw std::invalid_argument("four_dim_index4 is 4-dimensional");
    const Params p{spec};
    const mpq_class b = p.get_rat("b", "1"), c = p.get_rat("c", "0"), f = p.get_rat("f", "1");
    if (sgn(b) == 0 || sgn(f) == 0)
        throw std::invalid_argument("four_dim_index4 requires b*f != 0");
    RatMatrix m(4);
    m.at1(1, 2) = 1;
    m.at1(1, 3) = b;
    m.at1(1, 4) = c;
    m.at1(2, 4) = -b * b * f;
    m.at1(3, 4) = f;
    return m.build("four_dim_index4(b=" + rational_str(b) + ",c=" + rational_str(c) +
                   ",f=" + rational_str(f) + ")");
}

EvolutionAlgebra gen_canonical(const FamilySpec& spec, int n) {
    const Params p{spec};
    const long variant = p.get_int("variant", 1);
    RatMatrix m(n);
    for (int i = 1; i < n; ++i) m.at1(i, i + 1) = 1;
    if (n == 4) {
        if (variant < 1 || variant > 2) throw std::invalid_argument("canonical_4 variant is 1 or 2");
        if (variant == 2) m.at1(1, 3) = 1;
    } else {
        const mpq_class b = p.get_rat("b", "0"), d = p.get_rat("d", "0");
        switch (variant) {
            case 1: break;
            case 2: m.at1(2, 4) = 1; break;
            case 3:
                m.at1(1, 4) = 1;
                m.at1(2, 4) = d;
                break;
            case 4:
                m.at1(1, 3) = 1;
                m.at1(1, 4) = b;
                m.at1(2, 4) = d;
                break;
            default: throw std::invalid_argument("canonical_5 variant is 1..4");
        }
    }
    return m.build("canonical_" + std::to_string(n) + "(variant=" + std::to_string(variant) + ")");
}

EvolutionAlgebra gen_random(const FamilySpec& spec, bool upper_only) {
    const int n = spec.dim;
    const Params p{spec};
    const auto values = p.get_rat_list("values", "-2,-1,0,1,2");
    SplitMix rng(static_cast<uint64_t>(p.get_int("seed", 1)));
    RatMatrix m(n);
    for (int i = 1; i <= n; ++i)
        for (int j = upper_only ? i + 1 : 1; j <= n; ++j)
            m.at1(i, j) = values[rng.bounded(values.size())];
    return m.build(std::string(upper_only ? "random_upper" : "random_dense") + "(n=" +
                   std::to_string(n) + ",seed=" + std::to_string(p.get_int("seed", 1)) + ")");
}

}  // namespace

EvolutionAlgebra mid_gap_family(int n, int m, int variant) {
    if (m < 2 || m > n - 2) throw std::invalid_argument("mid_gap requires 2 <= m <= n-2");
    if (variant != 1 && variant != 2) throw std::invalid_argument("mid_gap variant is 1 or 2");
    RatMatrix mat(n);
    for (int i = 1; i < n; ++i)
        if (i != m) mat.at1(i, i + 1) = 1;
    if (variant == 1)
        mat.at1(m, m + 2) = 1;
    else
        mat.at1(m - 1, m + 1) = 1;
    auto alg = mat.build("mid_gap(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                         ",variant=" + std::to_string(variant) + ")");
    return alg;
}

EvolutionAlgebra generate(const FamilySpec& spec) {
    if (spec.dim < 1 && spec.kind != FamilyKind::four_dim_index4 &&
        spec.kind != FamilyKind::canonical_4 && spec.kind != FamilyKind::canonical_5)
        throw std::invalid_argument("family spec needs a positive dimension");
    switch (spec.kind) {
        case FamilyKind::max_index: return gen_max_index(spec);
        case FamilyKind::chain_to_er: return gen_chain_to_er(spec);
        case FamilyKind::gap_family: return gen_gap_family(spec);
        case FamilyKind::block_family: return gen_block_family(spec);
        case FamilyKind::four_dim_index4: return gen_four_dim_index4(spec);
        case FamilyKind::canonical_4: return gen_canonical(spec, 4);
        case FamilyKind::canonical_5: return gen_canonical(spec, 5);
        case FamilyKind::mid_gap: {
            const int n = spec.dim;
            const Params p{spec};
            const int mg = static_cast<int>(p.get_int("m"));
            const int variant = static_cast<int>(p.get_int("variant", 1));
            if (mg < 2 || mg > n - 2)
                throw std::invalid_argument("mid_gap requires 2 <= m <= n-2");
            if (variant != 1 && variant != 2)
                throw std::invalid_argument("mid_gap variant is 1 or 2");
            const int vi = variant == 1 ? mg : mg - 1;
            const int vj = variant == 1 ? mg + 2 : mg + 1;

            RatMatrix mat(n);
            for (int i = 1; i < n; ++i)
                if (i != mg) mat.at1(i, i + 1) = 1;
            const mpq_class val = p.get_rat("value", "1");
            if (sgn(val) == 0) throw std::invalid_argument("mid_gap value must be nonzero");
            mat.at1(vi, vj) = val;

            apply_overrides(mat, spec, [&](int i, int j) {
                if (j <= i + 1) return 0;            // superdiagonal entries are pinned
                if (i == vi && j == vj) return 2;    // the variant entry stays nonzero
                return 1;
            });
            return mat.build("mid_gap(n=" + std::to_string(n) + ",m=" + std::to_string(mg) +
                             ",variant=" + std::to_string(variant) + ")");
        }
        case FamilyKind::random_upper: return gen_random(spec, true);
        case FamilyKind::random_dense: return gen_random(spec, false);
    }
    throw std::logic_error("bad family kind");
}

std::optional<long> expected_index(const FamilySpec& spec) {
    const Params p{spec};
    switch (spec.kind) {
        case FamilyKind::max_index: return (1L << (spec.dim - 1)) + 1;
        case FamilyKind::gap_family: return (1L << (spec.dim - p.get_int("s"))) + 1;
        case FamilyKind::block_family: {
            const long s = p.get_int("s");
            return (1L << std::max(s - 1, spec.dim - s)) + 1;
        }
        case FamilyKind::four_dim_index4: return 4;
        case FamilyKind::canonical_4: return 9;
        case FamilyKind::canonical_5: return 17;
        case FamilyKind::mid_gap: return (1L << (spec.dim - 2)) + 1;
        case FamilyKind::chain_to_er:
        case FamilyKind::random_upper:
        case FamilyKind::random_dense: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace evokit::families
