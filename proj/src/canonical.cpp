#include "evokit/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace evokit {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> to_cmatrix(const EvolutionAlgebra& alg) {
    std::vector<cplx> m;
    m.reserve(alg.entries().size());
    for (const auto& s : alg.entries()) m.push_back(s.to_complex());
    return m;
}

cplx& at(std::vector<cplx>& m, int n, int i, int j) { return m[static_cast<size_t>(i) * n + j]; }
cplx cat(const std::vector<cplx>& m, int n, int i, int j) { return m[static_cast<size_t>(i) * n + j]; }

// Plain Gauss-Jordan inverse; the matrices here are tiny and well scaled.
std::vector<cplx> invert(std::vector<cplx> m, int n) {
    std::vector<cplx> inv(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) at(inv, n, i, i) = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int r = col; r < n; ++r) {
            const double a = std::abs(cat(m, n, r, col));
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (piv < 0) throw std::invalid_argument("singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(at(m, n, col, j), at(m, n, piv, j));
            std::swap(at(inv, n, col, j), at(inv, n, piv, j));
        }
        const cplx d = cat(m, n, col, col);
        for (int j = 0; j < n; ++j) {
            at(m, n, col, j) /= d;
            at(inv, n, col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = cat(m, n, r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                at(m, n, r, j) -= f * cat(m, n, col, j);
                at(inv, n, r, j) -= f * cat(inv, n, col, j);
            }
        }
    }
    return inv;
}

// Residual positions (i, j) with j >= i+2 and j <= n-2, row-major, 0-based.
std::vector<std::pair<int, int>> residual_positions(int n) {
    std::vector<std::pair<int, int>> ps;
    for (int i = 0; i + 2 <= n - 2; ++i)
        for (int j = i + 2; j <= n - 2; ++j) ps.emplace_back(i, j);
    return ps;
}

// Rescaling exponent of the residual entry at 0-based (i, j): with basis
// scaling alpha the entry picks up alpha^(2^(i+1) - 2^j).
long rescale_exponent(int i, int j) { return (1L << (i + 1)) - (1L << j); }

bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b, double eps) {
    for (size_t k = 0; k < a.size(); ++k) {
        const double sc = std::max({1.0, std::abs(a[k]), std::abs(b[k])});
        if (std::abs(a[k].real() - b[k].real()) > eps * sc)
            return a[k].real() < b[k].real();
        if (std::abs(a[k].imag() - b[k].imag()) > eps * sc)
            return a[k].imag() < b[k].imag();
    }
    return false;
}

std::vector<Scalar> to_scalars(const std::vector<cplx>& m) {
    std::vector<Scalar> out;
    out.reserve(m.size());
    for (const auto& z : m) out.push_back(Scalar(z));
    return out;
}

}  // namespace

CanonicalizationResult canonicalize_with_transform(const EvolutionAlgebra& alg, double eps) {
    const int n = alg.dim();
    if (!max_index_criterion(alg, eps))
        throw std::invalid_argument("canonicalize: algebra does not have maximal nilpotent index");
    std::vector<int> perm(n);
    if (alg.strictly_upper_triangular()) {
        for (int i = 0; i < n; ++i) perm[i] = i;
    } else {
        perm = *nil_check(alg, eps).triangularizing_permutation;
    }

    // Permuted complex matrix. For a maximal-index algebra the topological
    // order is unique, so this presentation is canonical already.
    const auto raw = to_cmatrix(alg);
    std::vector<cplx> m(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) at(m, n, i, j) = raw[static_cast<size_t>(perm[i]) * n + perm[j]];

    // Diagonal scaling f_i = lambda_i e_i making the superdiagonal all ones:
    // lambda_i = sqrt(lambda_{i+1} / a_{i,i+1}), lambda_n = 1 (principal roots).
    std::vector<cplx> lambda(n, 1.0);
    for (int i = n - 2; i >= 0; --i) lambda[i] = std::sqrt(lambda[i + 1] / cat(m, n, i, i + 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            at(m, n, i, j) = lambda[i] * lambda[i] * cat(m, n, i, j) / lambda[j];
    for (int i = 0; i + 1 < n; ++i) at(m, n, i, i + 1) = 1.0;

    // Clear column n on rows 1..n-2 by shifting f_i by t_i e_n. The shifts
    // leave every other column untouched.
    std::vector<cplx> t(n, 0.0);
    for (int i = n - 3; i >= 0; --i) {
        cplx v = cat(m, n, i, n - 1);
        for (int j = i + 2; j <= n - 2; ++j) v -= cat(m, n, i, j) * t[j];
        t[i + 1] = v;
    }
    for (int i = 0; i + 2 <= n - 1; ++i) at(m, n, i, n - 1) = 0.0;

    // Pick alpha: normalize the first nonzero residual entry to 1, then take
    // the root-of-unity candidate whose entry sequence is lexicographically
    // minimal under (re, im).
    const auto positions = residual_positions(n);
    std::optional<std::pair<int, int>> pivot;
    for (const auto& [i, j] : positions) {
        if (std::abs(cat(m, n, i, j)) > eps) {
            pivot = {i, j};
            break;
        }
    }

    cplx alpha = 1.0;
    if (pivot) {
        const long M = rescale_exponent(pivot->first, pivot->second);
        const cplx a0 = cat(m, n, pivot->first, pivot->second);
        const cplx principal = std::exp(-std::log(a0) / static_cast<double>(M));
        const long order = std::labs(M);
        std::vector<cplx> best_entries;
        for (long k = 0; k < order; ++k) {
            const double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(order);
            const cplx cand = principal * std::polar(1.0, ang);
            std::vector<cplx> entries;
            entries.reserve(positions.size());
            for (const auto& [i, j] : positions)
                entries.push_back(std::pow(cand, static_cast<double>(rescale_exponent(i, j))) *
                                  cat(m, n, i, j));
            if (best_entries.empty() || lex_less(entries, best_entries, eps)) {
                best_entries = std::move(entries);
                alpha = cand;
            }
        }
        for (size_t p = 0; p < positions.size(); ++p)
            at(m, n, positions[p].first, positions[p].second) = best_entries[p];
        at(m, n, pivot->first, pivot->second) = 1.0;  // exact by construction
    }

    // Snap float dust on the fixed cells.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const bool fixed_zero = (j <= i) || (j == n - 1 && i != n - 2);
            if (fixed_zero) at(m, n, i, j) = 0.0;
        }

    CanonicalizationResult res;
    res.form.dim = n;
    res.form.matrix = to_scalars(m);
    res.form.normalized_entry = pivot;
    for (const auto& [i, j] : positions)
        if (std::abs(cat(m, n, i, j)) > eps)
            res.form.residual_entries.push_back({{i, j}, Scalar(cat(m, n, i, j))});

    // Canonical basis in input coordinates: permutation, then the diagonal
    // scaling, then f_i = c_i e_i + c_i t_i e_n with c_i = alpha^(2^i).
    std::vector<cplx> basis(static_cast<size_t>(n) * n, 0.0);
    std::vector<cplx> c(n);
    for (int i = 0; i < n; ++i) c[i] = std::pow(alpha, std::pow(2.0, i));
    for (int col = 0; col < n; ++col) {
        const cplx scale = lambda[col] * c[col];
        at(basis, n, perm[col], col) += scale;
        if (col != n - 1) at(basis, n, perm[n - 1], col) += lambda[n - 1] * c[col] * t[col];
    }
    res.transform_inv = to_scalars(basis);
    res.transform = to_scalars(invert(basis, n));
    return res;
}

CanonicalForm canonicalize(const EvolutionAlgebra& alg, double eps) {
    return canonicalize_with_transform(alg, eps).form;
}

namespace {

EvolutionAlgebra to_float_algebra(const EvolutionAlgebra& alg) {
    if (alg.field() == Field::complex_float) return alg;
    std::vector<Scalar> out;
    out.reserve(alg.entries().size());
    for (const auto& s : alg.entries()) out.push_back(s.promoted_to_float());
    return EvolutionAlgebra(alg.dim(), std::move(out));
}

}  // namespace

bool isomorphic_max_index(const EvolutionAlgebra& a, const EvolutionAlgebra& b, double eps) {
    if (a.dim() != b.dim()) throw dimension_mismatch("isomorphic_max_index: dimensions differ");
    const CanonicalForm fa = canonicalize(a, eps);
    const CanonicalForm fb = canonicalize(b, eps);
    const int n = a.dim();
    const auto positions = residual_positions(n);

    const auto entries_of = [&](const CanonicalForm& f) {
        std::vector<cplx> es;
        for (const auto& [i, j] : positions) es.push_back(f.at(i, j).to_complex());
        return es;
    };
    const auto ea = entries_of(fa);
    std::vector<cplx> eb = entries_of(fb);

    const auto close = [&](const std::vector<cplx>& x, const std::vector<cplx>& y) {
        for (size_t k = 0; k < x.size(); ++k) {
            const double sc = std::max({1.0, std::abs(x[k]), std::abs(y[k])});
            if (std::abs(x[k] - y[k]) > eps * sc) return false;
        }
        return true;
    };
    if (close(ea, eb)) return true;

    // Guard against lexicographic tie-breaking drift between the two runs:
    // also accept any admissible root-of-unity rescaling of b's form.
    if (!fb.normalized_entry) return false;
    const long M = rescale_exponent(fb.normalized_entry->first, fb.normalized_entry->second);
    const long order = std::labs(M);
    for (long k = 1; k < order; ++k) {
        const double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(order);
        std::vector<cplx> scaled;
        scaled.reserve(eb.size());
        for (size_t p = 0; p < positions.size(); ++p) {
            const auto& [i, j] = positions[p];
            scaled.push_back(
                std::pow(std::polar(1.0, ang), static_cast<double>(rescale_exponent(i, j))) * eb[p]);
        }
        if (close(ea, scaled)) return true;
    }
    return false;
}

bool verify_isomorphism(const EvolutionAlgebra& a, const EvolutionAlgebra& b,
                        const std::vector<Scalar>& phi, double eps) {
    const int n = a.dim();
    if (b.dim() != n) throw dimension_mismatch("verify_isomorphism: dimensions differ");
    if (phi.size() != static_cast<size_t>(n) * n)
        throw dimension_mismatch("verify_isomorphism: map is not dim x dim");

    const EvolutionAlgebra fa = to_float_algebra(a);
    const EvolutionAlgebra fb = to_float_algebra(b);
    std::vector<cplx> p;
    p.reserve(phi.size());
    for (const auto& s : phi) p.push_back(s.to_complex());

    try {
        invert(p, n);
    } catch (const std::invalid_argument&) {
        return false;
    }

    const auto apply = [&](const Vector& x) {
        Vector out(n, Scalar::complex(0.0));
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (int j = 0; j < n; ++j) acc += cat(p, n, i, j) * x[j].to_complex();
            out[i] = Scalar(acc);
        }
        return out;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Vector lhs = apply(i == j ? fa.row(i) : zero_vector(n, Field::complex_float));
            const Vector rhs = multiply(fb, apply(unit_vector(n, Field::complex_float, i)),
                                        apply(unit_vector(n, Field::complex_float, j)));
            for (int k = 0; k < n; ++k)
                if (!lhs[k].approx_equal(rhs[k], eps)) return false;
        }
    }
    return true;
}

std::vector<CanonicalFamilyPattern> enumerate_canonical_families(int n) {
    const auto mk = [n](std::vector<std::string> cells, std::vector<std::string> params) {
        CanonicalFamilyPattern p;
        p.dim = n;
        p.cells = std::move(cells);
        p.parameters = std::move(params);
        return p;
    };
    if (n == 4) {
        return {
            mk({"0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0"}, {}),
            mk({"0", "1", "1", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0"}, {}),
        };
    }
    if (n == 5) {
        return {
            mk({"0", "1", "0", "0", "0", "0", "0", "1", "0", "0", "0", "0", "0", "1", "0",
                "0", "0", "0", "0", "1", "0", "0", "0", "0", "0"},
               {}),
            mk({"0", "1", "0", "0", "0", "0", "0", "1", "1", "0", "0", "0", "0", "1", "0",
                "0", "0", "0", "0", "1", "0", "0", "0", "0", "0"},
               {}),
            mk({"0", "1", "0", "1", "0", "0", "0", "1", "d", "0", "0", "0", "0", "1", "0",
                "0", "0", "0", "0", "1", "0", "0", "0", "0", "0"},
               {"d"}),
            mk({"0", "1", "1", "b", "0", "0", "0", "1", "d", "0", "0", "0", "0", "1", "0",
                "0", "0", "0", "0", "1", "0", "0", "0", "0", "0"},
               {"b", "d"}),
        };
    }
    throw std::invalid_argument("canonical family lists exist for n = 4 and n = 5 only");
}

bool matches_pattern(const CanonicalForm& form, const CanonicalFamilyPattern& pattern, double eps) {
    if (form.dim != pattern.dim) return false;
    for (int i = 0; i < form.dim; ++i)
        for (int j = 0; j < form.dim; ++j) {
            const std::string& cell = pattern.cells[static_cast<size_t>(i) * form.dim + j];
            const cplx v = form.at(i, j).to_complex();
            if (cell == "0") {
                if (std::abs(v) > eps) return false;
            } else if (cell == "1") {
                if (std::abs(v - 1.0) > eps) return false;
            }
        }
    return true;
}

}  // namespace evokit
