#include "evokit/dibaric.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "evokit/rng.hpp"

namespace evokit {

std::string dibaric_decision_name(DibaricDecision d) {
    switch (d) {
        case DibaricDecision::dibaric: return "dibaric";
        case DibaricDecision::not_dibaric: return "not_dibaric";
        case DibaricDecision::undecided: return "undecided";
    }
    return "?";
}

std::string dibaric_rule_name(DibaricRule r) {
    switch (r) {
        case DibaricRule::two_d_criterion: return "2d_criterion";
        case DibaricRule::det_obstruction: return "det_obstruction";
        case DibaricRule::nilpotent_obstruction: return "nilpotent_obstruction";
        case DibaricRule::solvable_obstruction: return "solvable_obstruction";
        case DibaricRule::numeric_search: return "numeric_search";
        case DibaricRule::none: return "none";
    }
    return "?";
}

std::pair<Scalar, Scalar> SexDiffAlgebra::multiply(const std::pair<Scalar, Scalar>& x,
                                                   const std::pair<Scalar, Scalar>& y) {
    const Field f = x.first.field();
    const Scalar two = Scalar::one(f) + Scalar::one(f);
    const Scalar c = (x.first * y.second + x.second * y.first) / two;
    return {c, c};
}

EvolutionAlgebra SexDiffAlgebra::as_evolution_algebra(Field f) {
    // Basis u = m+w, v = m-w: u^2 = u, v^2 = -u, uv = 0.
    const Scalar one = Scalar::one(f), zero = Scalar::zero(f);
    return EvolutionAlgebra(2, {one, zero, -one, zero}, "sex_differentiation");
}

namespace {

void require_real(const EvolutionAlgebra& alg) {
    if (alg.field() == Field::gaussian_rational)
        throw std::invalid_argument("dibaricity is defined over real scalars");
    for (const auto& s : alg.entries())
        if (!s.is_real()) throw std::invalid_argument("dibaricity is defined over real scalars");
}

Scalar dot(const Vector& a, const Vector& b) {
    Scalar acc = Scalar::zero(a.front().field());
    for (size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
    return acc;
}

EvolutionAlgebra float_copy(const EvolutionAlgebra& alg) {
    if (alg.field() == Field::complex_float) return alg;
    std::vector<Scalar> out;
    out.reserve(alg.entries().size());
    for (const auto& s : alg.entries()) out.push_back(s.promoted_to_float());
    return EvolutionAlgebra(alg.dim(), std::move(out));
}

}  // namespace

bool is_bq_homomorphism(const EvolutionAlgebra& alg, const BqPair& pair, double eps) {
    const int n = alg.dim();
    if (static_cast<int>(pair.f.size()) != n || static_cast<int>(pair.g.size()) != n)
        throw dimension_mismatch("bq pair length differs from algebra dimension");
    const Field fl = alg.field();
    const Scalar two = Scalar::one(fl) + Scalar::one(fl);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Scalar rhs = (pair.f[i] * pair.g[j] + pair.f[j] * pair.g[i]) / two;
            Scalar lf = Scalar::zero(fl), lg = Scalar::zero(fl);
            if (i == j) {
                const Vector sq = alg.row(i);
                lf = dot(pair.f, sq);
                lg = dot(pair.g, sq);
            }
            if (!lf.approx_equal(rhs, eps) || !lg.approx_equal(rhs, eps)) return false;
        }
    }
    return true;
}

Scalar structural_determinant(const EvolutionAlgebra& alg) {
    const int n = alg.dim();
    const Field f = alg.field();
    std::vector<Scalar> m = alg.entries();
    const auto at = [&](int i, int j) -> Scalar& { return m[static_cast<size_t>(i) * n + j]; };
    Scalar det = Scalar::one(f);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Scalar::zero(f);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(at(col, j), at(piv, j));
            det = -det;
        }
        det = det * at(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (at(r, col).is_zero()) continue;
            const Scalar fac = at(r, col) / at(col, col);
            for (int j = col; j < n; ++j) at(r, j) = at(r, j) - fac * at(col, j);
        }
    }
    return det;
}

namespace {

BqPair closed_form_2d_witness(double a, double b, double ac, double bd) {
    // Rule 1 (b = d = 0, ac < 0): alpha = beta = a, gamma = -delta = sqrt(-ac).
    // Rule 2 (bd < 0): alpha = a + r, beta = a - r with r = sqrt(-bd).
    BqPair p;
    if (b == 0.0) {
        const double r = std::sqrt(-ac);
        p.f = {Scalar::complex(a), Scalar::complex(r)};
        p.g = {Scalar::complex(a), Scalar::complex(-r)};
    } else {
        const double r = std::sqrt(-bd);
        const double alpha = a + r, beta = a - r;
        p.f = {Scalar::complex(alpha), Scalar::complex(-alpha * r / b)};
        p.g = {Scalar::complex(beta), Scalar::complex(beta * r / b)};
    }
    return p;
}

}  // namespace

DibaricityVerdict dibaric_2d(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d,
                             double eps) {
    for (const Scalar* s : {&a, &b, &c, &d}) {
        if (s->field() == Field::gaussian_rational || !s->is_real())
            throw std::invalid_argument("dibaric_2d expects real scalars");
        if (s->field() != a.field()) throw backend_mismatch("dibaric_2d: mixed scalar backends");
    }
    DibaricityVerdict v;
    v.rule = DibaricRule::two_d_criterion;
    v.tolerance_dependent = (a.field() == Field::complex_float);

    bool dib = false;
    bool via_rule1 = false;
    if (a.field() == Field::rational) {
        const mpq_class qa = a.as_rational(), qb = b.as_rational(), qc = c.as_rational(),
                        qd = d.as_rational();
        via_rule1 = (sgn(qb) == 0 && sgn(qd) == 0 && sgn(qa * qc) < 0);
        const bool rule2 = sgn(qb) != 0 && qa * qd == qb * qc && sgn(qb * qd) < 0 &&
                           sgn(qa * qa + qb * qd) != 0;
        dib = via_rule1 || rule2;
    } else {
        const double fa = a.to_complex().real(), fb = b.to_complex().real(),
                     fc = c.to_complex().real(), fd = d.to_complex().real();
        via_rule1 = (std::abs(fb) <= eps && std::abs(fd) <= eps && fa * fc < -eps);
        const bool rule2 = std::abs(fb) > eps && std::abs(fa * fd - fb * fc) <= eps &&
                           fb * fd < -eps && std::abs(fa * fa + fb * fd) > eps;
        dib = via_rule1 || rule2;
    }

    if (!dib) {
        v.decision = DibaricDecision::not_dibaric;
        return v;
    }
    v.decision = DibaricDecision::dibaric;
    const double fa = a.to_complex().real(), fb = b.to_complex().real(),
                 fc = c.to_complex().real(), fd = d.to_complex().real();
    BqPair w = closed_form_2d_witness(fa, via_rule1 ? 0.0 : fb, fa * fc, fb * fd);
    const EvolutionAlgebra af(2, {Scalar::complex(fa), Scalar::complex(fb), Scalar::complex(fc),
                                  Scalar::complex(fd)});
    if (is_bq_homomorphism(af, w, std::max(eps, 1e-9)))
        v.witness = std::move(w);
    return v;
}

bool dibaric_2d_discriminant_test(const Scalar& a, const Scalar& b, const Scalar& c,
                                  const Scalar& d) {
    if (a.field() == Field::rational) {
        const mpq_class qa = a.as_rational(), qb = b.as_rational(), qc = c.as_rational(),
                        qd = d.as_rational();
        if (sgn(qb) == 0 && sgn(qd) == 0 && sgn(qa * qc) < 0) return true;
        const mpq_class D = (8 * qa - 1) * (8 * qa - 1) - 32 * (qb * qd + qa * qa);
        const mpq_class E = 4 * qa * qa + 4 * qb * qd - qa;
        // B^2 + C^2 = 0 iff E = 0 and a*sqrt(D) = 0.
        const bool bc_zero = sgn(E) == 0 && (sgn(qa) == 0 || sgn(D) == 0);
        return sgn(qb) != 0 && qa * qd == qb * qc && sgn(D) >= 0 && !bc_zero;
    }
    const double fa = a.to_complex().real(), fb = b.to_complex().real(),
                 fc = c.to_complex().real(), fd = d.to_complex().real();
    if (fb == 0.0 && fd == 0.0 && fa * fc < 0.0) return true;
    const double D = (8 * fa - 1) * (8 * fa - 1) - 32 * (fb * fd + fa * fa);
    if (fb == 0.0 || fa * fd != fb * fc || D < 0.0) return false;
    const double B = 4 * fa * fa + 4 * fb * fd - fa + fa * std::sqrt(D);
    const double C = 4 * fa * fa + 4 * fb * fd - fa - fa * std::sqrt(D);
    return B * B + C * C != 0.0;
}

DibaricityVerdict not_dibaric_obstructions(const EvolutionAlgebra& alg, double eps) {
    require_real(alg);
    DibaricityVerdict v;
    v.tolerance_dependent = (alg.field() == Field::complex_float);

    const Scalar det = structural_determinant(alg);
    if (!det.is_zero(eps)) v.fired.push_back(DibaricRule::det_obstruction);
    const auto principal = principal_powers(alg, eps);
    if (principal.index) v.fired.push_back(DibaricRule::nilpotent_obstruction);
    if (derived_powers(alg, eps).index) v.fired.push_back(DibaricRule::solvable_obstruction);

    if (!v.fired.empty()) {
        v.decision = DibaricDecision::not_dibaric;
        v.rule = v.fired.front();
    }
    return v;
}

namespace {

struct BqSystem {
    int n;
    std::vector<double> R;  // structural matrix, row-major

    // Core residuals: f(e_i^2)-f_i g_i, g(e_i^2)-f_i g_i, then the
    // annihilation rows (f_i g_j + f_j g_i)/2 for i < j.
    int core_count() const { return 2 * n + n * (n - 1) / 2; }

    void residuals(const std::vector<double>& v, double w, std::vector<double>& r) const {
        const double* f = v.data();
        const double* g = v.data() + n;
        int idx = 0;
        for (int i = 0; i < n; ++i) {
            double rf = -f[i] * g[i], rg = -f[i] * g[i];
            for (int k = 0; k < n; ++k) {
                rf += R[static_cast<size_t>(i) * n + k] * f[k];
                rg += R[static_cast<size_t>(i) * n + k] * g[k];
            }
            r[idx++] = rf;
            r[idx++] = rg;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) r[idx++] = 0.5 * (f[i] * g[j] + f[j] * g[i]);
        double ff = 0, gg = 0, fg = 0;
        for (int i = 0; i < n; ++i) {
            ff += f[i] * f[i];
            gg += g[i] * g[i];
            fg += f[i] * g[i];
        }
        r[idx++] = w * (ff - 1.0);
        r[idx++] = w * (gg - 1.0);
        r[idx++] = w * fg;
    }

    void jacobian(const std::vector<double>& v, double w, std::vector<double>& J,
                  int stride) const {
        const double* f = v.data();
        const double* g = v.data() + n;
        std::fill(J.begin(), J.end(), 0.0);
        int row = 0;
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) J[static_cast<size_t>(row) * stride + k] = R[static_cast<size_t>(i) * n + k];
            J[static_cast<size_t>(row) * stride + i] -= g[i];
            J[static_cast<size_t>(row) * stride + n + i] -= f[i];
            ++row;
            for (int k = 0; k < n; ++k) J[static_cast<size_t>(row) * stride + n + k] = R[static_cast<size_t>(i) * n + k];
            J[static_cast<size_t>(row) * stride + i] -= g[i];
            J[static_cast<size_t>(row) * stride + n + i] -= f[i];
            ++row;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                J[static_cast<size_t>(row) * stride + i] += 0.5 * g[j];
                J[static_cast<size_t>(row) * stride + j] += 0.5 * g[i];
                J[static_cast<size_t>(row) * stride + n + i] += 0.5 * f[j];
                J[static_cast<size_t>(row) * stride + n + j] += 0.5 * f[i];
                ++row;
            }
        for (int k = 0; k < n; ++k) {
            J[static_cast<size_t>(row) * stride + k] = 2.0 * w * f[k];
            J[static_cast<size_t>(row + 1) * stride + n + k] = 2.0 * w * g[k];
            J[static_cast<size_t>(row + 2) * stride + k] = w * g[k];
            J[static_cast<size_t>(row + 2) * stride + n + k] = w * f[k];
        }
    }
};

bool solve_spd(std::vector<double>& A, std::vector<double>& b, int n) {
    // Gaussian elimination with partial pivoting on the normal equations.
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[static_cast<size_t>(r) * n + col]) >
                std::abs(A[static_cast<size_t>(piv) * n + col]))
                piv = r;
        if (std::abs(A[static_cast<size_t>(piv) * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(A[static_cast<size_t>(col) * n + j], A[static_cast<size_t>(piv) * n + j]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double fmul = A[static_cast<size_t>(r) * n + col] / A[static_cast<size_t>(col) * n + col];
            if (fmul == 0.0) continue;
            for (int j = col; j < n; ++j)
                A[static_cast<size_t>(r) * n + j] -= fmul * A[static_cast<size_t>(col) * n + j];
            b[r] -= fmul * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int j = r + 1; j < n; ++j) acc -= A[static_cast<size_t>(r) * n + j] * b[j];
        b[r] = acc / A[static_cast<size_t>(r) * n + r];
    }
    return true;
}

double cost_of(const std::vector<double>& r) {
    double c = 0;
    for (double x : r) c += x * x;
    return 0.5 * c;
}

std::optional<BqPair> run_one_start(const BqSystem& sys, uint64_t seed, double eps) {
    const int n = sys.n;
    const int nv = 2 * n;
    const int nr = sys.core_count() + 3;
    std::vector<double> v(nv);
    uint64_t state = seed;
    for (int i = 0; i < nv; ++i) {
        state = splitmix64(state);
        v[i] = 4.0 * unit_double(state) - 2.0;
    }

    std::vector<double> r(nr), rtry(nr), J(static_cast<size_t>(nr) * nv), A(static_cast<size_t>(nv) * nv),
        rhs(nv), vtry(nv);
    double lm = 1e-3;
    for (int iter = 0; iter < 140; ++iter) {
        const double w = iter < 40 ? 0.5 : 0.0;
        sys.residuals(v, w, r);
        const double cost = cost_of(r);
        sys.jacobian(v, w, J, nv);
        // Normal equations J^T J + lm I, J^T r.
        for (int a = 0; a < nv; ++a) {
            for (int b = a; b < nv; ++b) {
                double s = 0;
                for (int k = 0; k < nr; ++k)
                    s += J[static_cast<size_t>(k) * nv + a] * J[static_cast<size_t>(k) * nv + b];
                A[static_cast<size_t>(a) * nv + b] = s;
                A[static_cast<size_t>(b) * nv + a] = s;
            }
            double s = 0;
            for (int k = 0; k < nr; ++k) s += J[static_cast<size_t>(k) * nv + a] * r[k];
            rhs[a] = -s;
        }
        for (int a = 0; a < nv; ++a) A[static_cast<size_t>(a) * nv + a] += lm;
        std::vector<double> Acopy = A, step = rhs;
        if (!solve_spd(Acopy, step, nv)) break;
        for (int a = 0; a < nv; ++a) vtry[a] = v[a] + step[a];
        sys.residuals(vtry, w, rtry);
        if (cost_of(rtry) < cost) {
            v = vtry;
            lm = std::max(lm * 0.4, 1e-12);
            double step2 = 0;
            for (int a = 0; a < nv; ++a) step2 += step[a] * step[a];
            if (step2 < 1e-28 && w == 0.0) break;
        } else {
            lm *= 3.0;
            if (lm > 1e10) break;
        }
        if (w == 0.0) {
            double mx = 0;
            for (int k = 0; k < sys.core_count(); ++k) mx = std::max(mx, std::abs(r[k]));
            if (mx < eps * 0.01) break;
        }
    }

    sys.residuals(v, 0.0, r);
    double mx = 0;
    for (int k = 0; k < sys.core_count(); ++k) mx = std::max(mx, std::abs(r[k]));
    if (mx >= eps) return std::nullopt;

    double nf = 0, ng = 0, fg = 0;
    for (int i = 0; i < n; ++i) {
        nf += v[i] * v[i];
        ng += v[n + i] * v[n + i];
        fg += v[i] * v[n + i];
    }
    // Stay clear of the exact degenerate solutions f = 0 / g = 0: pairs
    // drifting toward them have quadratically small residuals without being
    // witnesses for anything.
    if (nf < 1e-8 || ng < 1e-8) return std::nullopt;
    // Require f, g independent: a dependent pair encodes a character, not a
    // surjection onto the sex differentiation algebra.
    if (std::abs(fg) / std::sqrt(nf * ng) > 1.0 - 1e-6) return std::nullopt;

    BqPair p;
    for (int i = 0; i < n; ++i) p.f.push_back(Scalar::complex(v[i]));
    for (int i = 0; i < n; ++i) p.g.push_back(Scalar::complex(v[n + i]));
    return p;
}

}  // namespace

std::optional<BqPair> numeric_bq_search(const EvolutionAlgebra& alg, const BqSearchOptions& opts) {
    require_real(alg);
    const int n = alg.dim();
    BqSystem sys;
    sys.n = n;
    sys.R.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sys.R[static_cast<size_t>(i) * n + j] = alg.at(i, j).to_complex().real();

    const EvolutionAlgebra fa = float_copy(alg);
    const auto verified = [&](const std::optional<BqPair>& p) {
        return p && is_bq_homomorphism(fa, *p, opts.eps);
    };

    if (opts.workers <= 1) {
        for (int t = 0; t < opts.attempts; ++t) {
            auto p = run_one_start(sys, splitmix64(opts.seed + static_cast<uint64_t>(t)), opts.eps);
            if (verified(p)) return p;
        }
        return std::nullopt;
    }

    // Parallel starts; the lowest successful start index wins so the result
    // does not depend on the worker count.
    std::atomic<int> best_t{opts.attempts};
    std::vector<std::optional<BqPair>> found(static_cast<size_t>(opts.attempts));
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int t = next.fetch_add(1);
            if (t >= opts.attempts || t > best_t.load()) break;
            auto p = run_one_start(sys, splitmix64(opts.seed + static_cast<uint64_t>(t)), opts.eps);
            if (verified(p)) {
                found[static_cast<size_t>(t)] = std::move(p);
                int cur = best_t.load();
                while (t < cur && !best_t.compare_exchange_weak(cur, t)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < opts.workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (int t = 0; t < opts.attempts; ++t)
        if (found[static_cast<size_t>(t)]) return found[static_cast<size_t>(t)];
    return std::nullopt;
}

bool vn_membership(const EvolutionAlgebra& alg, const Vector& x, const BqPair& pair, int n,
                   bool check_direct, double eps) {
    if (n < 3) throw std::invalid_argument("vn_membership requires n >= 3");
    if (!is_bq_homomorphism(alg, pair, eps))
        throw std::invalid_argument("vn_membership: pair is not a bq-homomorphism");
    const Scalar fx = dot(pair.f, x), gx = dot(pair.g, x);
    const bool member = (fx * gx * (fx + gx)).is_zero(eps);

    if (check_direct) {
        // phi(x^n) computed two ways: through the power in the algebra and
        // through the power of phi(x) in the sex differentiation algebra.
        const Vector y = plus_power(alg, x, n);
        const Scalar fy = dot(pair.f, y), gy = dot(pair.g, y);
        std::pair<Scalar, Scalar> p{fx, gx};
        const std::pair<Scalar, Scalar> phix{fx, gx};
        for (int k = 2; k <= n; ++k) p = SexDiffAlgebra::multiply(p, phix);
        if (!p.first.approx_equal(fy, eps) || !p.second.approx_equal(gy, eps))
            throw std::logic_error("vn_membership: direct evaluation disagrees with phi(x^n)");
        const bool direct_zero = fy.is_zero(eps) && gy.is_zero(eps);
        if (direct_zero != member)
            throw std::logic_error("vn_membership: closed form disagrees with direct evaluation");
    }
    return member;
}

DibaricityVerdict decide_dibaric(const EvolutionAlgebra& alg, const BqSearchOptions& opts) {
    require_real(alg);
    DibaricityVerdict v = not_dibaric_obstructions(alg, opts.eps);
    if (v.decision == DibaricDecision::not_dibaric) return v;

    if (alg.dim() == 2) {
        DibaricityVerdict d2 =
            dibaric_2d(alg.at(0, 0), alg.at(0, 1), alg.at(1, 0), alg.at(1, 1), opts.eps);
        d2.fired = v.fired;
        return d2;
    }

    auto w = numeric_bq_search(alg, opts);
    if (w) {
        v.decision = DibaricDecision::dibaric;
        v.rule = DibaricRule::numeric_search;
        v.witness = std::move(w);
        v.tolerance_dependent = true;
    } else {
        v.decision = DibaricDecision::undecided;
        v.rule = DibaricRule::none;
    }
    return v;
}

}  // namespace evokit
