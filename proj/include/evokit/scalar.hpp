#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace evokit {

/// Thrown when values from different scalar backends meet in one operation.
struct backend_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct dimension_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Field {
    rational,
    gaussian_rational,
    complex_float,
};

std::string field_name(Field f);
Field field_from_name(const std::string& name);

/// Exact Gaussian rational a + bi with both parts in lowest terms.
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
};

// Field element used throughout: one of three backends. Arithmetic never
// mixes backends; rationals stay canonicalized (lowest terms, positive
// denominator), which mpq_class maintains for us.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}
    explicit Scalar(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
    explicit Scalar(GaussianRational g) : v_(std::move(g)) {
        auto& gg = std::get<GaussianRational>(v_);
        gg.re.canonicalize();
        gg.im.canonicalize();
    }
    explicit Scalar(std::complex<double> z) : v_(z) {}

    static Scalar rational(long num, long den = 1);
    static Scalar gaussian(mpq_class re, mpq_class im);
    static Scalar complex(double re, double im = 0.0) { return Scalar(std::complex<double>(re, im)); }
    static Scalar zero(Field f);
    static Scalar one(Field f);

    Field field() const;

    bool is_zero() const;
    bool is_zero(double eps) const;
    /// Exact equality on exact backends; |x-y| <= eps*max(1,|x|,|y|) on floats.
    bool approx_equal(const Scalar& o, double eps) const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws on zero divisor
    Scalar operator-() const;

    /// True when the value lies in the real line of its backend.
    bool is_real() const;

    const mpq_class& as_rational() const;
    const GaussianRational& as_gaussian() const;
    std::complex<double> as_complex_float() const;

    /// Numeric view in any backend (exact values rounded to double).
    std::complex<double> to_complex() const;

    /// Convert to the complex_float backend (used by canonicalization).
    Scalar promoted_to_float() const { return Scalar(to_complex()); }

    /// Literal form: "p/q" or "p" for rationals, "a+bi"/"a-bi" for Gaussian
    /// rationals, "(re,im)" for floats.
    std::string str() const;

private:
    std::variant<mpq_class, GaussianRational, std::complex<double>> v_;

    void require_same(const Scalar& o) const;
};

/// Parses "-3/2", "7", "+4/9". Rejects zero denominators, naming the literal.
mpq_class parse_rational_literal(const std::string& text);

/// Parses "<rat>", "<rat>+<rat>i" or "<rat>-<rat>i".
GaussianRational parse_gaussian_literal(const std::string& text);

std::string rational_str(const mpq_class& q);

}  // namespace evokit
