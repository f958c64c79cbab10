#include "evokit/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace evokit {

std::string field_name(Field f) {
    switch (f) {
        case Field::rational: return "rational";
        case Field::gaussian_rational: return "gaussian_rational";
        case Field::complex_float: return "complex_float";
    }
    return "?";
}

Field field_from_name(const std::string& name) {
    if (name == "rational") return Field::rational;
    if (name == "gaussian_rational") return Field::gaussian_rational;
    if (name == "complex_float") return Field::complex_float;
    throw std::invalid_argument("unknown field: \"" + name + "\"");
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::gaussian(mpq_class re, mpq_class im) {
    return Scalar(GaussianRational{std::move(re), std::move(im)});
}

Scalar Scalar::zero(Field f) {
    switch (f) {
        case Field::rational: return Scalar(mpq_class(0));
        case Field::gaussian_rational: return gaussian(0, 0);
        case Field::complex_float: return complex(0.0);
    }
    throw std::logic_error("bad field");
}

Scalar Scalar::one(Field f) {
    switch (f) {
        case Field::rational: return Scalar(mpq_class(1));
        case Field::gaussian_rational: return gaussian(1, 0);
        case Field::complex_float: return complex(1.0);
    }
    throw std::logic_error("bad field");
}

Field Scalar::field() const {
    if (std::holds_alternative<mpq_class>(v_)) return Field::rational;
    if (std::holds_alternative<GaussianRational>(v_)) return Field::gaussian_rational;
    return Field::complex_float;
}

void Scalar::require_same(const Scalar& o) const {
    if (v_.index() != o.v_.index())
        throw backend_mismatch("scalar backend mismatch: " + field_name(field()) + " vs " +
                               field_name(o.field()));
}

bool Scalar::is_zero() const {
    switch (field()) {
        case Field::rational: return sgn(std::get<mpq_class>(v_)) == 0;
        case Field::gaussian_rational: {
            const auto& g = std::get<GaussianRational>(v_);
            return sgn(g.re) == 0 && sgn(g.im) == 0;
        }
        case Field::complex_float: return std::get<std::complex<double>>(v_) == 0.0;
    }
    return false;
}

bool Scalar::is_zero(double eps) const {
    if (field() != Field::complex_float) return is_zero();
    return std::abs(std::get<std::complex<double>>(v_)) <= eps;
}

bool Scalar::approx_equal(const Scalar& o, double eps) const {
    require_same(o);
    if (field() != Field::complex_float) return *this == o;
    const auto x = std::get<std::complex<double>>(v_);
    const auto y = std::get<std::complex<double>>(o.v_);
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= eps * scale;
}

bool Scalar::operator==(const Scalar& o) const {
    require_same(o);
    return v_ == o.v_;
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same(o);
    switch (field()) {
        case Field::rational:
            return Scalar(mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_)));
        case Field::gaussian_rational: {
            const auto& a = std::get<GaussianRational>(v_);
            const auto& b = std::get<GaussianRational>(o.v_);
            return Scalar(GaussianRational{a.re + b.re, a.im + b.im});
        }
        case Field::complex_float:
            return Scalar(std::get<std::complex<double>>(v_) + std::get<std::complex<double>>(o.v_));
    }
    throw std::logic_error("bad field");
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    switch (field()) {
        case Field::rational: return Scalar(mpq_class(-std::get<mpq_class>(v_)));
        case Field::gaussian_rational: {
            const auto& a = std::get<GaussianRational>(v_);
            return Scalar(GaussianRational{-a.re, -a.im});
        }
        case Field::complex_float: return Scalar(-std::get<std::complex<double>>(v_));
    }
    throw std::logic_error("bad field");
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same(o);
    switch (field()) {
        case Field::rational:
            return Scalar(mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_)));
        case Field::gaussian_rational: {
            const auto& a = std::get<GaussianRational>(v_);
            const auto& b = std::get<GaussianRational>(o.v_);
            return Scalar(GaussianRational{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re});
        }
        case Field::complex_float:
            return Scalar(std::get<std::complex<double>>(v_) * std::get<std::complex<double>>(o.v_));
    }
    throw std::logic_error("bad field");
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same(o);
    if (o.is_zero()) throw std::domain_error("scalar division by zero");
    switch (field()) {
        case Field::rational:
            return Scalar(mpq_class(std::get<mpq_class>(v_) / std::get<mpq_class>(o.v_)));
        case Field::gaussian_rational: {
            const auto& a = std::get<GaussianRational>(v_);
            const auto& b = std::get<GaussianRational>(o.v_);
            mpq_class n = b.re * b.re + b.im * b.im;
            return Scalar(GaussianRational{(a.re * b.re + a.im * b.im) / n,
                                           (a.im * b.re - a.re * b.im) / n});
        }
        case Field::complex_float:
            return Scalar(std::get<std::complex<double>>(v_) / std::get<std::complex<double>>(o.v_));
    }
    throw std::logic_error("bad field");
}

bool Scalar::is_real() const {
    switch (field()) {
        case Field::rational: return true;
        case Field::gaussian_rational: return sgn(std::get<GaussianRational>(v_).im) == 0;
        case Field::complex_float: return std::get<std::complex<double>>(v_).imag() == 0.0;
    }
    return false;
}

const mpq_class& Scalar::as_rational() const {
    if (field() != Field::rational) throw backend_mismatch("not a rational scalar");
    return std::get<mpq_class>(v_);
}

const GaussianRational& Scalar::as_gaussian() const {
    if (field() != Field::gaussian_rational) throw backend_mismatch("not a gaussian_rational scalar");
    return std::get<GaussianRational>(v_);
}

std::complex<double> Scalar::as_complex_float() const {
    if (field() != Field::complex_float) throw backend_mismatch("not a complex_float scalar");
    return std::get<std::complex<double>>(v_);
}

std::complex<double> Scalar::to_complex() const {
    switch (field()) {
        case Field::rational: return {std::get<mpq_class>(v_).get_d(), 0.0};
        case Field::gaussian_rational: {
            const auto& g = std::get<GaussianRational>(v_);
            return {g.re.get_d(), g.im.get_d()};
        }
        case Field::complex_float: return std::get<std::complex<double>>(v_);
    }
    throw std::logic_error("bad field");
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string Scalar::str() const {
    switch (field()) {
        case Field::rational: return rational_str(std::get<mpq_class>(v_));
        case Field::gaussian_rational: {
            const auto& g = std::get<GaussianRational>(v_);
            if (sgn(g.im) == 0) return rational_str(g.re);
            std::string im = rational_str(g.im);
            if (im[0] != '-') im = "+" + im;
            return rational_str(g.re) + im + "i";
        }
        case Field::complex_float: {
            const auto z = std::get<std::complex<double>>(v_);
            char buf[80];
            std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", z.real(), z.imag());
            return buf;
        }
    }
    return "?";
}

namespace {

bool plain_integer(const std::string& s, size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

mpq_class parse_rational_literal(const std::string& text) {
    const auto fail = [&]() -> mpq_class {
        throw std::invalid_argument("bad rational literal \"" + text + "\"");
    };
    std::string body = text;
    if (!body.empty() && body[0] == '+') body.erase(0, 1);  // mpq_set_str has no '+'
    size_t pos = 0;
    if (pos < body.size() && body[pos] == '-') ++pos;
    const size_t slash = body.find('/', pos);
    if (slash == std::string::npos) {
        if (!plain_integer(body, pos, body.size())) return fail();
        return mpq_class(body);
    }
    if (!plain_integer(body, pos, slash) || !plain_integer(body, slash + 1, body.size())) return fail();
    mpz_class den(body.substr(slash + 1));
    if (sgn(den) == 0)
        throw std::invalid_argument("zero denominator in rational literal \"" + text + "\"");
    mpq_class q(body);
    q.canonicalize();
    return q;
}

GaussianRational parse_gaussian_literal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty gaussian_rational literal");
    if (text.back() != 'i') return GaussianRational{parse_rational_literal(text), 0};
    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not the leading one: "-3/2-1/2" -> ("-3/2", "-1/2").
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        if (body[i] == '+' || body[i] == '-') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw std::invalid_argument("bad gaussian_rational literal \"" + text +
                                    "\" (expected <rat>+<rat>i or <rat>-<rat>i)");
    GaussianRational g;
    g.re = parse_rational_literal(body.substr(0, split));
    std::string im = body.substr(split);
    if (im[0] == '+') im.erase(0, 1);
    g.im = parse_rational_literal(im);
    return g;
}

}  // namespace evokit
