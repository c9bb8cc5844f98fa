#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhwb/error.hpp"
#include "qhwb/field_roots.hpp"
#include "qhwb/number_field.hpp"
#include "qhwb/poly.hpp"
#include "qhwb/rational.hpp"

namespace qhwb {

using KPoly = Poly<FieldElem>;

/// Valuation of a Novikov scalar; nullopt encodes +infinity (the zero scalar).
using Valuation = std::optional<Rational>;

/// An element of K(s) with s = T^{1/N}: the subfield of the Novikov field
/// used for every exact computation here.
///
/// Values are kept canonical: numerator and denominator coprime, denominator
/// monic, and N minimal (no common factor of N and the occurring exponents).
/// Canonical values compare structurally.
class NovikovScalar {
public:
    NovikovScalar() : num_(), den_{FieldElem(1)} {}
    NovikovScalar(int v) : NovikovScalar(FieldElem(v)) {}
    NovikovScalar(long v) : NovikovScalar(FieldElem(v)) {}
    NovikovScalar(const Rational& v) : NovikovScalar(FieldElem(v)) {}
    NovikovScalar(FieldElem v) : num_{std::move(v)}, den_{FieldElem(1)} {}

    /// c * T^{exponent}.
    static NovikovScalar monomial(const FieldElem& c, const Rational& exponent)
    {
        if (c.is_zero())
            return {};
        const long n = exponent.get_den().get_si();
        const long p = exponent.get_num().get_si();
        NovikovScalar r;
        r.N_ = n;
        if (p >= 0) {
            r.num_ = KPoly::monomial(c, static_cast<std::size_t>(p));
            r.den_ = KPoly{FieldElem(1)};
        } else {
            r.num_ = KPoly{c};
            r.den_ = KPoly::monomial(FieldElem(1), static_cast<std::size_t>(-p));
        }
        r.normalize();
        return r;
    }

    /// T^{exponent}.
    static NovikovScalar T(const Rational& exponent = Rational(1)) { return monomial(FieldElem(1), exponent); }

    /// numerator(s) / denominator(s) with s = T^{1/N}; the result is canonical.
    static NovikovScalar from_parts(long N, KPoly numerator, KPoly denominator)
    {
        if (N < 1)
            raise(Errc::InvalidArgument, "ramification must be positive");
        if (denominator.is_zero())
            raise(Errc::DivisionByZero, "zero denominator");
        NovikovScalar r;
        r.N_ = N;
        r.num_ = std::move(numerator);
        r.den_ = std::move(denominator);
        r.normalize();
        return r;
    }

    long ramification() const noexcept { return N_; }
    const KPoly& numerator() const noexcept { return num_; }
    const KPoly& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    /// Coefficient field of the scalar (Q when every coefficient is rational).
    NumberField field() const
    {
        for (const auto* p : {&num_, &den_})
            for (const auto& c : p->coeffs())
                if (c.has_field())
                    return c.field();
        return NumberField();
    }

    /// True when the value lies in K (no T-dependence).
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    FieldElem constant_value() const { return num_.coeff(0); }

    bool is_monomial() const { return num_.term_count() == 1 && den_.term_count() == 1; }

    Valuation valuation() const
    {
        if (is_zero())
            return std::nullopt;
        Rational v(num_.order() - den_.order(), N_);
        v.canonicalize();
        return v;
    }

    /// Coefficient of T^{valuation} in the Laurent expansion.
    FieldElem leading_coefficient() const
    {
        if (is_zero())
            return FieldElem(0);
        return num_.coeffs()[static_cast<std::size_t>(num_.order())] /
               den_.coeffs()[static_cast<std::size_t>(den_.order())];
    }

    /// Coefficient of T^{exponent} in the Laurent expansion at T = 0.
    FieldElem coefficient(const Rational& exponent) const
    {
        if (is_zero())
            return FieldElem(0);
        Rational scaled = exponent * N_;
        scaled.canonicalize();
        if (scaled.get_den() != 1)
            return FieldElem(0);
        const long j = scaled.get_num().get_si();
        const long a = num_.order();
        const long b = den_.order();
        const long k = j - a + b;
        if (k < 0)
            return FieldElem(0);
        KPoly n = num_.unshift(static_cast<std::size_t>(a));
        KPoly d = den_.unshift(static_cast<std::size_t>(b));
        std::vector<FieldElem> series;
        const FieldElem inv0 = FieldElem(1) / d.coeff(0);
        for (long m = 0; m <= k; ++m) {
            FieldElem acc = n.coeff(static_cast<std::size_t>(m));
            for (long i = 1; i <= m; ++i)
                acc -= d.coeff(static_cast<std::size_t>(i)) * series[static_cast<std::size_t>(m - i)];
            series.push_back(acc * inv0);
        }
        return series.back();
    }

    NovikovScalar operator-() const
    {
        NovikovScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        const long L = lcm(a.N_, b.N_);
        KPoly an = a.num_.inflate(static_cast<std::size_t>(L / a.N_));
        KPoly ad = a.den_.inflate(static_cast<std::size_t>(L / a.N_));
        KPoly bn = b.num_.inflate(static_cast<std::size_t>(L / b.N_));
        KPoly bd = b.den_.inflate(static_cast<std::size_t>(L / b.N_));
        if (ad == bd)
            return from_parts(L, an + bn, ad);
        return from_parts(L, an * bd + bn * ad, ad * bd);
    }
    friend NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b) { return a + (-b); }

    friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.is_constant() && a.den_ == KPoly{FieldElem(1)}) {
            NovikovScalar r = b;
            r.num_ = a.num_.coeff(0) * r.num_;
            return r;
        }
        if (b.is_constant() && b.den_ == KPoly{FieldElem(1)})
            return b * a;
        const long L = lcm(a.N_, b.N_);
        const auto ka = static_cast<std::size_t>(L / a.N_);
        const auto kb = static_cast<std::size_t>(L / b.N_);
        return from_parts(L, a.num_.inflate(ka) * b.num_.inflate(kb), a.den_.inflate(ka) * b.den_.inflate(kb));
    }

    NovikovScalar inverse() const
    {
        if (is_zero())
            raise(Errc::DivisionByZero, "division by the zero Novikov scalar");
        return from_parts(N_, den_, num_);
    }

    friend NovikovScalar operator/(const NovikovScalar& a, const NovikovScalar& b) { return a * b.inverse(); }

    NovikovScalar& operator+=(const NovikovScalar& o) { return *this = *this + o; }
    NovikovScalar& operator-=(const NovikovScalar& o) { return *this = *this - o; }
    NovikovScalar& operator*=(const NovikovScalar& o) { return *this = *this * o; }

    friend bool operator==(const NovikovScalar& a, const NovikovScalar& b)
    {
        return a.N_ == b.N_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void normalize()
    {
        if (num_.is_zero()) {
            N_ = 1;
            den_ = KPoly{FieldElem(1)};
            return;
        }
        if (den_.degree() > 0) {
            KPoly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        if (!den_.is_monic()) {
            FieldElem inv = FieldElem(1) / den_.leading();
            num_ = inv * num_;
            den_ = inv * den_;
        }
        long e = N_;
        for (const auto* p : {&num_, &den_})
            for (std::size_t i = 0; i < p->size(); ++i)
                if (!p->coeffs()[i].is_zero())
                    e = gcd(e, static_cast<long>(i));
        if (e > 1) {
            num_ = num_.deflate(static_cast<std::size_t>(e));
            den_ = den_.deflate(static_cast<std::size_t>(e));
            N_ /= e;
        }
    }

    long N_ = 1;
    KPoly num_;
    KPoly den_;
};

inline bool is_zero(const NovikovScalar& x) { return x.is_zero(); }

/// Square root of a monomial u * T^{v} on the canonical branch, searching for
/// the root of u in `field` (or the scalar's own field when it has one). The
/// result may live at twice the ramification of the input.
inline NovikovScalar sqrt(const NovikovScalar& x, const NumberField& field)
{
    if (x.is_zero())
        return {};
    if (!x.is_monomial())
        raise(Errc::NotMonomial, "square root is only defined for monomials u*T^{p/q}");
    const FieldElem u = x.leading_coefficient();
    const NumberField own = x.field();
    auto root = field_sqrt(u, own.is_rationals() ? field : own);
    if (!root)
        raise(Errc::RequiresFieldExtension, "coefficient is not a square in K", {}, to_string(u));
    Rational half = *x.valuation() / 2;
    half.canonicalize();
    return NovikovScalar::monomial(*root, half);
}

inline NovikovScalar sqrt(const NovikovScalar& x) { return sqrt(x, x.field()); }

namespace detail {

inline std::string render_exponent(const Rational& e)
{
    if (e == 1)
        return "T";
    return "T^{" + e.get_str() + "}";
}

inline std::string render_term(const FieldElem& c, const Rational& exponent)
{
    if (exponent == 0)
        return to_string(c);
    const std::string mono = render_exponent(exponent);
    if (c.is_rational()) {
        const Rational& r = c.rational_part();
        if (r == 1)
            return mono;
        if (r == -1)
            return "-" + mono;
        return r.get_str() + "*" + mono;
    }
    return "(" + to_string(c) + ")*" + mono;
}

/// Renders p(s) * s^{-shift} with s = T^{1/N} as a sum of T-monomials in
/// ascending exponent order.
inline std::string render_laurent(const KPoly& p, long N, long shift, std::size_t* terms = nullptr)
{
    std::string out;
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const FieldElem& c = p.coeffs()[i];
        if (c.is_zero())
            continue;
        Rational e(static_cast<long>(i) - shift, N);
        e.canonicalize();
        std::string t = render_term(c, e);
        count += (e == 0 && !c.is_rational()) ? 2 : 1;
        if (out.empty())
            out = t;
        else if (t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    if (terms)
        *terms = count;
    return out.empty() ? "0" : out;
}

} // namespace detail

/// Text form of a scalar, e.g. `T^{1/2} + T`, `-1/4*T^{-2}`, `(1 + t)*T`,
/// `1/(1 - T)`. The DSL scalar parser reads it back to the same value.
inline std::string to_string(const NovikovScalar& x)
{
    const KPoly& den0 = x.denominator();
    if (den0.term_count() == 1)
        return detail::render_laurent(x.numerator(), x.ramification(), den0.order());
    // flip signs so the lowest denominator term reads positively: 1/(1 - T)
    const bool flip = den0.coeffs()[static_cast<std::size_t>(den0.order())].leading_sign() < 0;
    const KPoly den = flip ? -den0 : den0;
    const KPoly numer = flip ? -x.numerator() : x.numerator();
    std::size_t nterms = 0;
    std::string num = detail::render_laurent(numer, x.ramification(), 0, &nterms);
    if (nterms > 1 || num[0] == '-')
        num = "(" + num + ")";
    return num + "/(" + detail::render_laurent(den, x.ramification(), 0) + ")";
}

} // namespace qhwb
