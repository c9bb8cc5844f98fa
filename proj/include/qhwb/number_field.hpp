#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qhwb/error.hpp"
#include "qhwb/poly.hpp"
#include "qhwb/rational.hpp"

namespace qhwb {

using RatPoly = Poly<Rational>;

/// Largest number-field degree accepted by NumberField::make.
inline constexpr int kMaxFieldDegree = 8;

namespace detail {
struct FieldData {
    RatPoly modulus;
};
} // namespace detail

/// K = Q[t]/(m(t)). The default-constructed field is Q itself.
///
/// Irreducibility of m is the caller's claim; it is only checked lazily,
/// when an inversion runs into a nontrivial common factor.
class NumberField {
public:
    NumberField() = default;

    static NumberField make(RatPoly modulus)
    {
        if (modulus.degree() < 1)
            raise(Errc::InvalidArgument, "number field modulus must have degree >= 1");
        if (!modulus.is_monic())
            raise(Errc::InvalidArgument, "number field modulus must be monic");
        if (modulus.degree() > kMaxFieldDegree)
            raise(Errc::LimitExceeded, "number field degree exceeds " + std::to_string(kMaxFieldDegree));
        if (gcd(modulus, modulus.derivative()).degree() > 0)
            raise(Errc::NotSquarefree, "modulus shares a factor with its derivative");
        NumberField f;
        f.d_ = std::make_shared<const detail::FieldData>(detail::FieldData{std::move(modulus)});
        return f;
    }

    bool is_rationals() const noexcept { return d_ == nullptr; }
    int degree() const noexcept { return d_ ? d_->modulus.degree() : 1; }
    /// The modulus; Q is presented as Q[t]/(t).
    const RatPoly& modulus() const
    {
        static const RatPoly rationals_modulus{Rational(0), Rational(1)};
        return d_ ? d_->modulus : rationals_modulus;
    }

    friend bool operator==(const NumberField& a, const NumberField& b)
    {
        if (a.d_ == b.d_)
            return true;
        if (!a.d_ || !b.d_)
            return false;
        return a.d_->modulus == b.d_->modulus;
    }

    explicit NumberField(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

private:
    friend class FieldElem;
    std::shared_ptr<const detail::FieldData> d_;
};

/// Element of a NumberField, stored as coordinates in the basis
/// 1, t, ..., t^{d-1}. Rational constants carry no field and combine with
/// elements of any field.
class FieldElem {
public:
    FieldElem() : c_{Rational(0)} {}
    FieldElem(int v) : c_{Rational(v)} {}
    FieldElem(long v) : c_{Rational(v)} {}
    FieldElem(Rational v) : c_{std::move(v)} {}

    FieldElem(const NumberField& field, const RatPoly& value) : f_(field.d_)
    {
        RatPoly r = f_ ? value % f_->modulus : value;
        if (!f_ && r.degree() > 0)
            raise(Errc::InvalidArgument, "generator t used over the rationals");
        c_.assign(static_cast<std::size_t>(field.degree()), Rational(0));
        for (std::size_t i = 0; i < r.size(); ++i)
            c_[i] = r.coeffs()[i];
    }

    FieldElem(const NumberField& field, std::vector<Rational> coords)
        : FieldElem(field, RatPoly(std::move(coords)))
    {
    }

    /// The class of t in K.
    static FieldElem generator(const NumberField& field) { return FieldElem(field, RatPoly::x()); }

    NumberField field() const { return NumberField(f_); }
    bool has_field() const noexcept { return f_ != nullptr; }
    const std::vector<Rational>& coords() const noexcept { return c_; }
    RatPoly as_poly() const { return RatPoly(c_); }

    bool is_zero() const
    {
        for (const auto& v : c_)
            if (sgn(v) != 0)
                return false;
        return true;
    }

    /// True when the element lies in Q (all t-coordinates vanish).
    bool is_rational() const
    {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0)
                return false;
        return true;
    }
    const Rational& rational_part() const { return c_[0]; }

    FieldElem operator-() const
    {
        FieldElem r = *this;
        for (auto& v : r.c_)
            v = -v;
        return r;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b)
    {
        auto f = common(a, b);
        FieldElem r = a.lifted(f);
        const auto& bc = b.lifted_coords(f);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] += bc[i];
        return r;
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b)
    {
        auto f = common(a, b);
        if (a.is_rational() || b.is_rational()) {
            const FieldElem& s = a.is_rational() ? a : b;
            FieldElem r = (a.is_rational() ? b : a).lifted(f);
            const Rational k = s.c_[0];
            for (auto& v : r.c_)
                v *= k;
            return r;
        }
        return FieldElem(NumberField(f), a.as_poly() * b.as_poly());
    }

    FieldElem inverse() const
    {
        if (is_zero())
            raise(Errc::DivisionByZero, "inverse of zero in number field");
        if (is_rational()) {
            FieldElem r = *this;
            r.c_.assign(c_.size(), Rational(0));
            r.c_[0] = 1 / c_[0];
            return r;
        }
        auto eg = ext_gcd(as_poly(), f_->modulus);
        if (eg.g.degree() != 0)
            raise(Errc::NotInvertible, "element shares a factor with the modulus (modulus reducible)");
        return FieldElem(field(), eg.u);
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    friend bool operator==(const FieldElem& a, const FieldElem& b)
    {
        if (a.f_ && b.f_ && !(NumberField(a.f_) == NumberField(b.f_)))
            return false;
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const Rational& x = i < a.c_.size() ? a.c_[i] : zero_rational();
            const Rational& y = i < b.c_.size() ? b.c_[i] : zero_rational();
            if (x != y)
                return false;
        }
        return true;
    }

    /// Lexicographic order on coordinates (1, t, t^2, ...).
    friend std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b)
    {
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const Rational& x = i < a.c_.size() ? a.c_[i] : zero_rational();
            const Rational& y = i < b.c_.size() ? b.c_[i] : zero_rational();
            int c = cmp(x, y);
            if (c != 0)
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    /// Sign of the first nonzero coordinate (0 for zero).
    int leading_sign() const
    {
        for (const auto& v : c_)
            if (sgn(v) != 0)
                return sgn(v);
        return 0;
    }

private:
    using Ptr = std::shared_ptr<const detail::FieldData>;

    static const Rational& zero_rational()
    {
        static const Rational z(0);
        return z;
    }

    static Ptr common(const FieldElem& a, const FieldElem& b)
    {
        if (!a.f_)
            return b.f_;
        if (!b.f_ || a.f_ == b.f_)
            return a.f_;
        if (a.f_->modulus != b.f_->modulus)
            raise(Errc::FieldMismatch, "operands belong to different number fields");
        return a.f_;
    }

    FieldElem lifted(const Ptr& f) const
    {
        if (f_ == f || !f)
            return *this;
        FieldElem r = *this;
        r.f_ = f;
        r.c_.resize(static_cast<std::size_t>(f->modulus.degree()), Rational(0));
        return r;
    }

    std::vector<Rational> lifted_coords(const Ptr& f) const
    {
        std::vector<Rational> c = c_;
        if (f)
            c.resize(static_cast<std::size_t>(f->modulus.degree()), Rational(0));
        return c;
    }

    Ptr f_;
    std::vector<Rational> c_;
};

inline bool is_zero(const FieldElem& x) { return x.is_zero(); }

namespace detail {

inline std::string render_rational_poly(const std::vector<Rational>& c, const char* var)
{
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (sgn(c[i]) == 0)
            continue;
        Rational mag = abs(c[i]);
        std::string term;
        if (i == 0)
            term = mag.get_str();
        else {
            std::string mono = i == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(i);
            term = mag == 1 ? mono : mag.get_str() + "*" + mono;
        }
        if (out.empty())
            out = sgn(c[i]) < 0 ? "-" + term : term;
        else
            out += (sgn(c[i]) < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace detail

/// Renders the element as a polynomial in `t`, e.g. `-1 - t`.
inline std::string to_string(const FieldElem& x) { return detail::render_rational_poly(x.coords(), "t"); }

inline std::string to_string(const RatPoly& p, const char* var = "t")
{
    return detail::render_rational_poly(p.coeffs(), var);
}

} // namespace qhwb
