#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qhwb/error.hpp"
#include "qhwb/rational.hpp"

namespace qhwb {

namespace detail {
template <class C>
bool coeff_is_zero(const C& v)
{
    return is_zero(v);
}
} // namespace detail

/// Dense univariate polynomial over a coefficient field `C`.
///
/// Coefficients are stored lowest degree first and trimmed, so the zero
/// polynomial has no coefficients and equality is coefficient-wise. `C` must
/// be constructible from `int`, provide the field operations and a free
/// `is_zero(const C&)`.
template <class C>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(C constant) : c_{std::move(constant)} { trim(); }

    static Poly monomial(C coeff, std::size_t degree)
    {
        std::vector<C> c(degree + 1, C(0));
        c[degree] = std::move(coeff);
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(C(1), 1); }

    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const noexcept { return c_.size(); }
    const std::vector<C>& coeffs() const noexcept { return c_; }

    C coeff(std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }
    const C& leading() const { return c_.back(); }

    /// Index of the lowest nonzero coefficient; -1 for zero.
    int order() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!qhwb_is_zero(c_[i]))
                return static_cast<int>(i);
        return -1;
    }

    std::size_t term_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(c_.begin(), c_.end(), [](const C& v) { return !qhwb_is_zero(v); }));
    }

    bool is_monic() const { return !c_.empty() && c_.back() == C(1); }

    Poly monic() const
    {
        if (is_zero())
            return *this;
        C inv = C(1) / leading();
        Poly r = *this;
        for (auto& v : r.c_)
            v = v * inv;
        return r;
    }

    template <class V>
    V eval(const V& x) const
    {
        V acc = V(0);
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + V(c_[i]);
        return acc;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return Poly();
        std::vector<C> d(c_.size() - 1, C(0));
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * C(static_cast<int>(i));
        return Poly(std::move(d));
    }

    /// p(x) -> p(x^k).
    Poly inflate(std::size_t k) const
    {
        if (k == 1 || is_zero())
            return *this;
        std::vector<C> d((c_.size() - 1) * k + 1, C(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            d[i * k] = c_[i];
        return Poly(std::move(d));
    }

    /// p(x^k) -> p(x); caller guarantees only multiples of k occur.
    Poly deflate(std::size_t k) const
    {
        if (k == 1 || is_zero())
            return *this;
        std::vector<C> d((c_.size() - 1) / k + 1, C(0));
        for (std::size_t i = 0; i < c_.size(); i += k)
            d[i / k] = c_[i];
        return Poly(std::move(d));
    }

    /// Multiplies by x^k.
    Poly shift(std::size_t k) const
    {
        if (is_zero() || k == 0)
            return *this;
        std::vector<C> d(k, C(0));
        d.insert(d.end(), c_.begin(), c_.end());
        return Poly(std::move(d));
    }

    /// Divides by x^k, dropping lower terms.
    Poly unshift(std::size_t k) const
    {
        if (k >= c_.size())
            return Poly();
        return Poly(std::vector<C>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
    }

    template <class F>
    auto map(F&& f) const
    {
        using D = decltype(f(std::declval<const C&>()));
        std::vector<D> d;
        d.reserve(c_.size());
        for (const auto& v : c_)
            d.push_back(f(v));
        return Poly<D>(std::move(d));
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto& v : r.c_)
            v = -v;
        return r;
    }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly();
        std::vector<C> d(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (qhwb_is_zero(a.c_[i]))
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                d[i + j] = d[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(d));
    }

    friend Poly operator*(const C& s, const Poly& p)
    {
        if (qhwb_is_zero(s))
            return Poly();
        Poly r = p;
        for (auto& v : r.c_)
            v = s * v;
        r.trim();
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Euclidean division; returns {quotient, remainder}.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
    {
        if (b.is_zero())
            raise(Errc::DivisionByZero, "polynomial division by zero");
        if (a.degree() < b.degree())
            return {Poly(), a};
        std::vector<C> rem = a.c_;
        std::vector<C> quo(a.c_.size() - b.c_.size() + 1, C(0));
        C inv = C(1) / b.leading();
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t k = quo.size(); k-- > 0;) {
            C q = rem[k + db] * inv;
            quo[k] = q;
            if (qhwb_is_zero(q))
                continue;
            for (std::size_t j = 0; j <= db; ++j)
                rem[k + j] = rem[k + j] - q * b.c_[j];
        }
        rem.resize(db);
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

private:
    static bool qhwb_is_zero(const C& v) { return detail::coeff_is_zero(v); }

    void trim()
    {
        while (!c_.empty() && qhwb_is_zero(c_.back()))
            c_.pop_back();
    }

    std::vector<C> c_;
};

/// Monic greatest common divisor (zero if both inputs are zero).
template <class C>
Poly<C> gcd(Poly<C> a, Poly<C> b)
{
    while (!b.is_zero()) {
        Poly<C> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Extended Euclid: returns {g, u, v} with u*a + v*b = g and g monic.
template <class C>
struct ExtGcd {
    Poly<C> g, u, v;
};

template <class C>
ExtGcd<C> ext_gcd(const Poly<C>& a, const Poly<C>& b)
{
    Poly<C> r0 = a, r1 = b;
    Poly<C> u0{C(1)}, u1;
    Poly<C> v0, v1{C(1)};
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<C> u2 = u0 - q * u1;
        Poly<C> v2 = v0 - q * v1;
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero())
        return {r0, u0, v0};
    C inv = C(1) / r0.leading();
    return {inv * r0, inv * u0, inv * v0};
}

/// Squarefree part p / gcd(p, p').
template <class C>
Poly<C> squarefree_part(const Poly<C>& p)
{
    if (p.degree() <= 0)
        return p;
    Poly<C> g = gcd(p, p.derivative());
    return (p / g).monic();
}

} // namespace qhwb
