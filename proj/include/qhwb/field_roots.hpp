#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "qhwb/error.hpp"
#include "qhwb/number_field.hpp"
#include "qhwb/poly.hpp"
#include "qhwb/rational.hpp"

// Roots of univariate polynomials over a number field K.
//
// Candidates are generated numerically: every root c of f in K maps, under
// each complex embedding sigma_j of K, to a root of sigma_j(f). Choosing one
// root per embedding (conjugate embeddings are tied together) and solving the
// Vandermonde system for the coordinates of c gives candidate coordinates,
// which are rationalized by continued fractions. Only candidates that satisfy
// f(c) = 0 exactly in K are returned.

namespace qhwb {

namespace detail {

inline constexpr mp_bitcnt_t kRootPrecision = 384;
inline constexpr std::size_t kMaxRootCombinations = 200000;

struct MpComplex {
    mpf_class re{0, kRootPrecision};
    mpf_class im{0, kRootPrecision};

    MpComplex() = default;
    MpComplex(const mpf_class& r, const mpf_class& i) : re(r, kRootPrecision), im(i, kRootPrecision) {}
    explicit MpComplex(const Rational& r) : re(r, kRootPrecision), im(0, kRootPrecision) {}
    explicit MpComplex(const std::complex<long double>& z)
        : re(static_cast<double>(z.real()), kRootPrecision), im(static_cast<double>(z.imag()), kRootPrecision)
    {
    }

    std::complex<long double> approx() const { return {re.get_d(), im.get_d()}; }

    friend MpComplex operator+(const MpComplex& a, const MpComplex& b)
    {
        MpComplex r;
        r.re = a.re + b.re;
        r.im = a.im + b.im;
        return r;
    }
    friend MpComplex operator-(const MpComplex& a, const MpComplex& b)
    {
        MpComplex r;
        r.re = a.re - b.re;
        r.im = a.im - b.im;
        return r;
    }
    friend MpComplex operator*(const MpComplex& a, const MpComplex& b)
    {
        MpComplex r;
        r.re = a.re * b.re - a.im * b.im;
        r.im = a.re * b.im + a.im * b.re;
        return r;
    }
    friend MpComplex operator/(const MpComplex& a, const MpComplex& b)
    {
        mpf_class den(b.re * b.re + b.im * b.im, kRootPrecision);
        MpComplex r;
        r.re = (a.re * b.re + a.im * b.im) / den;
        r.im = (a.im * b.re - a.re * b.im) / den;
        return r;
    }
    MpComplex conj() const { return MpComplex(re, -im); }
    mpf_class abs2() const { return mpf_class(re * re + im * im, kRootPrecision); }
};

inline mpf_class mp_abs(const MpComplex& z)
{
    mpf_class a(0, kRootPrecision);
    mpf_sqrt(a.get_mpf_t(), z.abs2().get_mpf_t());
    return a;
}

inline MpComplex horner(const std::vector<MpComplex>& c, const MpComplex& z)
{
    MpComplex acc;
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * z + c[i];
    return acc;
}

inline std::vector<MpComplex> derivative(const std::vector<MpComplex>& c)
{
    std::vector<MpComplex> d;
    for (std::size_t i = 1; i < c.size(); ++i) {
        MpComplex k(Rational(static_cast<long>(i)));
        d.push_back(c[i] * k);
    }
    return d;
}

/// Simultaneous Aberth-Ehrlich iteration in long double, used as a seed.
inline std::vector<std::complex<long double>> aberth_seed(const std::vector<MpComplex>& coeffs)
{
    using C = std::complex<long double>;
    const std::size_t n = coeffs.size() - 1;
    std::vector<C> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        c[i] = coeffs[i].approx();
    std::vector<C> d(n);
    for (std::size_t i = 1; i <= n; ++i)
        d[i - 1] = c[i] * static_cast<long double>(i);

    long double radius = 0;
    for (std::size_t i = 0; i < n; ++i)
        radius = std::max(radius, std::abs(c[i] / c[n]));
    radius = 1 + radius;
    std::vector<C> z(n);
    const long double pi = 3.14159265358979323846L;
    for (std::size_t k = 0; k < n; ++k) {
        long double ang = 2 * pi * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
        z[k] = std::polar(radius * 0.5L, ang);
    }
    auto eval = [](const std::vector<C>& p, C x) {
        C acc = 0;
        for (std::size_t i = p.size(); i-- > 0;)
            acc = acc * x + p[i];
        return acc;
    };
    for (int iter = 0; iter < 800; ++iter) {
        long double maxstep = 0;
        for (std::size_t k = 0; k < n; ++k) {
            C pv = eval(c, z[k]);
            C dv = eval(d, z[k]);
            if (pv == C(0))
                continue;
            C w = pv / dv;
            C s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    s += C(1) / (z[k] - z[j]);
            C step = w / (C(1) - w * s);
            z[k] -= step;
            maxstep = std::max(maxstep, std::abs(step));
        }
        if (maxstep < 1e-18L)
            break;
    }
    return z;
}

/// All complex roots of a squarefree polynomial, to about 100 digits.
inline std::vector<MpComplex> complex_roots(const std::vector<MpComplex>& coeffs)
{
    const std::size_t n = coeffs.size() - 1;
    if (n == 0)
        return {};
    std::vector<MpComplex> z;
    for (const auto& s : aberth_seed(coeffs))
        z.emplace_back(s);
    const auto dcoeffs = derivative(coeffs);
    const mpf_class tol("1e-100", kRootPrecision);
    for (int iter = 0; iter < 60; ++iter) {
        mpf_class maxstep(0, kRootPrecision);
        for (std::size_t k = 0; k < n; ++k) {
            MpComplex pv = horner(coeffs, z[k]);
            if (pv.abs2() == 0)
                continue;
            MpComplex w = pv / horner(dcoeffs, z[k]);
            MpComplex s;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    s = s + MpComplex(Rational(1)) / (z[k] - z[j]);
            MpComplex step = w / (MpComplex(Rational(1)) - w * s);
            z[k] = z[k] - step;
            mpf_class a = mp_abs(step);
            if (a > maxstep)
                maxstep = a;
        }
        if (maxstep < tol)
            break;
    }
    return z;
}

/// Best rational approximation by continued fractions, accepted only when it
/// matches `x` to high relative precision.
inline std::optional<Rational> rationalize(const mpf_class& x)
{
    const mpf_class tol("1e-60", kRootPrecision);
    mpf_class scale(abs(x) + 1, kRootPrecision);
    mpf_class rem(x, kRootPrecision);
    Integer p0 = 1, q0 = 0;
    Integer p1, q1 = 1;
    {
        mpf_class fl(0, kRootPrecision);
        mpf_floor(fl.get_mpf_t(), rem.get_mpf_t());
        p1 = Integer(fl);
        rem = rem - fl;
    }
    const Integer qmax("1000000000000000000000000000000");
    for (int iter = 0; iter < 200; ++iter) {
        Rational cand(p1, q1);
        cand.canonicalize();
        mpf_class diff(x - mpf_class(cand, kRootPrecision), kRootPrecision);
        if (abs(diff) < tol * scale)
            return cand;
        if (rem == 0 || q1 > qmax)
            return std::nullopt;
        rem = 1 / rem;
        mpf_class fl(0, kRootPrecision);
        mpf_floor(fl.get_mpf_t(), rem.get_mpf_t());
        rem = rem - fl;
        Integer a(fl);
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return std::nullopt;
}

inline bool is_tiny(const mpf_class& v)
{
    static const mpf_class tol("1e-50", kRootPrecision);
    return abs(v) < tol;
}

inline MpComplex embed(const FieldElem& a, const MpComplex& theta)
{
    MpComplex acc;
    const auto& c = a.coords();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * theta + MpComplex(c[i]);
    return acc;
}

/// Solves the d x d system sum_i c_i theta_j^i = r_j by Gaussian elimination.
inline std::vector<MpComplex> solve_vandermonde(const std::vector<MpComplex>& theta,
                                                const std::vector<MpComplex>& rhs)
{
    const std::size_t d = theta.size();
    std::vector<std::vector<MpComplex>> a(d, std::vector<MpComplex>(d + 1));
    for (std::size_t j = 0; j < d; ++j) {
        MpComplex pw(Rational(1));
        for (std::size_t i = 0; i < d; ++i) {
            a[j][i] = pw;
            pw = pw * theta[j];
        }
        a[j][d] = rhs[j];
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (a[r][col].abs2() > a[piv][col].abs2())
                piv = r;
        std::swap(a[col], a[piv]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col)
                continue;
            MpComplex f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= d; ++k)
                a[r][k] = a[r][k] - f * a[col][k];
        }
    }
    std::vector<MpComplex> x(d);
    for (std::size_t i = 0; i < d; ++i)
        x[i] = a[i][d] / a[i][i];
    return x;
}

} // namespace detail

/// Distinct roots of `f` lying in K, sorted by coordinates.
inline std::vector<FieldElem> roots_in_field(const Poly<FieldElem>& f, const NumberField& field)
{
    if (f.is_zero())
        raise(Errc::InvalidArgument, "roots of the zero polynomial");
    Poly<FieldElem> g = squarefree_part(f);
    std::vector<FieldElem> out;
    if (g.degree() <= 0)
        return out;
    if (g.degree() == 1) {
        out.push_back(-g.coeff(0) / g.coeff(1));
        return out;
    }

    using detail::MpComplex;
    std::vector<MpComplex> mcoeffs;
    for (const auto& c : field.modulus().coeffs())
        mcoeffs.emplace_back(c);
    std::vector<MpComplex> theta = detail::complex_roots(mcoeffs);
    const std::size_t d = theta.size();

    // partner[j] == j for a real embedding, else index of its conjugate.
    std::vector<std::size_t> partner(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (detail::is_tiny(theta[j].im)) {
            theta[j].im = 0;
            partner[j] = j;
            continue;
        }
        std::size_t best = j;
        mpf_class bestd(-1, detail::kRootPrecision);
        for (std::size_t k = 0; k < d; ++k) {
            if (k == j)
                continue;
            mpf_class dist = (theta[k] - theta[j].conj()).abs2();
            if (bestd < 0 || dist < bestd) {
                bestd = dist;
                best = k;
            }
        }
        partner[j] = best;
    }

    std::vector<std::size_t> free_embeddings;
    std::vector<std::vector<MpComplex>> candidates(d);
    std::size_t combos = 1;
    for (std::size_t j = 0; j < d; ++j) {
        const bool real = partner[j] == j;
        if (!real && partner[j] < j)
            continue;
        std::vector<MpComplex> sc;
        for (const auto& c : g.coeffs())
            sc.push_back(detail::embed(c, theta[j]));
        for (auto& r : detail::complex_roots(sc)) {
            if (real) {
                if (!detail::is_tiny(r.im))
                    continue;
                r.im = 0;
            }
            candidates[j].push_back(r);
        }
        if (candidates[j].empty())
            return out;
        free_embeddings.push_back(j);
        combos *= candidates[j].size();
        if (combos > detail::kMaxRootCombinations)
            raise(Errc::LimitExceeded, "too many embedding combinations while searching roots in K");
    }

    std::vector<std::size_t> pick(free_embeddings.size(), 0);
    std::vector<MpComplex> values(d);
    while (true) {
        for (std::size_t i = 0; i < free_embeddings.size(); ++i) {
            std::size_t j = free_embeddings[i];
            values[j] = candidates[j][pick[i]];
            if (partner[j] != j)
                values[partner[j]] = values[j].conj();
        }
        auto coords = detail::solve_vandermonde(theta, values);
        std::vector<Rational> rc;
        bool ok = true;
        for (const auto& c : coords) {
            if (!detail::is_tiny(c.im)) {
                ok = false;
                break;
            }
            auto r = detail::rationalize(c.re);
            if (!r) {
                ok = false;
                break;
            }
            rc.push_back(*r);
        }
        if (ok) {
            FieldElem cand = field.is_rationals() ? FieldElem(rc[0]) : FieldElem(field, rc);
            if (g.eval(cand).is_zero() && std::find(out.begin(), out.end(), cand) == out.end())
                out.push_back(cand);
        }
        std::size_t i = 0;
        while (i < pick.size()) {
            if (++pick[i] < candidates[free_embeddings[i]].size())
                break;
            pick[i] = 0;
            ++i;
        }
        if (i == pick.size())
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Square root of `u` in K on the canonical branch (first nonzero
/// coordinate positive), or nullopt when u is not a square in K.
inline std::optional<FieldElem> field_sqrt(const FieldElem& u, const NumberField& field)
{
    if (u.is_zero())
        return FieldElem(0);
    if (u.is_rational()) {
        if (auto r = rational_sqrt(u.rational_part()))
            return FieldElem(*r);
    }
    Poly<FieldElem> f{-u, FieldElem(0), FieldElem(1)};
    auto roots = roots_in_field(f, field);
    for (const auto& r : roots)
        if (r.leading_sign() > 0)
            return r;
    return std::nullopt;
}

} // namespace qhwb
