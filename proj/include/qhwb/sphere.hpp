#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qhwb/algebra.hpp"

namespace qhwb {

/// A middle-degree class [L] with the sign (-1)^{n(n-1)/2} of its algebra.
struct SphereClass {
    Element element;
    int parity_sign = 1;
};

inline int parity_sign(long n) { return (n * (n - 1) / 2) % 2 == 0 ? 1 : -1; }

inline SphereClass sphere_class(const Algebra& A, Element x)
{
    A.require_dim(x);
    if (x.is_zero())
        raise(Errc::ZeroClass, "sphere class is zero");
    if (!A.parity_n())
        raise(Errc::PreconditionViolated, "algebra has no n (half dimension); parity sign unknown");
    return {std::move(x), parity_sign(*A.parity_n())};
}

struct SphereIdempotents {
    NovikovScalar beta;
    NovikovScalar sqrt_beta;
    IdempotentRecord e_plus;
    IdempotentRecord e_minus;
};

/// The scalar beta with l^3 = 4 beta l.
inline NovikovScalar extract_beta(const Algebra& A, const SphereClass& l)
{
    const Element& x = l.element;
    if (x.is_zero())
        raise(Errc::ZeroClass, "sphere class is zero");
    const Element cube = A.mul(A.mul(x, x), x);
    std::size_t i = 0;
    while (x[i].is_zero())
        ++i;
    const NovikovScalar beta = cube[i] / (NovikovScalar(4) * x[i]);
    if (cube != (NovikovScalar(4) * beta) * x)
        raise(Errc::NotCubic, "l^3 is not a multiple of l", {}, to_string(A, cube));
    return beta;
}

/// e_+- = +-l/(4 sqrt(beta)) + l^2/(8 beta), checked idempotent, orthogonal
/// and generating one-dimensional ideals.
inline SphereIdempotents sphere_idempotents(const Algebra& A, const SphereClass& l)
{
    const NovikovScalar beta = extract_beta(A, l);
    if (beta.is_zero())
        raise(Errc::BetaZero, "beta vanishes: l^3 = 0");
    const NovikovScalar root = sqrt(beta, A.field());
    const Element& x = l.element;
    const Element half = (NovikovScalar(1) / (NovikovScalar(4) * root)) * x;
    const Element sq = (NovikovScalar(1) / (NovikovScalar(8) * beta)) * A.mul(x, x);
    const Element ep = sq + half;
    const Element em = sq - half;
    if (A.mul(ep, ep) != ep || A.mul(em, em) != em)
        raise(Errc::AssertionFailed, "sphere idempotents are not idempotent");
    if (!A.mul(ep, em).is_zero())
        raise(Errc::AssertionFailed, "sphere idempotents are not orthogonal");
    const std::size_t dp = ideal_dim(A, ep), dm = ideal_dim(A, em);
    if (dp != 1 || dm != 1)
        raise(Errc::AssertionFailed, "sphere idempotents do not generate one-dimensional ideals (dims " +
                                         std::to_string(dp) + ", " + std::to_string(dm) + ")");
    if ((NovikovScalar(2) * root) * (ep - em) != x)
        raise(Errc::AssertionFailed, "l != 2 sqrt(beta) (e+ - e-)");
    return {beta, root, {ep, true, dp}, {em, true, dm}};
}

/// Element a*1_L + b*p_L of the two-dimensional sphere Floer model.
struct FloerElement {
    NovikovScalar unit;
    NovikovScalar point;
    friend bool operator==(const FloerElement&, const FloerElement&) = default;
};

inline std::string to_string(const FloerElement& f)
{
    return "(" + to_string(f.unit) + ")*1_L + (" + to_string(f.point) + ")*p_L";
}

/// HF(L) on (1_L, p_L) with p_L * p_L = beta 1_L, together with the
/// closed-open and open-closed maps attached to a sphere's idempotents.
class FloerModel {
public:
    FloerModel(const Algebra& A, const SphereIdempotents& s) : A_(A), s_(s)
    {
        if (s.beta.is_zero())
            raise(Errc::BetaZero, "Floer model needs beta != 0");
    }

    const NovikovScalar& beta() const noexcept { return s_.beta; }
    static constexpr std::size_t dimension = 2;

    FloerElement mul(const FloerElement& f, const FloerElement& g) const
    {
        return {f.unit * g.unit + s_.beta * f.point * g.point, f.unit * g.point + f.point * g.unit};
    }

    /// CO^0: e_+- -> +-p_L/(2 sqrt(beta)) + 1_L/2, zero on the complementary ideal.
    FloerElement co0(const Element& x) const
    {
        const NovikovScalar a = component(x, s_.e_plus.element);
        const NovikovScalar b = component(x, s_.e_minus.element);
        const NovikovScalar h = NovikovScalar(1) / (NovikovScalar(2) * s_.sqrt_beta);
        return {(a + b) / NovikovScalar(2), h * (a - b)};
    }

    /// OC^0: 1_L -> 2 sqrt(beta)(e+ - e-), p_L -> 2 beta (e+ + e-).
    Element oc0(const FloerElement& f) const
    {
        const Element& ep = s_.e_plus.element;
        const Element& em = s_.e_minus.element;
        return (NovikovScalar(2) * s_.sqrt_beta * f.unit) * (ep - em) +
               (NovikovScalar(2) * s_.beta * f.point) * (ep + em);
    }

    /// Matrix of co0 o oc0 on the basis (1_L, p_L); columns are images.
    std::array<std::array<NovikovScalar, 2>, 2> composite_matrix() const
    {
        const FloerElement one = co0(oc0({NovikovScalar(1), NovikovScalar()}));
        const FloerElement pt = co0(oc0({NovikovScalar(), NovikovScalar(1)}));
        return {{{one.unit, pt.unit}, {one.point, pt.point}}};
    }

private:
    /// Coefficient c with x * e = c e (e spans a one-dimensional ideal).
    NovikovScalar component(const Element& x, const Element& e) const
    {
        const Element xe = A_.mul(x, e);
        for (std::size_t i = 0; i < e.dim(); ++i)
            if (!e[i].is_zero())
                return xe[i] / e[i];
        return {};
    }

    Algebra A_;
    SphereIdempotents s_;
};

inline FloerModel floer_model(const Algebra& A, const SphereIdempotents& s) { return FloerModel(A, s); }

/// Which of e_+-^L equal which of e_+-^{L'}.
struct SharedReport {
    bool plus_plus = false, plus_minus = false, minus_plus = false, minus_minus = false;
    std::vector<Element> shared;
    std::size_t count() const noexcept { return shared.size(); }
};

inline SharedReport shared_idempotents(const SphereIdempotents& s, const SphereIdempotents& t)
{
    SharedReport r;
    const Element& p = s.e_plus.element;
    const Element& m = s.e_minus.element;
    const Element& q = t.e_plus.element;
    const Element& n = t.e_minus.element;
    r.plus_plus = p == q;
    r.plus_minus = p == n;
    r.minus_plus = m == q;
    r.minus_minus = m == n;
    if (r.plus_plus || r.plus_minus)
        r.shared.push_back(p);
    if (r.minus_plus || r.minus_minus)
        r.shared.push_back(m);
    return r;
}

inline SharedReport shared_idempotents(const Algebra& A, const SphereClass& l, const SphereClass& lp)
{
    return shared_idempotents(sphere_idempotents(A, l), sphere_idempotents(A, lp));
}

struct SignReport {
    int sign = 0;             // from the idempotent pattern
    NovikovScalar signed_pairing; // parity sign times the intersection number
    SharedReport shared;
};

/// Sign of (-1)^{n(n-1)/2} [L].[L'] read off from which idempotents coincide,
/// cross-checked against the intersection number.
inline SignReport classify_sign(const Algebra& A, const SphereClass& l, const SphereClass& lp)
{
    SignReport r;
    r.shared = shared_idempotents(A, l, lp);
    if (r.shared.count() != 1)
        raise(Errc::PreconditionViolated,
              "classification needs exactly one shared idempotent, found " + std::to_string(r.shared.count()));
    r.sign = (r.shared.plus_minus || r.shared.minus_plus) ? -1 : 1;
    r.signed_pairing = NovikovScalar(l.parity_sign) * intersection_number(A, l.element, lp.element);
    if (r.signed_pairing != NovikovScalar(r.sign))
        raise(Errc::Inconsistent,
              "idempotent pattern gives " + std::to_string(r.sign) + " but the signed pairing is " +
                  to_string(r.signed_pairing));
    return r;
}

/// Picard-Lefschetz: x - (-1)^{n(n-1)/2} ([L].x) [L].
inline Element pl_transform(const Algebra& A, const SphereClass& l, const Element& x)
{
    const NovikovScalar k = NovikovScalar(l.parity_sign) * intersection_number(A, l.element, x);
    return x - k * l.element;
}

struct DehnReport {
    Element transformed;
    SphereIdempotents twisted;
    std::vector<Element> expected; // ({e^L} u {e^L'}) minus the shared one
};

/// Idempotents of tau_L(L'), recomputed from the transformed class and
/// checked against the union of both pairs minus the shared idempotent.
inline DehnReport dehn_idempotents(const Algebra& A, const SphereClass& l, const SphereClass& lp)
{
    const auto s = sphere_idempotents(A, l);
    const auto t = sphere_idempotents(A, lp);
    const auto shared = shared_idempotents(s, t);
    if (shared.count() != 1)
        raise(Errc::PreconditionViolated,
              "Dehn twist check needs an A2 pair (one shared idempotent), found " + std::to_string(shared.count()));
    DehnReport r;
    r.transformed = pl_transform(A, l, lp.element);
    r.twisted = sphere_idempotents(A, sphere_class(A, r.transformed));
    for (const auto* e : {&s.e_plus.element, &s.e_minus.element, &t.e_plus.element, &t.e_minus.element})
        if (*e != shared.shared[0])
            r.expected.push_back(*e);
    const Element& a = r.twisted.e_plus.element;
    const Element& b = r.twisted.e_minus.element;
    const bool same = (a == r.expected[0] && b == r.expected[1]) || (a == r.expected[1] && b == r.expected[0]);
    if (!same)
        raise(Errc::AssertionFailed, "idempotents of the twisted sphere differ from the predicted pair");
    return r;
}

} // namespace qhwb
