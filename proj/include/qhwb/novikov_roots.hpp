#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhwb/field_roots.hpp"
#include "qhwb/novikov.hpp"

namespace qhwb {

using NPoly = Poly<NovikovScalar>;

/// Roots of p in K(s) of the form c*T^mu with c in K. Candidate exponents mu
/// come from the Newton polygon of p; for each edge the leading-order
/// equation is solved in K and every candidate is verified exactly.
///
/// `ramification_cap` (when set) discards roots whose exponent denominator
/// does not divide it. The result is deterministic: edges by increasing mu,
/// then c in the order given by roots_in_field, zero first when present.
inline std::vector<NovikovScalar> monomial_roots(const NPoly& p, const NumberField& field,
                                                 std::optional<long> ramification_cap = std::nullopt)
{
    std::vector<NovikovScalar> out;
    if (p.degree() < 1)
        return out;
    if (p.coeffs()[0].is_zero())
        out.emplace_back();

    struct Pt {
        long k;
        Rational v;
    };
    std::vector<Pt> pts;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!p.coeffs()[k].is_zero())
            pts.push_back({static_cast<long>(k), *p.coeffs()[k].valuation()});

    // lower convex hull, left to right
    std::vector<Pt> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull.back();
            // drop b when it lies on or above segment a-q
            Rational lhs = (b.v - a.v) * (q.k - a.k);
            Rational rhs = (q.v - a.v) * (b.k - a.k);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }

    // slopes increase along the lower hull, so mu = -slope decreases; walk backwards
    for (std::size_t h = hull.size() - 1; h > 0; --h) {
        const Pt& a = hull[h - 1];
        const Pt& b = hull[h];
        Rational mu = -(b.v - a.v) / Rational(b.k - a.k);
        mu.canonicalize();
        if (ramification_cap && *ramification_cap % mu.get_den().get_si() != 0)
            continue;
        const Rational level = a.v + a.k * mu;
        std::vector<FieldElem> q(static_cast<std::size_t>(b.k - a.k + 1), FieldElem(0));
        for (const auto& pt : pts)
            if (pt.k >= a.k && pt.k <= b.k && pt.v + pt.k * mu == level)
                q[static_cast<std::size_t>(pt.k - a.k)] =
                    p.coeffs()[static_cast<std::size_t>(pt.k)].leading_coefficient();
        for (const auto& c : roots_in_field(KPoly(std::move(q)), field)) {
            if (c.is_zero())
                continue;
            NovikovScalar lambda = NovikovScalar::monomial(c, mu);
            if (p.eval(lambda).is_zero())
                out.push_back(std::move(lambda));
        }
    }
    return out;
}

/// Text form of a polynomial in X with scalar coefficients, highest degree
/// first, e.g. `X^3 - T`.
inline std::string to_string(const NPoly& p, const char* var = "X")
{
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        const NovikovScalar& c = p.coeffs()[i];
        if (c.is_zero())
            continue;
        std::string mono = i == 0 ? "" : (i == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(i));
        std::string cs = to_string(c);
        // a single negative term moves its sign into the join
        const bool neg = cs[0] == '-' && cs.find(' ') == std::string::npos;
        if (neg)
            cs = cs.substr(1);
        std::string term;
        if (mono.empty())
            term = cs;
        else if (cs == "1")
            term = mono;
        else if (cs.find(' ') != std::string::npos)
            term = "(" + cs + ")*" + mono;
        else
            term = cs + "*" + mono;
        if (out.empty())
            out = neg ? "-" + term : term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace qhwb
