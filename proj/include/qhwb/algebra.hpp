#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhwb/error.hpp"
#include "qhwb/matrix.hpp"
#include "qhwb/novikov.hpp"
#include "qhwb/novikov_roots.hpp"

namespace qhwb {

using Vec = std::vector<NovikovScalar>;
using NMatrix = Matrix<NovikovScalar>;

inline constexpr std::size_t kDefaultMaxDim = 64;

/// Structure-constant presentation of a commutative unital algebra over K(s).
struct AlgebraPresentation {
    NumberField field;
    std::vector<std::string> basis_names;
    /// The unit as a basis index, or as an explicit combination when no
    /// basis element is the unit (e.g. 1 = e1 + e2 + e3).
    std::optional<std::size_t> unit_index;
    std::optional<Vec> unit_element;
    /// (i, j) -> b_i * b_j. A pair may be given in either order; giving both
    /// orders with different values is a commutativity violation.
    std::map<std::pair<std::size_t, std::size_t>, Vec> structure_constants;
    /// Missing pairs default to zero only when set.
    bool sparse = false;
    std::optional<std::vector<long>> degrees;
    std::optional<long> t_degree;
    std::optional<long> parity_n;
    std::optional<Vec> integration;
    /// Largest ramification N allowed for splitting eigenvalues (unbounded when unset).
    std::optional<long> novikov_n;
    std::size_t max_dim = kDefaultMaxDim;
};

class Element {
public:
    Element() = default;
    explicit Element(Vec coords) : c_(std::move(coords)) {}
    static Element zero(std::size_t dim) { return Element(Vec(dim)); }
    static Element basis(std::size_t dim, std::size_t i)
    {
        Element e = zero(dim);
        e.c_.at(i) = NovikovScalar(1);
        return e;
    }

    std::size_t dim() const noexcept { return c_.size(); }
    const Vec& coords() const noexcept { return c_; }
    const NovikovScalar& operator[](std::size_t i) const { return c_[i]; }
    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const NovikovScalar& x) { return x.is_zero(); });
    }

    friend Element operator+(Element a, const Element& b)
    {
        check(a, b);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            a.c_[i] += b.c_[i];
        return a;
    }
    friend Element operator-(Element a, const Element& b)
    {
        check(a, b);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            a.c_[i] -= b.c_[i];
        return a;
    }
    Element operator-() const { return Element(Vec(c_.size())) - *this; }
    friend Element operator*(const NovikovScalar& s, Element a)
    {
        for (auto& x : a.c_)
            x = s * x;
        return a;
    }
    friend bool operator==(const Element& a, const Element& b) { return a.c_ == b.c_; }

private:
    static void check(const Element& a, const Element& b)
    {
        if (a.c_.size() != b.c_.size())
            raise(Errc::DimensionMismatch, "elements of different dimensions");
    }
    Vec c_;
};

struct IdempotentRecord {
    Element element;
    bool verified_field_unit = false;
    std::size_t ideal_dimension = 0;
};

class Algebra;
Algebra alg_make(AlgebraPresentation p);

/// A validated algebra. Construct through alg_make.
class Algebra {
public:
    std::size_t dim() const noexcept { return names_.size(); }
    const std::vector<std::string>& basis_names() const noexcept { return names_; }
    const NumberField& field() const noexcept { return field_; }
    const Element& unit() const noexcept { return unit_; }
    Element basis(std::size_t i) const { return Element::basis(dim(), i); }
    const std::optional<std::vector<long>>& degrees() const noexcept { return degrees_; }
    std::optional<long> t_degree() const noexcept { return t_degree_; }
    std::optional<long> parity_n() const noexcept { return parity_n_; }
    std::optional<long> novikov_n() const noexcept { return novikov_n_; }
    const std::optional<Vec>& integration() const noexcept { return integration_; }
    bool graded() const noexcept { return degrees_.has_value() && t_degree_.has_value(); }

    /// b_i * b_j.
    const Vec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    Element mul(const Element& x, const Element& y) const
    {
        require_dim(x);
        require_dim(y);
        Vec r(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero())
                continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero())
                    continue;
                const NovikovScalar xy = x[i] * y[j];
                const Vec& c = product(i, j);
                for (std::size_t k = 0; k < dim(); ++k)
                    if (!c[k].is_zero())
                        r[k] += xy * c[k];
            }
        }
        return Element(std::move(r));
    }

    /// Matrix of y -> x * y in the basis.
    NMatrix mult_operator(const Element& x) const
    {
        NMatrix m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            Element col = mul(x, basis(j));
            for (std::size_t i = 0; i < dim(); ++i)
                m(i, j) = col[i];
        }
        return m;
    }

    void require_dim(const Element& x) const
    {
        if (x.dim() != dim())
            raise(Errc::DimensionMismatch, "element dimension " + std::to_string(x.dim()) +
                                               " does not match algebra dimension " + std::to_string(dim()));
    }

private:
    friend Algebra alg_make(AlgebraPresentation p);
    Algebra() = default;

    NumberField field_;
    std::vector<std::string> names_;
    std::vector<Vec> table_;
    Element unit_;
    std::optional<std::vector<long>> degrees_;
    std::optional<long> t_degree_;
    std::optional<long> parity_n_;
    std::optional<Vec> integration_;
    std::optional<long> novikov_n_;
};

inline Element mul(const Algebra& A, const Element& x, const Element& y) { return A.mul(x, y); }

/// Validates a presentation: shapes, commutativity, unit axioms, associativity
/// over all basis triples and, when degrees are given, grading consistency.
inline Algebra alg_make(AlgebraPresentation p)
{
    const std::size_t d = p.basis_names.size();
    if (d == 0)
        raise(Errc::DimensionMismatch, "algebra needs at least one basis element");
    if (d > p.max_dim)
        raise(Errc::LimitExceeded, "dimension " + std::to_string(d) + " exceeds the cap " + std::to_string(p.max_dim));
    auto idx = [](std::size_t i) { return static_cast<int>(i); };
    auto check_len = [&](const Vec& v, const std::string& what) {
        if (v.size() != d)
            raise(Errc::DimensionMismatch, what + " has " + std::to_string(v.size()) + " entries, expected " +
                                               std::to_string(d));
    };

    Algebra A;
    A.field_ = p.field;
    A.names_ = p.basis_names;
    A.table_.assign(d * d, Vec(d));
    for (const auto& [key, v] : p.structure_constants) {
        if (key.first >= d || key.second >= d)
            raise(Errc::DimensionMismatch, "structure constant index out of range", {idx(key.first), idx(key.second)});
        check_len(v, "structure constant (" + std::to_string(key.first) + ", " + std::to_string(key.second) + ")");
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            auto a = p.structure_constants.find({i, j});
            auto b = p.structure_constants.find({j, i});
            if (a != p.structure_constants.end() && b != p.structure_constants.end() && a->second != b->second)
                raise(Errc::NotCommutative, p.basis_names[i] + "*" + p.basis_names[j] + " differs from " +
                                                p.basis_names[j] + "*" + p.basis_names[i],
                      {idx(i), idx(j)});
            const Vec* v = a != p.structure_constants.end() ? &a->second
                           : b != p.structure_constants.end() ? &b->second
                                                               : nullptr;
            if (!v && !p.sparse)
                raise(Errc::InvalidArgument, "missing product " + p.basis_names[i] + "*" + p.basis_names[j],
                      {idx(i), idx(j)});
            if (v) {
                A.table_[i * d + j] = *v;
                A.table_[j * d + i] = *v;
            }
        }

    if (p.unit_index && p.unit_element)
        raise(Errc::InvalidArgument, "unit given both as index and as element");
    if (p.unit_index) {
        if (*p.unit_index >= d)
            raise(Errc::DimensionMismatch, "unit index out of range", {idx(*p.unit_index)});
        A.unit_ = Element::basis(d, *p.unit_index);
    } else if (p.unit_element) {
        check_len(*p.unit_element, "unit element");
        A.unit_ = Element(*p.unit_element);
    } else {
        raise(Errc::InvalidArgument, "no unit given");
    }
    for (std::size_t j = 0; j < d; ++j)
        if (A.mul(A.unit_, A.basis(j)) != A.basis(j))
            raise(Errc::UnitAxiomFailed, "1*" + p.basis_names[j] + " != " + p.basis_names[j], {idx(j)});

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Element ij(A.product(i, j));
            for (std::size_t k = 0; k < d; ++k) {
                const Element jk(A.product(j, k));
                if (A.mul(ij, A.basis(k)) != A.mul(A.basis(i), jk))
                    raise(Errc::NotAssociative,
                          "(" + p.basis_names[i] + "*" + p.basis_names[j] + ")*" + p.basis_names[k] +
                              " != " + p.basis_names[i] + "*(" + p.basis_names[j] + "*" + p.basis_names[k] + ")",
                          {idx(i), idx(j), idx(k)});
            }
        }

    if (p.degrees) {
        if (p.degrees->size() != d)
            raise(Errc::DimensionMismatch, "degree list length mismatch");
        for (std::size_t i = 0; i < d; ++i)
            if ((*p.degrees)[i] < 0 || (*p.degrees)[i] % 2 != 0)
                raise(Errc::GradingViolation, "degree of " + p.basis_names[i] + " must be even and nonnegative",
                      {idx(i)});
        if (!p.t_degree)
            raise(Errc::GradingViolation, "degrees given without t_degree");
    }
    if (p.t_degree && (*p.t_degree <= 0 || *p.t_degree % 2 != 0))
        raise(Errc::GradingViolation, "t_degree must be a positive even integer");
    if (p.degrees && p.t_degree) {
        const auto& deg = *p.degrees;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                const Vec& c = A.product(i, j);
                for (std::size_t k = 0; k < d; ++k) {
                    if (c[k].is_zero())
                        continue;
                    // c must be a single monomial c0*T^a with deg i + deg j = deg k + t_degree*a
                    Rational a(deg[i] + deg[j] - deg[k], *p.t_degree);
                    a.canonicalize();
                    if (!c[k].is_monomial() || *c[k].valuation() != a)
                        raise(Errc::GradingViolation,
                              "coefficient of " + p.basis_names[k] + " in " + p.basis_names[i] + "*" +
                                  p.basis_names[j] + " is " + to_string(c[k]) + ", expected a multiple of " +
                                  detail::render_exponent(a),
                              {idx(i), idx(j), idx(k)});
                }
            }
    }
    if (p.parity_n && *p.parity_n <= 0)
        raise(Errc::InvalidArgument, "n must be positive");
    if (p.novikov_n && *p.novikov_n <= 0)
        raise(Errc::InvalidArgument, "novikov_n must be positive");
    if (p.integration)
        check_len(*p.integration, "integration covector");

    A.degrees_ = p.degrees;
    A.t_degree_ = p.t_degree;
    A.parity_n_ = p.parity_n;
    A.integration_ = p.integration;
    A.novikov_n_ = p.novikov_n;
    return A;
}

/// Gram matrix of the trace form, G[i][j] = tr(L_{b_i * b_j}).
inline NMatrix trace_form(const Algebra& A)
{
    const std::size_t d = A.dim();
    Vec tr(d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t j = 0; j < d; ++j)
            tr[m] += A.product(m, j)[j];
    NMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Vec& c = A.product(i, j);
            for (std::size_t m = 0; m < d; ++m)
                if (!c[m].is_zero())
                    g(i, j) += c[m] * tr[m];
        }
    return g;
}

inline bool semisimple(const Algebra& A) { return !determinant(trace_form(A)).is_zero(); }

/// Rank of the multiplication-by-e operator; e must be idempotent.
inline std::size_t ideal_dim(const Algebra& A, const Element& e)
{
    if (A.mul(e, e) != e)
        raise(Errc::NotIdempotent, "element is not idempotent");
    return rank(A.mult_operator(e));
}

namespace detail {

using Basis = std::vector<Vec>;

inline Vec combine(const Basis& basis, const Vec& y, std::size_t dim)
{
    Vec v(dim);
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!y[k].is_zero())
            for (std::size_t i = 0; i < dim; ++i)
                v[i] += y[k] * basis[k][i];
    return v;
}

/// Operator x -> b*x restricted to the invariant subspace spanned by `basis`,
/// in coordinates relative to that basis.
inline NMatrix restricted_operator(const Algebra& A, const Element& b, const Basis& basis)
{
    const NMatrix B = NMatrix::from_columns(basis, A.dim());
    NMatrix M(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto y = solve(B, A.mul(b, Element(basis[j])).coords());
        for (std::size_t i = 0; i < basis.size(); ++i)
            M(i, j) = y[i];
    }
    return M;
}

/// Splits the block along eigenvalues of b found in K(s). Returns the pieces
/// (eigenspaces, then the unsplit remainder if any) and sets `stuck` to the
/// minimal polynomial factor that had no root when something is left over.
inline std::vector<Basis> split_block(const Algebra& A, const Element& b, const Basis& block,
                                      std::optional<NPoly>& stuck)
{
    const NMatrix M = restricted_operator(A, b, block);
    const NPoly mp = minimal_polynomial(M);
    if (mp.degree() <= 1)
        return {block};
    auto roots = monomial_roots(mp, A.field(), A.novikov_n());
    // positive leading coefficient first: makes (1 + ...)/2 precede (1 - ...)/2
    std::stable_sort(roots.begin(), roots.end(), [](const NovikovScalar& x, const NovikovScalar& y) {
        return x.leading_coefficient().leading_sign() > y.leading_coefficient().leading_sign();
    });
    const std::size_t n = block.size();
    std::vector<Basis> pieces;
    NMatrix rest = NMatrix::identity(n);
    NPoly found{NovikovScalar(1)};
    for (const auto& lambda : roots) {
        NMatrix shifted = M - lambda * NMatrix::identity(n);
        Basis piece;
        for (const auto& y : kernel(shifted))
            piece.push_back(combine(block, y, A.dim()));
        if (piece.empty())
            continue;
        pieces.push_back(std::move(piece));
        rest = shifted * rest;
        found = found * NPoly{-lambda, NovikovScalar(1)};
    }
    std::size_t covered = 0;
    for (const auto& piece : pieces)
        covered += piece.size();
    if (covered < n) {
        Basis remainder;
        for (const auto& y : column_space(rest))
            remainder.push_back(combine(block, y, A.dim()));
        pieces.push_back(std::move(remainder));
        stuck = mp / found;
    }
    if (pieces.size() == 1)
        return {block};
    return pieces;
}

inline std::size_t first_nonzero(const Element& e)
{
    for (std::size_t i = 0; i < e.dim(); ++i)
        if (!e[i].is_zero())
            return i;
    return e.dim();
}

} // namespace detail

/// Primitive idempotents of a semisimple algebra whose splitting eigenvalues
/// are monomials c*T^mu in K(s). Output is sorted by the first basis element
/// on which an idempotent is supported, ties kept in discovery order.
inline std::vector<IdempotentRecord> decompose(const Algebra& A)
{
    if (!semisimple(A))
        raise(Errc::NotSemisimple, "trace form is degenerate");
    const std::size_t d = A.dim();
    std::vector<detail::Basis> blocks;
    {
        detail::Basis all;
        for (std::size_t i = 0; i < d; ++i)
            all.push_back(A.basis(i).coords());
        blocks.push_back(std::move(all));
    }
    std::vector<std::optional<NPoly>> stuck(1);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<detail::Basis> next;
        std::vector<std::optional<NPoly>> next_stuck;
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            if (blocks[k].size() == 1) {
                next.push_back(std::move(blocks[k]));
                next_stuck.push_back(std::nullopt);
                continue;
            }
            std::optional<NPoly> why;
            auto pieces = detail::split_block(A, A.basis(i), blocks[k], why);
            for (std::size_t q = 0; q < pieces.size(); ++q) {
                // keep the first failing polynomial seen for an unsplit block
                if (pieces.size() == 1)
                    next_stuck.push_back(stuck[k] ? stuck[k] : why);
                else
                    next_stuck.push_back(why && q + 1 == pieces.size() ? why : std::nullopt);
                next.push_back(std::move(pieces[q]));
            }
        }
        blocks = std::move(next);
        stuck = std::move(next_stuck);
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (blocks[k].size() == 1)
            continue;
        NPoly witness;
        if (stuck[k]) {
            witness = *stuck[k];
        } else {
            for (std::size_t i = 0; i < d && witness.degree() <= 1; ++i)
                witness = minimal_polynomial(detail::restricted_operator(A, A.basis(i), blocks[k]));
        }
        raise(Errc::NotSplitOverField, "no root in K(s) for " + to_string(witness), {}, to_string(witness));
    }

    // components of the unit along the blocks
    detail::Basis cols;
    for (const auto& b : blocks)
        cols.push_back(b[0]);
    const auto y = solve(NMatrix::from_columns(cols, d), A.unit().coords());
    std::vector<IdempotentRecord> out;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        Element e = y[k] * Element(blocks[k][0]);
        IdempotentRecord rec{e, false, ideal_dim(A, e)};
        rec.verified_field_unit = rec.ideal_dimension == 1;
        out.push_back(std::move(rec));
    }
    std::stable_sort(out.begin(), out.end(), [](const IdempotentRecord& a, const IdempotentRecord& b) {
        return detail::first_nonzero(a.element) < detail::first_nonzero(b.element);
    });

    Element sum = Element::zero(d);
    for (std::size_t a = 0; a < out.size(); ++a) {
        sum = sum + out[a].element;
        for (std::size_t b = a + 1; b < out.size(); ++b)
            if (!A.mul(out[a].element, out[b].element).is_zero())
                raise(Errc::AssertionFailed, "decomposition idempotents are not orthogonal",
                      {static_cast<int>(a), static_cast<int>(b)});
    }
    if (sum != A.unit())
        raise(Errc::AssertionFailed, "decomposition idempotents do not sum to the unit");
    return out;
}

inline NovikovScalar integrate(const Algebra& A, const Element& x)
{
    if (!A.integration())
        raise(Errc::NoIntegrationData, "algebra has no integration functional");
    A.require_dim(x);
    NovikovScalar r;
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (!x[i].is_zero())
            r += (*A.integration())[i] * x[i];
    return r;
}

/// Classical part (T^0 coefficient) of the integral of x*y.
inline NovikovScalar intersection_number(const Algebra& A, const Element& x, const Element& y)
{
    if (!A.integration())
        raise(Errc::NoIntegrationData, "algebra has no integration functional");
    if (!A.graded())
        raise(Errc::NoGrading, "intersection numbers need a graded algebra");
    return NovikovScalar(integrate(A, A.mul(x, y)).coefficient(Rational(0)));
}

/// Renders an element as a combination of basis names, e.g. `1/2*one + 1/2*T^{-1/2}*x`.
inline std::string to_string(const Algebra& A, const Element& x)
{
    A.require_dim(x);
    std::string out;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x[i].is_zero())
            continue;
        std::string cs = to_string(x[i]);
        const bool neg = cs[0] == '-' && cs.find(' ') == std::string::npos;
        if (neg)
            cs = cs.substr(1);
        std::string term;
        if (cs == "1")
            term = A.basis_names()[i];
        else if (cs.find(' ') != std::string::npos)
            term = "(" + cs + ")*" + A.basis_names()[i];
        else
            term = cs + "*" + A.basis_names()[i];
        if (out.empty())
            out = neg ? "-" + term : term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace qhwb
