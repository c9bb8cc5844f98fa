#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qhwb/config.hpp"
#include "qhwb/sphere.hpp"

namespace qhwb {

/// Registry of idempotents referenced by spectral classes. Entries are either
/// concrete (an element with its computed ideal dimension) or abstract ids
/// from a configuration labeling, which stand for field-factor units.
class IdempotentPool {
public:
    struct Entry {
        std::string label;
        std::optional<Element> element;
        std::size_t ideal_dimension = 1;
    };

    /// Id of the record's element, adding it when new.
    int add(const IdempotentRecord& r)
    {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].element && *entries_[i].element == r.element)
                return static_cast<int>(i);
        entries_.push_back({"e" + std::to_string(entries_.size() + 1), r.element, r.ideal_dimension});
        return static_cast<int>(entries_.size() - 1);
    }

    /// Id of an abstract idempotent named `label`, adding it when new.
    int add_abstract(const std::string& label)
    {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (!entries_[i].element && entries_[i].label == label)
                return static_cast<int>(i);
        entries_.push_back({label, std::nullopt, 1});
        return static_cast<int>(entries_.size() - 1);
    }

    const Entry& at(int id) const
    {
        if (id < 0 || static_cast<std::size_t>(id) >= entries_.size())
            raise(Errc::InvalidArgument, "unknown idempotent id " + std::to_string(id));
        return entries_[static_cast<std::size_t>(id)];
    }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::vector<Entry> entries_;
};

/// Nonempty set of field-factor idempotent ids; its asymptotic spectral
/// invariant is the max of the zeta values of its members.
class SpectralClass {
public:
    static SpectralClass make(const IdempotentPool& pool, std::set<int> ids)
    {
        if (ids.empty())
            raise(Errc::InvalidArgument, "spectral class needs at least one idempotent");
        for (int id : ids)
            if (pool.at(id).ideal_dimension != 1)
                raise(Errc::PreconditionViolated,
                      "idempotent " + pool.at(id).label + " spans an ideal of dimension " +
                          std::to_string(pool.at(id).ideal_dimension) + ", not a field factor",
                      {id});
        SpectralClass s;
        s.ids_ = std::move(ids);
        return s;
    }

    const std::set<int>& ids() const noexcept { return ids_; }
    friend bool operator==(const SpectralClass&, const SpectralClass&) = default;

private:
    SpectralClass() = default;
    std::set<int> ids_;
};

inline SpectralClass sphere_spectral(IdempotentPool& pool, const SphereIdempotents& s)
{
    return SpectralClass::make(pool, {pool.add(s.e_plus), pool.add(s.e_minus)});
}

inline std::string to_string(const IdempotentPool& pool, const SpectralClass& s)
{
    std::string out = "{";
    for (int id : s.ids()) {
        if (out.size() > 1)
            out += ", ";
        out += pool.at(id).label;
    }
    return out + "}";
}

/// a's ids lie in the union of bs' ids, so max over a <= max over the union.
inline bool dominance(const SpectralClass& a, const std::vector<SpectralClass>& bs)
{
    std::set<int> all;
    for (const auto& b : bs)
        all.insert(b.ids().begin(), b.ids().end());
    return std::includes(all.begin(), all.end(), a.ids().begin(), a.ids().end());
}

struct DehnInequalityReport {
    ParityCase mode = ParityCase::even();
    bool subset_holds = false; // even: tau <= max(L, L'); odd: all three coincide
    SpectralClass l, lp, tau;
};

/// Even case: spectral class of tau_L(L') against those of L and L'.
inline DehnInequalityReport dehn_inequality_check(const Algebra& A, const SphereClass& l, const SphereClass& lp,
                                                  ParityCase parity, IdempotentPool& pool)
{
    if (!parity.is_even())
        raise(Errc::PreconditionViolated, "odd parity compares singleton spectral classes; use the odd overload");
    const auto dehn = dehn_idempotents(A, l, lp);
    DehnInequalityReport r{parity, false, sphere_spectral(pool, sphere_idempotents(A, l)),
                           sphere_spectral(pool, sphere_idempotents(A, lp)), sphere_spectral(pool, dehn.twisted)};
    r.subset_holds = dominance(r.tau, {r.l, r.lp});
    return r;
}

/// Odd case: each sphere carries one idempotent; intersecting spheres share
/// it, so the twisted sphere's class equals both.
inline DehnInequalityReport dehn_inequality_check(const SpectralClass& l, const SpectralClass& lp,
                                                  const SpectralClass& tau)
{
    for (const auto* s : {&l, &lp, &tau})
        if (s->ids().size() != 1)
            raise(Errc::PreconditionViolated, "odd parity needs singleton spectral classes");
    if (l.ids() != lp.ids())
        raise(Errc::PreconditionViolated, "the two spheres share no idempotent");
    DehnInequalityReport r{ParityCase::odd_good(), false, l, lp, tau};
    r.subset_holds = tau == l && tau == lp;
    return r;
}

/// Pairs of carriers (spheres, or extra Lagrangians) declared disjoint.
class DisjointnessRegistry {
public:
    void declare(int a, int b)
    {
        if (a == b)
            raise(Errc::InvalidArgument, "a carrier cannot be disjoint from itself", {a});
        pairs_.insert({std::min(a, b), std::max(a, b)});
    }
    bool disjoint(int a, int b) const { return pairs_.count({std::min(a, b), std::max(a, b)}) > 0; }
    void erase(int a, int b) { pairs_.erase({std::min(a, b), std::max(a, b)}); }
    const std::set<std::pair<int, int>>& pairs() const noexcept { return pairs_; }

private:
    std::set<std::pair<int, int>> pairs_;
};

struct Certificate {
    int id_a = 0, id_b = 0;
    std::pair<int, int> disjoint_pair;
};

struct QmorCount {
    std::size_t count = 0;
    std::vector<int> ids;                  // a largest pairwise-certified set
    std::vector<Certificate> certificates; // one per certified pair, all candidate ids
};

/// Counts quasimorphism ids certified pairwise distinct: two ids are distinct
/// when some carrier of one is registered disjoint from some carrier of the
/// other. Candidates are the ids shared by consecutive chain members plus the
/// ids of the extra carriers (indexed after the chain).
inline QmorCount count_distinct_qmor(const std::vector<SpectralClass>& chain, const DisjointnessRegistry& reg,
                                     const std::vector<SpectralClass>& extras = {})
{
    const int m = static_cast<int>(chain.size());
    const int total = m + static_cast<int>(extras.size());
    auto carrier = [&](int c) -> const SpectralClass& {
        return c < m ? chain[static_cast<std::size_t>(c)] : extras[static_cast<std::size_t>(c - m)];
    };
    std::vector<int> ids;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<int> common;
            std::set_intersection(chain[static_cast<std::size_t>(i)].ids().begin(),
                                  chain[static_cast<std::size_t>(i)].ids().end(),
                                  chain[static_cast<std::size_t>(j)].ids().begin(),
                                  chain[static_cast<std::size_t>(j)].ids().end(), std::back_inserter(common));
            if (j == i + 1 && common.size() != 1)
                raise(Errc::ChainMalformed,
                      "consecutive members share " + std::to_string(common.size()) + " ids, expected 1", {i, j});
            if (j > i + 1 && !common.empty())
                raise(Errc::ChainMalformed, "non-consecutive members share an id", {i, j});
            if (j == i + 1)
                ids.push_back(common[0]);
        }
    for (const auto& [a, b] : reg.pairs()) {
        if (a < 0 || b >= total)
            raise(Errc::InvalidArgument, "registry references an unknown carrier", {a, b});
        if (b == a + 1 && b < m)
            raise(Errc::InvalidArgument, "consecutive chain members intersect and cannot be disjoint", {a, b});
    }
    for (const auto& e : extras)
        for (int id : e.ids())
            if (std::find(ids.begin(), ids.end(), id) == ids.end())
                ids.push_back(id);

    const std::size_t n = ids.size();
    std::vector<std::vector<bool>> cert(n, std::vector<bool>(n));
    QmorCount out;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            std::optional<std::pair<int, int>> why;
            for (int a = 0; a < total && !why; ++a) {
                if (!carrier(a).ids().count(ids[x]))
                    continue;
                for (int b = 0; b < total && !why; ++b)
                    if (carrier(b).ids().count(ids[y]) && a != b && reg.disjoint(a, b))
                        why = std::pair{std::min(a, b), std::max(a, b)};
            }
            if (why) {
                cert[x][y] = cert[y][x] = true;
                out.certificates.push_back({ids[x], ids[y], *why});
            }
        }

    // largest clique; candidate sets are small (at most a dozen ids)
    std::vector<std::size_t> best, cur;
    auto grow = [&](auto&& self, std::size_t from) -> void {
        if (cur.size() > best.size())
            best = cur;
        for (std::size_t v = from; v < n; ++v) {
            if (!std::all_of(cur.begin(), cur.end(), [&](std::size_t u) { return cert[u][v]; }))
                continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    grow(grow, 0);
    out.count = best.size();
    for (std::size_t v : best)
        out.ids.push_back(ids[v]);
    return out;
}

/// Spectral classes of a labeling's vertices, in the given order, with ids
/// registered as abstract idempotents named by their label number.
inline std::vector<SpectralClass> spectral_chain(IdempotentPool& pool, const Labeling& lab,
                                                 const std::vector<int>& order)
{
    std::vector<SpectralClass> out;
    for (int v : order) {
        std::set<int> ids;
        for (int x : lab.at(static_cast<std::size_t>(v)))
            ids.insert(pool.add_abstract(std::to_string(x)));
        out.push_back(SpectralClass::make(pool, std::move(ids)));
    }
    return out;
}

/// Registry declaring every non-consecutive pair of an m-chain disjoint.
inline DisjointnessRegistry chain_registry(int m)
{
    DisjointnessRegistry r;
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j)
            r.declare(i, j);
    return r;
}

} // namespace qhwb
