#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qhwb/error.hpp"

namespace qhwb {

inline constexpr int kMaxConfigVertices = 12;

/// Simple undirected graph on vertices 0..n-1.
class ConfigGraph {
public:
    ConfigGraph() = default;

    /// Edges are 0-based vertex pairs; loops and repeated edges are rejected.
    static ConfigGraph make(int vertex_count, const std::vector<std::pair<int, int>>& edges)
    {
        if (vertex_count < 1)
            raise(Errc::InvalidArgument, "a configuration needs at least one vertex");
        ConfigGraph g;
        g.n_ = vertex_count;
        g.adj_.assign(static_cast<std::size_t>(vertex_count), std::vector<bool>(static_cast<std::size_t>(vertex_count)));
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
                raise(Errc::InvalidArgument, "edge references a missing vertex", {u, v});
            if (u == v)
                raise(Errc::InvalidArgument, "loops are not allowed", {u, v});
            if (u > v)
                std::swap(u, v);
            if (!g.edges_.insert({u, v}).second)
                raise(Errc::InvalidArgument, "duplicate edge", {u, v});
            g.adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
            g.adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
        }
        return g;
    }

    int vertex_count() const noexcept { return n_; }
    const std::set<std::pair<int, int>>& edges() const noexcept { return edges_; }
    bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }

    int degree(int v) const
    {
        return static_cast<int>(std::count(adj_[static_cast<std::size_t>(v)].begin(),
                                           adj_[static_cast<std::size_t>(v)].end(), true));
    }

    /// True when some connected component has at least as many edges as vertices.
    bool has_cycle() const
    {
        std::vector<int> comp(static_cast<std::size_t>(n_), -1);
        int c = 0;
        for (int s = 0; s < n_; ++s) {
            if (comp[static_cast<std::size_t>(s)] >= 0)
                continue;
            std::vector<int> stack{s};
            comp[static_cast<std::size_t>(s)] = c;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v = 0; v < n_; ++v)
                    if (adjacent(u, v) && comp[static_cast<std::size_t>(v)] < 0) {
                        comp[static_cast<std::size_t>(v)] = c;
                        stack.push_back(v);
                    }
            }
            ++c;
        }
        // a forest has exactly n - (components) edges
        return static_cast<int>(edges_.size()) > n_ - c;
    }

    /// Vertices of g in path order when g is a path (A_m shape).
    std::optional<std::vector<int>> path_order() const
    {
        if (static_cast<int>(edges_.size()) != n_ - 1 || has_cycle())
            return std::nullopt;
        int start = 0;
        for (int v = 0; v < n_; ++v) {
            if (degree(v) > 2)
                return std::nullopt;
            if (degree(v) <= 1) {
                start = v;
                break;
            }
        }
        std::vector<int> order{start};
        std::vector<bool> seen(static_cast<std::size_t>(n_));
        seen[static_cast<std::size_t>(start)] = true;
        while (static_cast<int>(order.size()) < n_) {
            int next = -1;
            for (int v = 0; v < n_; ++v)
                if (!seen[static_cast<std::size_t>(v)] && adjacent(order.back(), v))
                    next = v;
            if (next < 0)
                return std::nullopt;
            seen[static_cast<std::size_t>(next)] = true;
            order.push_back(next);
        }
        return order;
    }

    friend bool operator==(const ConfigGraph& a, const ConfigGraph& b)
    {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::set<std::pair<int, int>> edges_;
    std::vector<std::vector<bool>> adj_;
};

/// Dynkin graphs. A_m: path. D_m: path on m-1 vertices plus a leaf on the
/// second-to-last one (D_4 is the star). E_m: path on m-1 vertices plus a
/// leaf on the third vertex.
inline ConfigGraph dynkin(char type, int m)
{
    std::vector<std::pair<int, int>> e;
    auto path = [&](int len) {
        for (int i = 0; i + 1 < len; ++i)
            e.emplace_back(i, i + 1);
    };
    switch (type) {
    case 'A':
        if (m < 1)
            break;
        path(m);
        return ConfigGraph::make(m, e);
    case 'D':
        if (m < 4)
            break;
        path(m - 1);
        e.emplace_back(m - 3, m - 1);
        return ConfigGraph::make(m, e);
    case 'E':
        if (m < 6 || m > 8)
            break;
        path(m - 1);
        e.emplace_back(2, m - 1);
        return ConfigGraph::make(m, e);
    default:
        break;
    }
    raise(Errc::InvalidDynkinParameters, std::string("no Dynkin diagram ") + type + std::to_string(m));
}

/// Even: n even. OddGood: n odd and (n+1)/(2 N_X) not an integer.
class ParityCase {
public:
    enum class Tag { Even, OddGood };

    static ParityCase from(long n, long minimal_chern)
    {
        if (n < 1 || minimal_chern < 1)
            raise(Errc::InvalidArgument, "n and the minimal Chern number must be positive");
        if (n % 2 == 0)
            return ParityCase(Tag::Even);
        if ((n + 1) % (2 * minimal_chern) != 0)
            return ParityCase(Tag::OddGood);
        raise(Errc::ParityUnsupported, "n odd with (n+1)/(2 N_X) an integer is not covered",
              {static_cast<int>(n), static_cast<int>(minimal_chern)});
    }
    static ParityCase even() { return ParityCase(Tag::Even); }
    static ParityCase odd_good() { return ParityCase(Tag::OddGood); }

    Tag tag() const noexcept { return tag_; }
    bool is_even() const noexcept { return tag_ == Tag::Even; }
    const char* name() const noexcept { return is_even() ? "even" : "oddgood"; }
    friend bool operator==(ParityCase, ParityCase) = default;

private:
    explicit ParityCase(Tag t) : tag_(t) {}
    Tag tag_;
};

/// Per-vertex idempotent ids (1-based): two per vertex in the even case, one otherwise.
using Labeling = std::vector<std::vector<int>>;

/// Rule for one vertex pair: edges share exactly one id (even) or carry the
/// same id (odd); non-edges share nothing.
struct Constraint {
    int u = 0, v = 0;
    bool edge = false;
    friend bool operator==(const Constraint&, const Constraint&) = default;
};

inline std::string to_string(const Constraint& c, ParityCase p)
{
    const std::string pair = std::to_string(c.u + 1) + "-" + std::to_string(c.v + 1);
    if (c.edge)
        return "edge " + pair + (p.is_even() ? ": share exactly one" : ": equal");
    return "non-edge " + pair + (p.is_even() ? ": share none" : ": distinct");
}

/// All vertex-pair constraints of g in lexicographic pair order.
inline std::vector<Constraint> constraints_of(const ConfigGraph& g)
{
    std::vector<Constraint> out;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            out.push_back({u, v, g.adjacent(u, v)});
    return out;
}

struct Verdict {
    bool sat = false;
    Labeling witness;                   // when sat
    std::vector<Constraint> conflict_core; // when unsat
    bool outside_theorem_suite = false;  // graph has a cycle
};

namespace detail {

inline int shared_ids(const std::vector<int>& a, const std::vector<int>& b)
{
    int n = 0;
    for (int x : a)
        n += static_cast<int>(std::count(b.begin(), b.end(), x));
    return n;
}

inline bool holds(const Constraint& c, const std::vector<int>& a, const std::vector<int>& b)
{
    // with single ids (odd case) "share one" is equality
    const int s = shared_ids(a, b);
    return c.edge ? s == 1 : s == 0;
}

/// Backtracking over vertices in index order. New ids enter in increasing
/// order (id permutations preserve every constraint), so the first solution
/// found is canonical.
inline std::optional<Labeling> solve(int n, const std::vector<Constraint>& cs, ParityCase p)
{
    std::vector<std::vector<const Constraint*>> back(static_cast<std::size_t>(n));
    for (const auto& c : cs)
        back[static_cast<std::size_t>(c.v)].push_back(&c);

    // candidate labels with the largest id they use
    std::vector<std::vector<int>> cands;
    const int pool = p.is_even() ? 2 * n : n;
    if (p.is_even()) {
        for (int b = 2; b <= pool; ++b)
            for (int a = b - 1; a >= 1; --a)
                cands.push_back({a, b});
    } else {
        for (int a = 1; a <= pool; ++a)
            cands.push_back({a});
    }

    Labeling lab(static_cast<std::size_t>(n));
    std::function<bool(int, int)> go = [&](int v, int used) -> bool {
        if (v == n)
            return true;
        for (const auto& c : cands) {
            const int hi = c.back();
            if (hi > used + static_cast<int>(c.size()))
                break;
            // fresh ids must be exactly used+1, used+2, ...
            int fresh = 0;
            for (int x : c)
                if (x > used)
                    ++fresh;
            if (fresh > 0 && hi != used + fresh)
                continue;
            if (fresh == 2 && c[0] != used + 1)
                continue;
            bool ok = true;
            for (const Constraint* k : back[static_cast<std::size_t>(v)])
                if (!holds(*k, lab[static_cast<std::size_t>(k->u)], c)) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            lab[static_cast<std::size_t>(v)] = c;
            if (go(v + 1, std::max(used, hi)))
                return true;
        }
        return false;
    };
    if (go(0, 0))
        return lab;
    return std::nullopt;
}

} // namespace detail

/// Independent validation of a labeling against the rules (does not use the solver).
inline bool check_labeling(const ConfigGraph& g, ParityCase p, const Labeling& lab)
{
    if (static_cast<int>(lab.size()) != g.vertex_count())
        return false;
    const std::size_t width = p.is_even() ? 2 : 1;
    for (const auto& l : lab) {
        if (l.size() != width)
            return false;
        if (width == 2 && l[0] == l[1])
            return false;
    }
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            std::set<int> a(lab[static_cast<std::size_t>(u)].begin(), lab[static_cast<std::size_t>(u)].end());
            int common = 0;
            for (int x : lab[static_cast<std::size_t>(v)])
                common += static_cast<int>(a.count(x));
            if (g.adjacent(u, v) ? common != 1 : common != 0)
                return false;
        }
    return true;
}

/// Is the set of constraints satisfiable on n vertices? Vertices no
/// constraint touches take fresh ids, so only the touched ones are searched.
inline bool feasible(int n, const std::vector<Constraint>& cs, ParityCase p)
{
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    for (const auto& c : cs)
        index[static_cast<std::size_t>(c.u)] = index[static_cast<std::size_t>(c.v)] = 0;
    int k = 0;
    for (auto& i : index)
        if (i == 0)
            i = k++;
    std::vector<Constraint> local;
    local.reserve(cs.size());
    for (const auto& c : cs)
        local.push_back({index[static_cast<std::size_t>(c.u)], index[static_cast<std::size_t>(c.v)], c.edge});
    return detail::solve(k, local, p).has_value();
}

/// Decides whether g admits an idempotent labeling. UNSAT verdicts carry a
/// deletion-minimal conflict core over the constraints in canonical order.
inline Verdict admissible(const ConfigGraph& g, ParityCase p)
{
    if (g.vertex_count() > kMaxConfigVertices)
        raise(Errc::GraphTooLarge, "configuration has " + std::to_string(g.vertex_count()) + " vertices, cap is " +
                                       std::to_string(kMaxConfigVertices));
    Verdict out;
    out.outside_theorem_suite = g.has_cycle();
    const auto cs = constraints_of(g);
    const int n = g.vertex_count();
    if (auto lab = detail::solve(n, cs, p)) {
        out.sat = true;
        out.witness = std::move(*lab);
        if (!check_labeling(g, p, out.witness))
            raise(Errc::AssertionFailed, "solver witness fails the independent check");
        return out;
    }
    // shortest infeasible prefix first, then deletion inside it
    std::size_t len = 1;
    while (feasible(n, {cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(len)}, p))
        ++len;
    std::vector<Constraint> core(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(len));
    for (std::size_t i = 0; i < core.size();) {
        std::vector<Constraint> trial = core;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (!feasible(n, trial, p))
            core = std::move(trial);
        else
            ++i;
    }
    out.conflict_core = std::move(core);
    return out;
}

// ---- blowup lattice ----

/// H_2 of CP^2 blown up at k points: basis H, E_1..E_k with H.H = 1, E_i.E_j = -delta_ij.
struct BlowupLattice {
    int k = 0;
    std::size_t rank() const noexcept { return static_cast<std::size_t>(k) + 1; }
};

/// Integer coordinates (h, e_1, ..., e_k) of h H + sum e_i E_i.
using LatticeClass = std::vector<long>;

inline void check_class(const BlowupLattice& L, const LatticeClass& c)
{
    if (c.size() != L.rank())
        raise(Errc::DimensionMismatch, "lattice class has " + std::to_string(c.size()) + " coordinates, expected " +
                                           std::to_string(L.rank()));
}

inline long lattice_pair(const BlowupLattice& L, const LatticeClass& a, const LatticeClass& b)
{
    check_class(L, a);
    check_class(L, b);
    long s = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i)
        s -= a[i] * b[i];
    return s;
}

/// c_1 = 3H - E_1 - ... - E_k.
inline LatticeClass first_chern(const BlowupLattice& L)
{
    LatticeClass c(L.rank(), -1);
    c[0] = 3;
    return c;
}

struct SphereClassReport {
    bool ok = false;
    long square = 0;
    long c1_pairing = 0;
};

/// A Lagrangian sphere class in a surface has square -2 and pairs to zero with c_1.
inline SphereClassReport verify_sphere_class(const BlowupLattice& L, const LatticeClass& c)
{
    SphereClassReport r;
    r.square = lattice_pair(L, c, c);
    r.c1_pairing = lattice_pair(L, c, first_chern(L));
    r.ok = r.square == -2 && r.c1_pairing == 0;
    return r;
}

inline std::string to_string(const LatticeClass& c)
{
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0)
            continue;
        const std::string name = i == 0 ? "H" : "E" + std::to_string(i);
        const long m = c[i] < 0 ? -c[i] : c[i];
        const std::string term = m == 1 ? name : std::to_string(m) + "*" + name;
        if (out.empty())
            out = c[i] < 0 ? "-" + term : term;
        else
            out += (c[i] < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

struct ChainResult {
    ConfigGraph graph;
    Verdict verdict;
};

/// Intersection graph of sphere classes (edge iff pairing is +-1) and its admissibility.
inline ChainResult chain_check(const BlowupLattice& L, const std::vector<LatticeClass>& classes, ParityCase p)
{
    if (classes.empty())
        raise(Errc::InvalidArgument, "no classes given");
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (!verify_sphere_class(L, classes[i]).ok)
            raise(Errc::PreconditionViolated, to_string(classes[i]) + " is not a sphere class",
                  {static_cast<int>(i)});
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            const long v = lattice_pair(L, classes[i], classes[j]);
            if (v < -1 || v > 1)
                raise(Errc::BadPairing, "pairing " + std::to_string(v) + " outside {-1, 0, 1}",
                      {static_cast<int>(i), static_cast<int>(j), static_cast<int>(v)});
            if (v != 0)
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    ChainResult r{ConfigGraph::make(static_cast<int>(classes.size()), edges), {}};
    r.verdict = admissible(r.graph, p);
    return r;
}

} // namespace qhwb
