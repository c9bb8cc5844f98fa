#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qhwb/algebra.hpp"
#include "qhwb/config.hpp"
#include "qhwb/dsl.hpp"
#include "qhwb/spectral.hpp"
#include "qhwb/sphere.hpp"

namespace qhwb::dsl {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchema = 1;

struct RunOptions {
    bool sparse = false;
    std::size_t max_dim = kDefaultMaxDim;
    std::optional<std::string> only; // run only commands with this keyword
};

struct RunResult {
    int exit_code = 0;
    Json json;
    std::string text;
};

inline const char* category_name(ErrorCategory c)
{
    switch (c) {
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Validation: return "validation";
    case ErrorCategory::Math: return "math";
    case ErrorCategory::Assertion: return "assertion";
    }
    return "";
}

namespace detail {

/// Either a scalar or an algebra element during evaluation.
struct Value {
    bool is_element = false;
    NovikovScalar scalar;
    Element element;
};

struct EvalContext {
    NumberField field;
    const AlgebraBlock* block = nullptr;
    std::optional<Element> unit; // lets bare scalars stand for multiples of 1
    const Algebra* algebra = nullptr;
};

[[noreturn]] inline void eval_fail(const Expr& e, const std::string& msg)
{
    raise(Errc::InvalidArgument,
          "line " + std::to_string(e.pos.line) + ", column " + std::to_string(e.pos.column) + ": " + msg);
}

inline Element as_element(const Value& v, const EvalContext& ctx, const Expr& at)
{
    if (v.is_element)
        return v.element;
    if (v.scalar.is_zero())
        return Element::zero(ctx.block->basis.size());
    if (!ctx.unit)
        eval_fail(at, "expected an element, found the scalar " + to_string(v.scalar));
    return v.scalar * *ctx.unit;
}

inline Value eval(const Expr& e, const EvalContext& ctx)
{
    auto scalar = [](NovikovScalar s) { return Value{false, std::move(s), {}}; };
    auto element = [](Element x) { return Value{true, {}, std::move(x)}; };
    switch (e.kind) {
    case Expr::Kind::Num: return scalar(NovikovScalar(parse_rational(e.text)));
    case Expr::Kind::Gen:
        if (ctx.field.is_rationals())
            eval_fail(e, "generator 't' used over the rationals");
        return scalar(NovikovScalar(FieldElem::generator(ctx.field)));
    case Expr::Kind::Tvar: return scalar(NovikovScalar::T());
    case Expr::Kind::Name:
        return element(Element::basis(ctx.block->basis.size(), *ctx.block->basis_index(e.text)));
    case Expr::Kind::Neg: {
        Value v = eval(*e.lhs, ctx);
        return v.is_element ? element(-v.element) : scalar(-v.scalar);
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        const Value a = eval(*e.lhs, ctx), b = eval(*e.rhs, ctx);
        const bool add = e.kind == Expr::Kind::Add;
        if (!a.is_element && !b.is_element)
            return scalar(add ? a.scalar + b.scalar : a.scalar - b.scalar);
        const Element x = as_element(a, ctx, *e.lhs), y = as_element(b, ctx, *e.rhs);
        return element(add ? x + y : x - y);
    }
    case Expr::Kind::Mul: {
        const Value a = eval(*e.lhs, ctx), b = eval(*e.rhs, ctx);
        if (!a.is_element && !b.is_element)
            return scalar(a.scalar * b.scalar);
        if (!a.is_element)
            return element(a.scalar * b.element);
        if (!b.is_element)
            return element(b.scalar * a.element);
        if (!ctx.algebra)
            eval_fail(e, "products of elements are only available once the algebra is built");
        return element(ctx.algebra->mul(a.element, b.element));
    }
    case Expr::Kind::Div: {
        const Value a = eval(*e.lhs, ctx), b = eval(*e.rhs, ctx);
        if (b.is_element)
            eval_fail(e, "cannot divide by an element");
        const NovikovScalar inv = NovikovScalar(1) / b.scalar;
        return a.is_element ? element(inv * a.element) : scalar(a.scalar * inv);
    }
    case Expr::Kind::Pow: {
        if (e.lhs->kind == Expr::Kind::Tvar)
            return scalar(NovikovScalar::T(e.exponent));
        const long k = e.exponent.get_num().get_si();
        const Value b = eval(*e.lhs, ctx);
        if (!b.is_element) {
            NovikovScalar r(1);
            for (long i = 0; i < (k < 0 ? -k : k); ++i)
                r = r * b.scalar;
            return scalar(k < 0 ? NovikovScalar(1) / r : r);
        }
        if (k < 0)
            eval_fail(e, "negative powers of elements are not defined");
        if (!ctx.algebra)
            eval_fail(e, "powers of elements are only available once the algebra is built");
        Element r = ctx.algebra->unit();
        for (long i = 0; i < k; ++i)
            r = ctx.algebra->mul(r, b.element);
        return element(r);
    }
    }
    return {};
}

inline RatPoly eval_modulus(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Num: return RatPoly(parse_rational(e.text));
    case Expr::Kind::Gen: return RatPoly::x();
    case Expr::Kind::Neg: return RatPoly() - eval_modulus(*e.lhs);
    case Expr::Kind::Add: return eval_modulus(*e.lhs) + eval_modulus(*e.rhs);
    case Expr::Kind::Sub: return eval_modulus(*e.lhs) - eval_modulus(*e.rhs);
    case Expr::Kind::Mul: return eval_modulus(*e.lhs) * eval_modulus(*e.rhs);
    case Expr::Kind::Div: {
        const RatPoly d = eval_modulus(*e.rhs);
        if (d.degree() != 0)
            eval_fail(e, "the modulus may only be divided by constants");
        return (Rational(1) / d.coeffs()[0]) * eval_modulus(*e.lhs);
    }
    case Expr::Kind::Pow: {
        if (sgn(e.exponent) < 0)
            eval_fail(e, "negative power in the modulus");
        RatPoly r(Rational(1));
        const RatPoly b = eval_modulus(*e.lhs);
        for (long i = 0; i < e.exponent.get_num().get_si(); ++i)
            r = r * b;
        return r;
    }
    default: eval_fail(e, "the modulus is a polynomial in t");
    }
}

/// Integer combination of H, E1..Ek: (is a constant, constant, class).
struct LatticeValue {
    bool constant = true;
    long c = 0;
    LatticeClass v;
};

inline LatticeValue eval_lattice(const Expr& e, std::size_t rank)
{
    auto cls = [&](const LatticeValue& x) {
        if (!x.constant)
            return x.v;
        if (x.c != 0)
            eval_fail(e, "a lattice class cannot contain a bare constant");
        return LatticeClass(rank, 0);
    };
    switch (e.kind) {
    case Expr::Kind::Num: {
        const Rational r = parse_rational(e.text);
        if (!r.get_num().fits_slong_p())
            eval_fail(e, "coefficient out of range");
        return {true, r.get_num().get_si(), {}};
    }
    case Expr::Kind::Name: {
        LatticeClass v(rank, 0);
        v[e.text == "H" ? 0 : static_cast<std::size_t>(std::stol(e.text.substr(1)))] = 1;
        return {false, 0, v};
    }
    case Expr::Kind::Neg: {
        LatticeValue x = eval_lattice(*e.lhs, rank);
        x.c = -x.c;
        for (auto& a : x.v)
            a = -a;
        return x;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        const LatticeValue a = eval_lattice(*e.lhs, rank), b = eval_lattice(*e.rhs, rank);
        const long s = e.kind == Expr::Kind::Add ? 1 : -1;
        if (a.constant && b.constant)
            return {true, a.c + s * b.c, {}};
        LatticeClass x = cls(a), y = cls(b);
        for (std::size_t i = 0; i < rank; ++i)
            x[i] += s * y[i];
        return {false, 0, x};
    }
    case Expr::Kind::Mul: {
        const LatticeValue a = eval_lattice(*e.lhs, rank), b = eval_lattice(*e.rhs, rank);
        if (!a.constant && !b.constant)
            eval_fail(e, "lattice classes cannot be multiplied");
        if (a.constant && b.constant)
            return {true, a.c * b.c, {}};
        const LatticeValue& k = a.constant ? a : b;
        LatticeClass x = a.constant ? b.v : a.v;
        for (auto& c : x)
            c *= k.c;
        return {false, 0, x};
    }
    default: eval_fail(e, "lattice classes are integer combinations of H and E1..Ek");
    }
}

} // namespace detail

/// The presentation an algebra block describes, with options applied.
inline AlgebraPresentation lower(const AlgebraBlock& b, const RunOptions& opt)
{
    AlgebraPresentation p;
    if (b.field_modulus)
        p.field = NumberField::make(detail::eval_modulus(*b.field_modulus));
    for (const auto& x : b.basis)
        p.basis_names.push_back(x.name);
    detail::EvalContext ctx{p.field, &b, std::nullopt, nullptr};
    const Element unit = detail::as_element(detail::eval(*b.unit, ctx), ctx, *b.unit);
    p.unit_element = unit.coords();
    ctx.unit = unit;
    for (const auto& pr : b.products) {
        const std::pair key{*b.basis_index(pr.a), *b.basis_index(pr.b)};
        if (p.structure_constants.count(key))
            raise(Errc::InvalidArgument, "product " + pr.a + " * " + pr.b + " is given twice",
                  {static_cast<int>(key.first), static_cast<int>(key.second)});
        p.structure_constants[key] = detail::as_element(detail::eval(*pr.rhs, ctx), ctx, *pr.rhs).coords();
    }
    p.sparse = opt.sparse;
    p.max_dim = opt.max_dim;
    if (b.t_degree) {
        p.t_degree = *b.t_degree;
        std::vector<long> deg;
        for (const auto& x : b.basis)
            deg.push_back(x.degree);
        p.degrees = deg;
    }
    p.parity_n = b.n;
    p.novikov_n = b.novikov_n;
    if (b.integration) {
        Vec v;
        for (const auto& e : *b.integration) {
            const auto val = detail::eval(*e, ctx);
            if (val.is_element)
                detail::eval_fail(*e, "integration values are scalars");
            v.push_back(val.scalar);
        }
        p.integration = v;
    }
    return p;
}

inline Element class_element(const AlgebraBlock& b, const Algebra& A, const Expr& e)
{
    detail::EvalContext ctx{A.field(), &b, A.unit(), &A};
    return detail::as_element(detail::eval(e, ctx), ctx, e);
}

/// Reads a scalar in the rendering grammar, e.g. `1/(1 - T)` or `(1 + t)*T^{1/2}`.
inline NovikovScalar parse_scalar(std::string_view text, const NumberField& field = {})
{
    const ExprPtr e = Parser(text).parse_scalar();
    const auto v = detail::eval(*e, {field, nullptr, std::nullopt, nullptr});
    return v.scalar;
}

inline LatticeClass lattice_class(const LatticeBlock& b, const Expr& e)
{
    const auto rank = static_cast<std::size_t>(b.k) + 1;
    auto v = detail::eval_lattice(e, rank);
    if (v.constant) {
        if (v.c != 0)
            detail::eval_fail(e, "a lattice class cannot be a bare constant");
        return LatticeClass(rank, 0);
    }
    return v.v;
}

/// Executes a parsed document; algebras are built on first use.
class Runner {
public:
    Runner(const Document& doc, RunOptions opt) : doc_(doc), opt_(std::move(opt)) {}

    RunResult run()
    {
        RunResult r;
        r.json["schema"] = kJsonSchema;
        r.json["results"] = Json::array();
        for (const Command* c : doc_.commands()) {
            if (opt_.only && *opt_.only != command_name(c->kind))
                continue;
            Json entry;
            entry["command"] = command_name(c->kind);
            entry["line"] = c->pos.line;
            std::string text = std::string("[") + command_name(c->kind) + "] ";
            int code = 0;
            try {
                code = execute(*c, entry, text);
            } catch (const Error& e) {
                code = static_cast<int>(e.category());
                Json err;
                err["code"] = errc_name(e.code());
                err["category"] = category_name(e.category());
                err["message"] = e.what();
                if (!e.indices().empty())
                    err["indices"] = e.indices();
                if (!e.witness().empty())
                    err["witness"] = e.witness();
                entry["ok"] = false;
                entry["error"] = err;
                text += std::string("error (") + category_name(e.category()) + "): " + e.what() + "\n";
            }
            if (!entry.contains("ok"))
                entry["ok"] = code == 0;
            if (r.exit_code == 0)
                r.exit_code = code;
            r.json["results"].push_back(std::move(entry));
            r.text += text;
        }
        return r;
    }

private:
    const Algebra& algebra(const std::string& name)
    {
        auto it = built_.find(name);
        if (it == built_.end())
            it = built_.emplace(name, alg_make(lower(*doc_.find<AlgebraBlock>(name), opt_))).first;
        return it->second;
    }

    static Json coords(const Element& x)
    {
        Json a = Json::array();
        for (std::size_t i = 0; i < x.dim(); ++i)
            a.push_back(to_string(x[i]));
        return a;
    }

    static ParityCase parity_of(const std::string& p) { return p == "oddgood" ? ParityCase::odd_good() : ParityCase::even(); }

    int execute(const Command& c, Json& out, std::string& text)
    {
        switch (c.kind) {
        case Command::Kind::Check: return run_check(c, out, text);
        case Command::Kind::Semisimple: return run_semisimple(c, out, text);
        case Command::Kind::Decompose: return run_decompose(c, out, text);
        case Command::Kind::Sphere: return run_sphere(c, out, text);
        case Command::Kind::Dehn: return run_dehn(c, out, text);
        case Command::Kind::Config: return run_config(c, out, text);
        case Command::Kind::Lattice: return run_lattice(c, out, text);
        }
        return 0;
    }

    int run_check(const Command& c, Json& out, std::string& text)
    {
        out["algebra"] = c.algebra;
        const Algebra& A = algebra(c.algebra);
        out["dim"] = A.dim();
        out["graded"] = A.graded();
        text += c.algebra + ": valid, dimension " + std::to_string(A.dim()) + (A.graded() ? ", graded" : "") + "\n";
        return 0;
    }

    int run_semisimple(const Command& c, Json& out, std::string& text)
    {
        out["algebra"] = c.algebra;
        const Algebra& A = algebra(c.algebra);
        const NovikovScalar det = determinant(trace_form(A));
        out["semisimple"] = !det.is_zero();
        out["trace_form_det"] = to_string(det);
        text += c.algebra + ": " + (det.is_zero() ? "not semisimple" : "semisimple") + " (trace form determinant " +
                to_string(det) + ")\n";
        return 0;
    }

    int run_decompose(const Command& c, Json& out, std::string& text)
    {
        out["algebra"] = c.algebra;
        const Algebra& A = algebra(c.algebra);
        const auto es = decompose(A);
        Json list = Json::array();
        text += c.algebra + ": " + std::to_string(es.size()) + " idempotents\n";
        for (const auto& e : es) {
            Json j;
            j["coords"] = coords(e.element);
            j["ideal_dim"] = e.ideal_dimension;
            j["verified_field_unit"] = e.verified_field_unit;
            list.push_back(std::move(j));
            text += "  " + to_string(A, e.element) + "  (ideal dimension " + std::to_string(e.ideal_dimension) +
                    (e.verified_field_unit ? ", field factor" : "") + ")\n";
        }
        out["idempotents"] = std::move(list);
        return 0;
    }

    SphereClass sphere_of(const AlgebraBlock& b, const Algebra& A, const Expr& e)
    {
        return sphere_class(A, class_element(b, A, e));
    }

    int run_sphere(const Command& c, Json& out, std::string& text)
    {
        const AlgebraBlock& b = *doc_.find<AlgebraBlock>(c.algebra);
        const Algebra& A = algebra(c.algebra);
        const Expr& e = c.expr ? *c.expr : *doc_.find_class(c.a).second->expr;
        const std::string label = c.expr ? "(" + render(e) + ")" : c.a;
        out["algebra"] = c.algebra;
        out["class"] = label;
        const SphereClass l = sphere_of(b, A, e);
        const auto s = sphere_idempotents(A, l);
        out["element"] = coords(l.element);
        out["beta"] = to_string(s.beta);
        out["sqrt_beta"] = to_string(s.sqrt_beta);
        out["e_plus"] = coords(s.e_plus.element);
        out["e_minus"] = coords(s.e_minus.element);
        out["ideal_dims"] = {s.e_plus.ideal_dimension, s.e_minus.ideal_dimension};
        Json shared = Json::array();
        for (const auto& other : b.classes) {
            if (other.name == c.a)
                continue;
            try {
                const auto t = sphere_idempotents(A, sphere_of(b, A, *other.expr));
                if (shared_idempotents(s, t).count() > 0)
                    shared.push_back(other.name);
            } catch (const Error&) {
                // not a sphere class; reported by its own command
            }
        }
        out["shared_with"] = shared;
        text += label + " in " + c.algebra + ": beta = " + to_string(s.beta) + ", sqrt(beta) = " +
                to_string(s.sqrt_beta) + "\n  e+ = " + to_string(A, s.e_plus.element) +
                "\n  e- = " + to_string(A, s.e_minus.element) + "\n";
        if (!shared.empty()) {
            text += "  shares an idempotent with";
            for (const auto& n : shared)
                text += " " + n.get<std::string>();
            text += "\n";
        }
        return 0;
    }

    int run_dehn(const Command& c, Json& out, std::string& text)
    {
        const AlgebraBlock& b = *doc_.find<AlgebraBlock>(c.algebra);
        const Algebra& A = algebra(c.algebra);
        out["algebra"] = c.algebra;
        const SphereClass l = sphere_of(b, A, *doc_.find_class(c.a).second->expr);
        const SphereClass lp = sphere_of(b, A, *doc_.find_class(c.b).second->expr);
        if (*A.parity_n() % 2 != 0)
            raise(Errc::PreconditionViolated,
                  "n is odd: the Dehn check compares singleton classes from a configuration labeling");
        IdempotentPool pool;
        const auto r = dehn_inequality_check(A, l, lp, ParityCase::even(), pool);
        const Element tau = pl_transform(A, l, lp.element);
        out["mode"] = "even";
        out["subset_holds"] = r.subset_holds;
        out["transformed"] = coords(tau);
        Json sets;
        sets[c.a] = to_string(pool, r.l);
        sets[c.b] = to_string(pool, r.lp);
        sets["tau(" + c.b + ")"] = to_string(pool, r.tau);
        out["sets"] = sets;
        Json ids;
        for (std::size_t i = 0; i < pool.size(); ++i)
            ids[pool.at(static_cast<int>(i)).label] = coords(*pool.at(static_cast<int>(i)).element);
        out["idempotents"] = ids;
        text += "tau_" + c.a + "(" + c.b + ") = " + to_string(A, tau) + "\n  " + c.a + " " + to_string(pool, r.l) +
                ", " + c.b + " " + to_string(pool, r.lp) + ", twisted " + to_string(pool, r.tau) + ": " +
                (r.subset_holds ? "dominated" : "NOT dominated") + "\n";
        if (!r.subset_holds) {
            out["ok"] = false;
            return static_cast<int>(ErrorCategory::Assertion);
        }
        return 0;
    }

    static Json verdict_json(const Verdict& v, ParityCase p)
    {
        Json j;
        j["verdict"] = v.sat ? "SAT" : "UNSAT";
        j["witness"] = v.sat ? Json(v.witness) : Json(nullptr);
        Json core = Json::array();
        for (const auto& k : v.conflict_core)
            core.push_back(to_string(k, p));
        j["conflict_core"] = core;
        j["outside_theorem_suite"] = v.outside_theorem_suite;
        return j;
    }

    static std::string verdict_text(const Verdict& v, ParityCase p)
    {
        std::string t = v.sat ? "SAT" : "UNSAT";
        if (v.outside_theorem_suite)
            t += " (graph has a cycle: outside the tree cases)";
        t += "\n";
        if (v.sat) {
            t += "  witness:";
            for (const auto& l : v.witness) {
                t += " {";
                for (std::size_t i = 0; i < l.size(); ++i)
                    t += (i ? "," : "") + std::to_string(l[i]);
                t += "}";
            }
            t += "\n";
        } else {
            t += "  minimal conflict:\n";
            for (const auto& k : v.conflict_core)
                t += "    " + to_string(k, p) + "\n";
        }
        return t;
    }

    int run_config(const Command& c, Json& out, std::string& text)
    {
        const ConfigBlock& b = *doc_.find<ConfigBlock>(c.a);
        const ParityCase p = parity_of(c.parity);
        out["config"] = b.name;
        out["parity"] = p.name();
        std::vector<std::pair<int, int>> edges;
        for (const auto& [u, v] : b.edges)
            edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
        if (b.vertices > kMaxConfigVertices)
            raise(Errc::GraphTooLarge, "configuration has " + std::to_string(b.vertices) + " vertices, cap is " +
                                           std::to_string(kMaxConfigVertices));
        const auto g = ConfigGraph::make(static_cast<int>(b.vertices), edges);
        const Verdict v = admissible(g, p);
        out["vertices"] = b.vertices;
        out.update(verdict_json(v, p));
        text += b.name + " (" + p.name() + "): " + verdict_text(v, p);
        return 0;
    }

    int run_lattice(const Command& c, Json& out, std::string& text)
    {
        const LatticeBlock& b = *doc_.find<LatticeBlock>(c.a);
        const ParityCase p = parity_of(c.parity);
        out["lattice"] = b.name;
        out["parity"] = p.name();
        if (b.k < 0 || b.k > 64)
            raise(Errc::InvalidArgument, "number of blowups must lie in 0..64, got " + std::to_string(b.k));
        const BlowupLattice L{static_cast<int>(b.k)};
        std::vector<LatticeClass> classes;
        Json cls = Json::array();
        text += b.name + " (k = " + std::to_string(b.k) + ", " + p.name() + ")\n";
        for (const auto& d : b.classes) {
            classes.push_back(lattice_class(b, *d.expr));
            const auto rep = verify_sphere_class(L, classes.back());
            Json j;
            j["name"] = d.name;
            j["class"] = to_string(classes.back());
            j["square"] = rep.square;
            j["c1_pairing"] = rep.c1_pairing;
            j["sphere_class"] = rep.ok;
            cls.push_back(std::move(j));
            text += "  " + d.name + " = " + to_string(classes.back()) + ": square " + std::to_string(rep.square) +
                    ", c1 " + std::to_string(rep.c1_pairing) + (rep.ok ? "" : " (not a sphere class)") + "\n";
        }
        out["classes"] = cls;
        const auto r = chain_check(L, classes, p);
        Json edges = Json::array();
        for (const auto& [u, v] : r.graph.edges())
            edges.push_back({b.classes[static_cast<std::size_t>(u)].name, b.classes[static_cast<std::size_t>(v)].name});
        out["edges"] = edges;
        out.update(verdict_json(r.verdict, p));
        text += "  intersection graph:";
        for (const auto& e : edges)
            text += " " + e[0].get<std::string>() + "-" + e[1].get<std::string>();
        text += "\n  " + verdict_text(r.verdict, p);

        const auto order = r.graph.path_order();
        if (!r.verdict.sat || !order) {
            out["count"] = nullptr;
            return 0;
        }
        IdempotentPool pool;
        const auto chain = spectral_chain(pool, r.verdict.witness, *order);
        const int m = static_cast<int>(chain.size());
        auto reg = chain_registry(m);
        std::vector<SpectralClass> extras;
        std::vector<std::string> carrier;
        for (int v : *order)
            carrier.push_back(b.classes[static_cast<std::size_t>(v)].name);
        for (const auto& t : b.tori) {
            extras.push_back(SpectralClass::make(pool, {pool.add_abstract(t.name)}));
            carrier.push_back(t.name);
            for (int i = 0; i < m; ++i)
                reg.declare(i, static_cast<int>(carrier.size()) - 1);
        }
        const auto q = count_distinct_qmor(chain, reg, extras);
        Json count;
        count["count"] = q.count;
        Json ids = Json::array();
        for (int id : q.ids)
            ids.push_back(pool.at(id).label);
        count["ids"] = ids;
        Json certs = Json::array();
        for (const auto& k : q.certificates)
            certs.push_back({pool.at(k.id_a).label, pool.at(k.id_b).label,
                             {carrier[static_cast<std::size_t>(k.disjoint_pair.first)],
                              carrier[static_cast<std::size_t>(k.disjoint_pair.second)]}});
        count["certificates"] = certs;
        out["count"] = count;
        text += "  distinct quasimorphisms certified: " + std::to_string(q.count) + "\n";
        return 0;
    }

    const Document& doc_;
    RunOptions opt_;
    std::map<std::string, Algebra> built_;
};

inline RunResult run(const Document& doc, const RunOptions& opt = {}) { return Runner(doc, opt).run(); }

/// Parses and runs; parse failures give exit code 1 and a positioned diagnostic.
inline RunResult run_source(std::string_view src, const RunOptions& opt = {})
{
    Document doc;
    try {
        doc = parse(src);
    } catch (const ParseError& e) {
        RunResult r;
        r.exit_code = static_cast<int>(ErrorCategory::Parse);
        const Diagnostic& d = e.diagnostic();
        r.json["schema"] = kJsonSchema;
        r.json["diagnostics"] = Json::array(
            {{{"severity", d.severity}, {"message", d.message}, {"line", d.line}, {"column", d.column}}});
        r.text = std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.severity + ": " + d.message + "\n";
        return r;
    }
    return run(doc, opt);
}

} // namespace qhwb::dsl
