#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qhwb/error.hpp"
#include "qhwb/rational.hpp"

namespace qhwb::dsl {

struct Pos {
    int line = 1, column = 1;
    friend bool operator==(const Pos&, const Pos&) = default;
};

struct Diagnostic {
    std::string severity = "error";
    std::string message;
    int line = 0, column = 0;
};

/// Parse failure with a source position. `expected` is set for syntax errors.
class ParseError : public Error {
public:
    ParseError(Errc code, Pos pos, std::string message, std::string expected = {})
        : Error(code, std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
          diag_{"error", std::string(errc_name(code)) + ": " + message, pos.line, pos.column},
          expected_(std::move(expected))
    {
    }
    const Diagnostic& diagnostic() const noexcept { return diag_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    Diagnostic diag_;
    std::string expected_;
};

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    Pos pos;
};

/// Identifiers may carry trailing primes (L'), `#` starts a line comment.
inline std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    Pos pos;
    std::size_t i = 0;
    auto advance = [&] {
        if (src[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
        ++i;
    };
    while (i < src.size()) {
        const unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            advance();
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                advance();
            continue;
        }
        Token t;
        t.pos = pos;
        const std::size_t start = i;
        if (std::isalpha(c) || c == '_') {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                advance();
            while (i < src.size() && src[i] == '\'')
                advance();
            t.kind = Token::Kind::Ident;
        } else if (std::isdigit(c)) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                advance();
            t.kind = Token::Kind::Int;
        } else if (std::string_view("{}[]():;,=*/+-^").find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            t.kind = Token::Kind::Punct;
        } else {
            throw ParseError(Errc::SyntaxError, pos, std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        t.text = std::string(src.substr(start, i - start));
        out.push_back(std::move(t));
    }
    out.push_back({Token::Kind::End, "", pos});
    return out;
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Arithmetic over integers, the field generator `t`, `T` and names.
/// `Pow` raises to `exponent`, which may be fractional only on `T`.
struct Expr {
    enum class Kind { Num, Gen, Tvar, Name, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Num;
    std::string text; // digits for Num, identifier for Name
    ExprPtr lhs, rhs;
    Rational exponent;
    Pos pos;
};

namespace detail {

inline int precedence(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
    }
}

} // namespace detail

/// Canonical text of an expression, with the minimal parentheses the parser needs.
inline std::string render(const Expr& e)
{
    auto sub = [](const ExprPtr& x, int min_prec) {
        const std::string s = render(*x);
        return detail::precedence(*x) < min_prec ? "(" + s + ")" : s;
    };
    switch (e.kind) {
    case Expr::Kind::Num: return e.text;
    case Expr::Kind::Gen: return "t";
    case Expr::Kind::Tvar: return "T";
    case Expr::Kind::Name: return e.text;
    case Expr::Kind::Neg: return "-" + sub(e.lhs, 3);
    case Expr::Kind::Add: return sub(e.lhs, 1) + " + " + sub(e.rhs, 2);
    case Expr::Kind::Sub: return sub(e.lhs, 1) + " - " + sub(e.rhs, 2);
    case Expr::Kind::Mul: return sub(e.lhs, 2) + "*" + sub(e.rhs, 3);
    case Expr::Kind::Div: return sub(e.lhs, 2) + "/" + sub(e.rhs, 3);
    case Expr::Kind::Pow: {
        const bool plain = e.exponent.get_den() == 1 && sgn(e.exponent) >= 0;
        return sub(e.lhs, 5) + "^" + (plain ? e.exponent.get_str() : "{" + e.exponent.get_str() + "}");
    }
    }
    return {};
}

struct BasisDecl {
    std::string name;
    long degree = 0;
    Pos pos;
};

struct ProductDecl {
    std::string a, b;
    ExprPtr rhs;
    Pos pos;
};

struct ClassDecl {
    std::string name;
    ExprPtr expr;
    Pos pos;
};

struct AlgebraBlock {
    std::string name;
    Pos pos;
    ExprPtr field_modulus; // null for the rationals
    std::optional<long> novikov_n;
    std::vector<BasisDecl> basis;
    ExprPtr unit;
    std::optional<long> t_degree;
    std::optional<long> n;
    std::vector<ProductDecl> products;
    std::optional<std::vector<ExprPtr>> integration;
    std::vector<ClassDecl> classes;

    std::optional<std::size_t> basis_index(const std::string& s) const
    {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == s)
                return i;
        return std::nullopt;
    }
};

struct ConfigBlock {
    std::string name;
    Pos pos;
    long vertices = 0;
    std::vector<std::pair<long, long>> edges; // 1-based as written
};

struct TorusDecl {
    std::string name;
    Pos pos;
};

struct LatticeBlock {
    std::string name;
    Pos pos;
    long k = 0;
    std::vector<ClassDecl> classes;
    std::vector<TorusDecl> tori;
};

struct Command {
    enum class Kind { Check, Semisimple, Decompose, Sphere, Dehn, Config, Lattice };
    Kind kind = Kind::Check;
    Pos pos;
    std::string algebra;  // resolved algebra for algebra commands
    std::string a, b;     // class, config or lattice names
    ExprPtr expr;         // inline sphere class
    std::string parity;   // "even" or "oddgood" for config/lattice
};

inline const char* command_name(Command::Kind k)
{
    switch (k) {
    case Command::Kind::Check: return "check";
    case Command::Kind::Semisimple: return "semisimple";
    case Command::Kind::Decompose: return "decompose";
    case Command::Kind::Sphere: return "sphere";
    case Command::Kind::Dehn: return "dehn";
    case Command::Kind::Config: return "config";
    case Command::Kind::Lattice: return "lattice";
    }
    return "";
}

using Item = std::variant<AlgebraBlock, ConfigBlock, LatticeBlock, Command>;

struct Document {
    std::vector<Item> items;

    template <class Block>
    const Block* find(const std::string& name) const
    {
        for (const auto& it : items)
            if (const auto* b = std::get_if<Block>(&it); b && b->name == name)
                return b;
        return nullptr;
    }

    /// Algebra block declaring the sphere class `name`, with the declaration.
    std::pair<const AlgebraBlock*, const ClassDecl*> find_class(const std::string& name) const
    {
        for (const auto& it : items)
            if (const auto* b = std::get_if<AlgebraBlock>(&it))
                for (const auto& c : b->classes)
                    if (c.name == name)
                        return {b, &c};
        return {nullptr, nullptr};
    }

    std::vector<const Command*> commands() const
    {
        std::vector<const Command*> out;
        for (const auto& it : items)
            if (const auto* c = std::get_if<Command>(&it))
                out.push_back(c);
        return out;
    }
};

/// Recursive descent with one token of lookahead. Names resolve against
/// blocks declared earlier in the document.
class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Document parse()
    {
        Document doc;
        while (peek().kind != Token::Kind::End) {
            const Token& t = peek();
            if (t.kind != Token::Kind::Ident)
                fail(t, "a block or command");
            if (t.text == "algebra")
                doc.items.emplace_back(parse_algebra(doc));
            else if (t.text == "config" && peek(2).text == "{")
                doc.items.emplace_back(parse_config(doc));
            else if (t.text == "lattice" && peek(2).text == "{")
                doc.items.emplace_back(parse_lattice(doc));
            else
                doc.items.emplace_back(parse_command(doc));
        }
        return doc;
    }

    /// A lone expression in t and T, as produced by the scalar renderer.
    ExprPtr parse_scalar()
    {
        ExprPtr e = parse_expr([](const Token& t) {
            if (t.text != "t" && t.text != "T")
                throw ParseError(Errc::UnresolvedName, t.pos, "a scalar uses only t and T, found '" + t.text + "'");
        });
        if (peek().kind != Token::Kind::End)
            fail(peek(), "end of input");
        return e;
    }

private:
    using Resolver = std::function<void(const Token&)>;

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
    const Token& next()
    {
        const Token& t = toks_[i_];
        if (i_ + 1 < toks_.size())
            ++i_;
        return t;
    }

    [[noreturn]] static void fail(const Token& t, const std::string& expected)
    {
        const std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(Errc::SyntaxError, t.pos, "expected " + expected + " but found " + found, expected);
    }

    bool accept(std::string_view p)
    {
        if (peek().kind != Token::Kind::End && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
    const Token& expect(std::string_view p)
    {
        if (peek().kind == Token::Kind::End || peek().text != p)
            fail(peek(), "'" + std::string(p) + "'");
        return next();
    }
    const Token& expect_ident(const std::string& what)
    {
        if (peek().kind != Token::Kind::Ident)
            fail(peek(), what);
        return next();
    }
    long expect_int(const std::string& what, bool allow_negative = false)
    {
        const bool neg = allow_negative && accept("-");
        if (peek().kind != Token::Kind::Int)
            fail(peek(), what);
        const Token& t = next();
        long v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc())
            throw ParseError(Errc::SyntaxError, t.pos, "integer out of range: " + t.text, what);
        return neg ? -v : v;
    }
    const Token& expect_name(const std::string& what)
    {
        const Token& t = expect_ident(what);
        if (t.text == "t" || t.text == "T")
            throw ParseError(Errc::SyntaxError, t.pos, "'" + t.text + "' is reserved", what);
        return t;
    }

    // expressions

    ExprPtr make(Expr::Kind k, Pos pos, ExprPtr l = {}, ExprPtr r = {})
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->pos = pos;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }

    ExprPtr parse_expr(const Resolver& resolve)
    {
        ExprPtr e = parse_term(resolve);
        for (;;) {
            const Pos pos = peek().pos;
            if (accept("+"))
                e = make(Expr::Kind::Add, pos, e, parse_term(resolve));
            else if (accept("-"))
                e = make(Expr::Kind::Sub, pos, e, parse_term(resolve));
            else
                return e;
        }
    }
    ExprPtr parse_term(const Resolver& resolve)
    {
        ExprPtr e = parse_unary(resolve);
        for (;;) {
            const Pos pos = peek().pos;
            if (accept("*"))
                e = make(Expr::Kind::Mul, pos, e, parse_unary(resolve));
            else if (accept("/"))
                e = make(Expr::Kind::Div, pos, e, parse_unary(resolve));
            else
                return e;
        }
    }
    ExprPtr parse_unary(const Resolver& resolve)
    {
        const Pos pos = peek().pos;
        if (accept("-"))
            return make(Expr::Kind::Neg, pos, parse_unary(resolve));
        return parse_power(resolve);
    }
    ExprPtr parse_power(const Resolver& resolve)
    {
        ExprPtr base = parse_primary(resolve);
        const Pos pos = peek().pos;
        if (!accept("^"))
            return base;
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Pow;
        e->pos = pos;
        e->lhs = base;
        if (accept("{")) {
            const long p = expect_int("an exponent", true);
            long q = 1;
            if (accept("/"))
                q = expect_int("an exponent denominator");
            if (q == 0)
                throw ParseError(Errc::SyntaxError, pos, "zero exponent denominator", "a nonzero denominator");
            expect("}");
            e->exponent = Rational(p, q);
            e->exponent.canonicalize();
        } else {
            e->exponent = Rational(expect_int("an exponent"));
        }
        if (e->exponent.get_den() != 1 && base->kind != Expr::Kind::Tvar)
            throw ParseError(Errc::SyntaxError, pos, "fractional exponents apply to T only", "an integer exponent");
        return e;
    }
    ExprPtr parse_primary(const Resolver& resolve)
    {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int) {
            next();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Num;
            e->text = t.text;
            e->pos = t.pos;
            return e;
        }
        if (t.kind == Token::Kind::Ident) {
            next();
            resolve(t);
            auto e = std::make_shared<Expr>();
            e->kind = t.text == "t" ? Expr::Kind::Gen : t.text == "T" ? Expr::Kind::Tvar : Expr::Kind::Name;
            e->text = t.text;
            e->pos = t.pos;
            return e;
        }
        if (accept("(")) {
            ExprPtr e = parse_expr(resolve);
            expect(")");
            return e;
        }
        fail(t, "an expression");
    }

    static Resolver algebra_resolver(const AlgebraBlock& b)
    {
        const bool has_t = b.field_modulus != nullptr;
        return [&b, has_t](const Token& t) {
            if (t.text == "T" || (t.text == "t" && has_t) || b.basis_index(t.text))
                return;
            throw ParseError(Errc::UnresolvedName, t.pos,
                             t.text == "t" ? "generator 't' used over the rationals"
                                           : "'" + t.text + "' is not a basis element of " + b.name);
        };
    }

    // blocks

    template <class Block>
    void check_fresh(const Document& doc, const Token& name, const char* kind)
    {
        if (doc.find<Block>(name.text))
            throw ParseError(Errc::DuplicateName, name.pos, std::string(kind) + " '" + name.text + "' is already defined");
    }

    AlgebraBlock parse_algebra(const Document& doc)
    {
        AlgebraBlock b;
        b.pos = expect("algebra").pos;
        const Token& name = expect_name("an algebra name");
        check_fresh<AlgebraBlock>(doc, name, "algebra");
        b.name = name.text;
        expect("{");
        expect("field");
        expect(":");
        if (accept("extension")) {
            expect("(");
            b.field_modulus = parse_expr([](const Token& t) {
                if (t.text != "t")
                    throw ParseError(Errc::UnresolvedName, t.pos, "the modulus is a polynomial in t, found '" + t.text + "'");
            });
            expect(")");
        } else if (!accept("rationals")) {
            fail(peek(), "'rationals' or 'extension'");
        }
        expect(";");
        if (accept("novikov_n")) {
            expect(":");
            b.novikov_n = expect_int("a ramification bound");
            expect(";");
        }
        expect("basis");
        expect(":");
        expect("[");
        do {
            const Token& n = expect_name("a basis name");
            if (b.basis_index(n.text))
                throw ParseError(Errc::DuplicateName, n.pos, "basis element '" + n.text + "' is repeated");
            expect(":");
            b.basis.push_back({n.text, expect_int("a degree", true), n.pos});
        } while (accept(","));
        expect("]");
        expect(";");
        const Resolver resolve = algebra_resolver(b);
        expect("unit");
        expect(":");
        b.unit = parse_expr(resolve);
        expect(";");
        if (accept("t_degree")) {
            expect(":");
            b.t_degree = expect_int("the degree of T", true);
            expect(";");
        }
        if (accept("n")) {
            expect(":");
            b.n = expect_int("the half dimension n", true);
            expect(";");
        }
        expect("product");
        expect("{");
        do {
            const Token& x = expect_ident("a basis name");
            resolve(x);
            expect("*");
            const Token& y = expect_ident("a basis name");
            resolve(y);
            expect("=");
            b.products.push_back({x.text, y.text, parse_expr(resolve), x.pos});
            expect(";");
        } while (peek().kind == Token::Kind::Ident);
        expect("}");
        if (accept("integration")) {
            expect(":");
            expect("[");
            std::vector<ExprPtr> v;
            do
                v.push_back(parse_expr(resolve));
            while (accept(","));
            expect("]");
            expect(";");
            b.integration = std::move(v);
        }
        while (accept("class")) {
            const Token& n = expect_name("a class name");
            if (doc.find_class(n.text).first || std::any_of(b.classes.begin(), b.classes.end(),
                                                            [&](const ClassDecl& c) { return c.name == n.text; }))
                throw ParseError(Errc::DuplicateName, n.pos, "class '" + n.text + "' is already defined");
            expect("=");
            b.classes.push_back({n.text, parse_expr(resolve), n.pos});
            expect(";");
        }
        expect("}");
        return b;
    }

    ConfigBlock parse_config(const Document& doc)
    {
        ConfigBlock b;
        b.pos = expect("config").pos;
        const Token& name = expect_name("a configuration name");
        check_fresh<ConfigBlock>(doc, name, "config");
        b.name = name.text;
        expect("{");
        expect("vertices");
        b.vertices = expect_int("a vertex count");
        expect(";");
        while (accept("edge")) {
            const long u = expect_int("a vertex number");
            const long v = expect_int("a vertex number");
            b.edges.emplace_back(u, v);
            expect(";");
        }
        expect("}");
        return b;
    }

    LatticeBlock parse_lattice(const Document& doc)
    {
        LatticeBlock b;
        b.pos = expect("lattice").pos;
        const Token& name = expect_name("a lattice name");
        check_fresh<LatticeBlock>(doc, name, "lattice");
        b.name = name.text;
        expect("{");
        expect("k");
        expect(":");
        b.k = expect_int("the number of blowups");
        expect(";");
        std::set<std::string> names;
        auto fresh = [&](const Token& n) {
            if (!names.insert(n.text).second)
                throw ParseError(Errc::DuplicateName, n.pos, "'" + n.text + "' is already defined in " + b.name);
        };
        const long k = b.k;
        const Resolver resolve = [k](const Token& t) {
            if (t.text == "H")
                return;
            if (t.text.size() > 1 && t.text[0] == 'E' &&
                t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
                const long i = std::stol(t.text.substr(1));
                if (i >= 1 && i <= k)
                    return;
            }
            throw ParseError(Errc::UnresolvedName, t.pos, "'" + t.text + "' is not H or E1..E" + std::to_string(k));
        };
        for (;;) {
            if (accept("class")) {
                const Token& n = expect_name("a class name");
                fresh(n);
                expect("=");
                b.classes.push_back({n.text, parse_expr(resolve), n.pos});
                expect(";");
            } else if (accept("torus")) {
                const Token& n = expect_name("a torus name");
                fresh(n);
                b.tori.push_back({n.text, n.pos});
                expect(";");
            } else {
                break;
            }
        }
        expect("}");
        return b;
    }

    std::string parse_parity()
    {
        if (!accept("parity"))
            return "even";
        expect("=");
        const Token& p = expect_ident("'even' or 'oddgood'");
        if (p.text != "even" && p.text != "oddgood")
            fail(p, "'even' or 'oddgood'");
        return p.text;
    }

    Command parse_command(const Document& doc)
    {
        Command c;
        const Token& kw = next();
        c.pos = kw.pos;
        static const std::map<std::string, Command::Kind> kinds = {
            {"check", Command::Kind::Check},   {"semisimple", Command::Kind::Semisimple},
            {"decompose", Command::Kind::Decompose}, {"sphere", Command::Kind::Sphere},
            {"dehn", Command::Kind::Dehn},     {"config", Command::Kind::Config},
            {"lattice", Command::Kind::Lattice}};
        const auto it = kinds.find(kw.text);
        if (it == kinds.end())
            fail(kw, "a block or command");
        c.kind = it->second;
        auto current_algebra = [&](const Token& at) -> const AlgebraBlock& {
            const AlgebraBlock* last = nullptr;
            for (const auto& item : doc.items)
                if (const auto* b = std::get_if<AlgebraBlock>(&item))
                    last = b;
            if (!last)
                throw ParseError(Errc::UnresolvedName, at.pos, "no algebra is defined before this command");
            return *last;
        };
        auto resolve_class = [&](const Token& n) -> const AlgebraBlock& {
            const auto [alg, decl] = doc.find_class(n.text);
            if (!alg)
                throw ParseError(Errc::UnresolvedName, n.pos, "unknown class '" + n.text + "'");
            return *alg;
        };
        switch (c.kind) {
        case Command::Kind::Check:
        case Command::Kind::Semisimple:
        case Command::Kind::Decompose:
            if (peek().kind == Token::Kind::Ident) {
                const Token& n = next();
                if (!doc.find<AlgebraBlock>(n.text))
                    throw ParseError(Errc::UnresolvedName, n.pos, "unknown algebra '" + n.text + "'");
                c.algebra = n.text;
            } else {
                c.algebra = current_algebra(kw).name;
            }
            break;
        case Command::Kind::Sphere:
            if (peek().kind == Token::Kind::Ident) {
                const Token& n = next();
                c.algebra = resolve_class(n).name;
                c.a = n.text;
            } else if (peek().text == "(") {
                const AlgebraBlock& alg = current_algebra(kw);
                c.algebra = alg.name;
                c.expr = parse_expr(algebra_resolver(alg));
            } else {
                fail(peek(), "a class name or a parenthesized class");
            }
            break;
        case Command::Kind::Dehn: {
            const Token& l = expect_ident("a class name");
            const AlgebraBlock& a1 = resolve_class(l);
            const Token& lp = expect_ident("a class name");
            const AlgebraBlock& a2 = resolve_class(lp);
            if (&a1 != &a2)
                throw ParseError(Errc::UnresolvedName, lp.pos, "'" + lp.text + "' belongs to another algebra");
            c.algebra = a1.name;
            c.a = l.text;
            c.b = lp.text;
            break;
        }
        case Command::Kind::Config:
        case Command::Kind::Lattice: {
            const Token& n = expect_ident(c.kind == Command::Kind::Config ? "a configuration name" : "a lattice name");
            const bool known = c.kind == Command::Kind::Config ? doc.find<ConfigBlock>(n.text) != nullptr
                                                               : doc.find<LatticeBlock>(n.text) != nullptr;
            if (!known)
                throw ParseError(Errc::UnresolvedName, n.pos,
                                 std::string("unknown ") + command_name(c.kind) + " '" + n.text + "'");
            c.a = n.text;
            c.parity = parse_parity();
            break;
        }
        }
        expect(";");
        return c;
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

inline Document parse(std::string_view src) { return Parser(src).parse(); }

/// Canonical source text; parse(render(d)) renders back to the same text.
inline std::string render(const Document& doc)
{
    std::string out;
    for (const auto& item : doc.items) {
        if (!out.empty())
            out += "\n";
        if (const auto* a = std::get_if<AlgebraBlock>(&item)) {
            out += "algebra " + a->name + " {\n";
            out += "  field: " + (a->field_modulus ? "extension(" + render(*a->field_modulus) + ")" : "rationals") + ";\n";
            if (a->novikov_n)
                out += "  novikov_n: " + std::to_string(*a->novikov_n) + ";\n";
            out += "  basis: [";
            for (std::size_t i = 0; i < a->basis.size(); ++i)
                out += (i ? ", " : "") + a->basis[i].name + ":" + std::to_string(a->basis[i].degree);
            out += "];\n  unit: " + render(*a->unit) + ";\n";
            if (a->t_degree)
                out += "  t_degree: " + std::to_string(*a->t_degree) + ";\n";
            if (a->n)
                out += "  n: " + std::to_string(*a->n) + ";\n";
            out += "  product {\n";
            for (const auto& p : a->products)
                out += "    " + p.a + " * " + p.b + " = " + render(*p.rhs) + ";\n";
            out += "  }\n";
            if (a->integration) {
                out += "  integration: [";
                for (std::size_t i = 0; i < a->integration->size(); ++i)
                    out += (i ? ", " : "") + render(*(*a->integration)[i]);
                out += "];\n";
            }
            for (const auto& c : a->classes)
                out += "  class " + c.name + " = " + render(*c.expr) + ";\n";
            out += "}\n";
        } else if (const auto* c = std::get_if<ConfigBlock>(&item)) {
            out += "config " + c->name + " {\n  vertices " + std::to_string(c->vertices) + ";\n";
            for (const auto& [u, v] : c->edges)
                out += "  edge " + std::to_string(u) + " " + std::to_string(v) + ";\n";
            out += "}\n";
        } else if (const auto* l = std::get_if<LatticeBlock>(&item)) {
            out += "lattice " + l->name + " {\n  k: " + std::to_string(l->k) + ";\n";
            for (const auto& c : l->classes)
                out += "  class " + c.name + " = " + render(*c.expr) + ";\n";
            for (const auto& t : l->tori)
                out += "  torus " + t.name + ";\n";
            out += "}\n";
        } else {
            const auto& cmd = std::get<Command>(item);
            out += command_name(cmd.kind);
            switch (cmd.kind) {
            case Command::Kind::Check:
            case Command::Kind::Semisimple:
            case Command::Kind::Decompose: out += " " + cmd.algebra; break;
            case Command::Kind::Sphere:
                out += " " + (cmd.expr ? "(" + render(*cmd.expr) + ")" : cmd.a);
                break;
            case Command::Kind::Dehn: out += " " + cmd.a + " " + cmd.b; break;
            case Command::Kind::Config:
            case Command::Kind::Lattice: out += " " + cmd.a + " parity=" + cmd.parity; break;
            }
            out += ";\n";
        }
    }
    return out;
}

} // namespace qhwb::dsl
