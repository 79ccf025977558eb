#pragma once

#include "chowdr/errors.hpp"
#include "chowdr/morphism.hpp"
#include "chowdr/rational.hpp"
#include "chowdr/ring.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chowdr {

/// Expression tree for cycle-class arithmetic. Binary subtraction is sugar
/// for Add(a, Neg(b)); positions are carried for diagnostics and ignored by
/// structural equality.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        RationalLit,
        ClassRef,
        Add,
        Mul,
        Pow,
        Neg,
        Exp,
        C1,
        Push,
        Pull,
        Integrate,
        Component
    };

    Kind kind;
    Rational lit;     // RationalLit
    std::string name; // ClassRef / C1 bundle / Push / Pull morphism
    ExprPtr a, b;     // children
    long long k = 0;  // Pow exponent / Component codimension
    SourcePos pos;
};

inline ExprPtr make_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

inline bool same_ast(const ExprPtr& x, const ExprPtr& y)
{
    if (!x || !y)
        return x == y;
    if (x->kind != y->kind || x->lit != y->lit || x->name != y->name || x->k != y->k)
        return false;
    return same_ast(x->a, y->a) && same_ast(x->b, y->b);
}

namespace dsl {

    enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };

    struct Token {
        Tok kind;
        Rational value;   // Number
        std::string text; // Ident
        SourcePos pos;
    };

    class Lexer {
    public:
        explicit Lexer(std::string_view src) : src_(src) {}

        Token next()
        {
            skip_ws();
            SourcePos pos = here();
            if (i_ >= src_.size())
                return {Tok::End, 0, "", pos};
            char c = src_[i_];
            if (std::isdigit(static_cast<unsigned char>(c)))
                return lex_number(pos);
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t start = i_;
                while (i_ < src_.size()
                       && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                    advance();
                return {Tok::Ident, 0, std::string(src_.substr(start, i_ - start)), pos};
            }
            advance();
            switch (c) {
            case '+': return {Tok::Plus, 0, "", pos};
            case '-': return {Tok::Minus, 0, "", pos};
            case '*': return {Tok::Star, 0, "", pos};
            case '^': return {Tok::Caret, 0, "", pos};
            case '(': return {Tok::LParen, 0, "", pos};
            case ')': return {Tok::RParen, 0, "", pos};
            case ',': return {Tok::Comma, 0, "", pos};
            default:
                throw syntax_error(std::string("unexpected character '") + c + "'", pos);
            }
        }

    private:
        void advance()
        {
            if (src_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++i_;
        }

        void skip_ws()
        {
            while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_])))
                advance();
        }

        SourcePos here() const { return {line_, col_}; }

        Token lex_number(SourcePos pos)
        {
            auto digits = [&]() {
                size_t start = i_;
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
                    advance();
                return std::string(src_.substr(start, i_ - start));
            };
            std::string num = digits();
            if (i_ < src_.size() && src_[i_] == '.')
                throw syntax_error("decimal literals are not accepted; use exact rationals",
                                   here());
            // Lookahead for "/ digits": rational literal.
            size_t save_i = i_;
            int save_line = line_, save_col = col_;
            skip_ws();
            if (i_ < src_.size() && src_[i_] == '/') {
                advance();
                skip_ws();
                if (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
                    std::string den = digits();
                    if (i_ < src_.size() && src_[i_] == '.')
                        throw syntax_error("decimal literals are not accepted; use exact "
                                           "rationals",
                                           here());
                    if (Integer(den) == 0)
                        throw syntax_error("zero denominator", pos);
                    return {Tok::Number, Rational(Integer(num), Integer(den)), "", pos};
                }
                throw syntax_error("expected digits after '/'", here(), "integer");
            }
            i_ = save_i;
            line_ = save_line;
            col_ = save_col;
            return {Tok::Number, Rational(Integer(num)), "", pos};
        }

        std::string_view src_;
        size_t i_ = 0;
        int line_ = 1;
        int col_ = 1;
    };

    /// Recursive-descent parser. Precedence from loosest to tightest:
    /// unary minus, +, *, ^. A leading minus directly followed by a number
    /// folds into a negative literal and then continues climbing, so
    /// "-1/2 * x" is Mul(-1/2, x) while "-a * x" is Neg(Mul(a, x)).
    class Parser {
    public:
        explicit Parser(std::string_view src) : lex_(src) { shift(); }

        ExprPtr parse()
        {
            ExprPtr e = expression();
            expect(Tok::End, "end of input");
            return e;
        }

    private:
        void shift() { tok_ = lex_.next(); }

        Token expect(Tok kind, const std::string& what)
        {
            if (tok_.kind != kind)
                throw syntax_error("unexpected token", tok_.pos, what);
            Token t = tok_;
            shift();
            return t;
        }

        ExprPtr expression()
        {
            if (tok_.kind == Tok::Minus) {
                SourcePos pos = tok_.pos;
                shift();
                if (tok_.kind == Tok::Number) {
                    Expr lit{Expr::Kind::RationalLit};
                    lit.lit = -tok_.value;
                    lit.pos = pos;
                    shift();
                    return add_rest(mul_rest(pow_rest(make_expr(std::move(lit)))));
                }
                Expr neg{Expr::Kind::Neg};
                neg.pos = pos;
                neg.a = expression();
                return make_expr(std::move(neg));
            }
            return add_rest(mul_rest(pow_rest(primary())));
        }

        ExprPtr add_rest(ExprPtr lhs)
        {
            while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
                bool minus = tok_.kind == Tok::Minus;
                SourcePos pos = tok_.pos;
                shift();
                ExprPtr rhs = mul_rest(pow_rest(primary()));
                if (minus) {
                    Expr neg{Expr::Kind::Neg};
                    neg.pos = pos;
                    neg.a = std::move(rhs);
                    rhs = make_expr(std::move(neg));
                }
                Expr add{Expr::Kind::Add};
                add.pos = pos;
                add.a = std::move(lhs);
                add.b = std::move(rhs);
                lhs = make_expr(std::move(add));
            }
            return lhs;
        }

        ExprPtr mul_rest(ExprPtr lhs)
        {
            while (tok_.kind == Tok::Star) {
                SourcePos pos = tok_.pos;
                shift();
                ExprPtr rhs = pow_rest(primary());
                Expr m{Expr::Kind::Mul};
                m.pos = pos;
                m.a = std::move(lhs);
                m.b = std::move(rhs);
                lhs = make_expr(std::move(m));
            }
            return lhs;
        }

        ExprPtr pow_rest(ExprPtr base)
        {
            while (tok_.kind == Tok::Caret) {
                SourcePos pos = tok_.pos;
                shift();
                Token t = expect(Tok::Number, "non-negative integer exponent");
                if (rational_den(t.value) != 1 || t.value < 0)
                    throw syntax_error("exponent must be a non-negative integer literal", t.pos);
                Expr p{Expr::Kind::Pow};
                p.pos = pos;
                p.a = std::move(base);
                p.k = static_cast<long long>(rational_num(t.value));
                base = make_expr(std::move(p));
            }
            return base;
        }

        ExprPtr primary()
        {
            SourcePos pos = tok_.pos;
            switch (tok_.kind) {
            case Tok::Number: {
                Expr lit{Expr::Kind::RationalLit};
                lit.lit = tok_.value;
                lit.pos = pos;
                shift();
                return make_expr(std::move(lit));
            }
            case Tok::LParen: {
                shift();
                ExprPtr e = expression();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: {
                std::string name = tok_.text;
                shift();
                if (tok_.kind != Tok::LParen) {
                    Expr ref{Expr::Kind::ClassRef};
                    ref.name = std::move(name);
                    ref.pos = pos;
                    return make_expr(std::move(ref));
                }
                return call(std::move(name), pos);
            }
            default:
                throw syntax_error("unexpected token", pos,
                                   "rational, identifier, '-' or '('");
            }
        }

        ExprPtr call(std::string name, SourcePos pos)
        {
            expect(Tok::LParen, "'('");
            Expr e{Expr::Kind::RationalLit};
            e.pos = pos;
            if (name == "exp" || name == "integrate") {
                e.kind = name == "exp" ? Expr::Kind::Exp : Expr::Kind::Integrate;
                e.a = expression();
            } else if (name == "c1") {
                e.kind = Expr::Kind::C1;
                e.name = expect(Tok::Ident, "bundle name").text;
            } else if (name == "push" || name == "pull") {
                e.kind = name == "push" ? Expr::Kind::Push : Expr::Kind::Pull;
                e.name = expect(Tok::Ident, "morphism name").text;
                expect(Tok::Comma, "','");
                e.a = expression();
            } else if (name == "component") {
                e.kind = Expr::Kind::Component;
                e.a = expression();
                expect(Tok::Comma, "','");
                Token t = expect(Tok::Number, "non-negative integer codimension");
                if (rational_den(t.value) != 1 || t.value < 0)
                    throw syntax_error("codimension must be a non-negative integer literal",
                                       t.pos);
                e.k = static_cast<long long>(rational_num(t.value));
            } else {
                throw syntax_error("unknown function '" + name + "'", pos,
                                   "push, pull, exp, c1, integrate or component");
            }
            expect(Tok::RParen, "')'");
            return make_expr(std::move(e));
        }

        Lexer lex_;
        Token tok_;
    };

} // namespace dsl

inline ExprPtr parse_expression(std::string_view text) { return dsl::Parser(text).parse(); }

namespace dsl {

    // Precedence levels for the printer; parenthesize a child whose level
    // is below what its context requires.
    enum Level : int { LvlExpr = 0, LvlAdd = 1, LvlMul = 2, LvlPow = 3, LvlAtom = 4 };

    inline int level_of(const Expr& e)
    {
        switch (e.kind) {
        case Expr::Kind::Neg: return LvlExpr;
        case Expr::Kind::Add: return LvlAdd;
        case Expr::Kind::Mul: return LvlMul;
        case Expr::Kind::Pow: return LvlPow;
        default: return LvlAtom;
        }
    }

    /// at_head is true exactly where the parser's negative-literal folding
    /// applies: the start of the whole expression or of a parenthesized /
    /// argument subexpression, propagated through left operands.
    inline std::string format(const ExprPtr& e, int min_level, bool at_head)
    {
        auto wrap = [&](const std::string& s) { return "(" + s + ")"; };
        switch (e->kind) {
        case Expr::Kind::RationalLit: {
            std::string s = to_string(e->lit);
            if (e->lit < 0 && !at_head)
                return wrap(s);
            return s;
        }
        case Expr::Kind::ClassRef: return e->name;
        case Expr::Kind::C1: return "c1(" + e->name + ")";
        case Expr::Kind::Exp: return "exp(" + format(e->a, LvlExpr, true) + ")";
        case Expr::Kind::Integrate: return "integrate(" + format(e->a, LvlExpr, true) + ")";
        case Expr::Kind::Push:
            return "push(" + e->name + ", " + format(e->a, LvlExpr, true) + ")";
        case Expr::Kind::Pull:
            return "pull(" + e->name + ", " + format(e->a, LvlExpr, true) + ")";
        case Expr::Kind::Component:
            return "component(" + format(e->a, LvlExpr, true) + ", " + std::to_string(e->k)
                   + ")";
        case Expr::Kind::Neg: {
            if (LvlExpr < min_level) {
                // Parenthesized: the argument restarts at head position.
                std::string inner = format(e->a, LvlExpr, false);
                if (!inner.empty() && std::isdigit(static_cast<unsigned char>(inner[0])))
                    inner = wrap(inner);
                return wrap("-" + inner);
            }
            std::string inner = format(e->a, LvlExpr, false);
            if (!inner.empty() && std::isdigit(static_cast<unsigned char>(inner[0])))
                inner = wrap(inner);
            return "-" + inner;
        }
        case Expr::Kind::Add: {
            std::string lhs = format(e->a, LvlAdd, at_head);
            std::string rhs;
            std::string op = " + ";
            if (e->b->kind == Expr::Kind::Neg) {
                op = " - ";
                rhs = format(e->b->a, LvlMul, false);
            } else {
                rhs = format(e->b, LvlMul, false);
            }
            std::string s = lhs + op + rhs;
            return LvlAdd < min_level ? wrap(s) : s;
        }
        case Expr::Kind::Mul: {
            std::string s = format(e->a, LvlMul, at_head) + " * " + format(e->b, LvlPow, false);
            return LvlMul < min_level ? wrap(s) : s;
        }
        case Expr::Kind::Pow: {
            std::string s = format(e->a, LvlAtom, at_head) + "^" + std::to_string(e->k);
            return LvlPow < min_level ? wrap(s) : s;
        }
        }
        return "";
    }

} // namespace dsl

/// Canonical printing with minimal parentheses; parse(format(ast)) == ast.
inline std::string format_expression(const ExprPtr& e)
{
    return dsl::format(e, dsl::LvlExpr, true);
}

/// Name bindings for evaluation. Classes and morphisms live in separate
/// namespaces; environments are immutable snapshots.
struct EvalEnv {
    std::map<std::string, GradedClass> classes;
    std::map<std::string, MorphPtr> morphisms;
};

using EvalResult = std::variant<GradedClass, Rational>;

namespace dsl {

    inline const GradedClass& env_class(const EvalEnv& env, const std::string& name,
                                        SourcePos pos)
    {
        auto it = env.classes.find(name);
        if (it == env.classes.end())
            throw unbound_name("unbound class name '" + name + "' at line "
                               + std::to_string(pos.line) + ", column "
                               + std::to_string(pos.column));
        return it->second;
    }

    inline const MorphPtr& env_morphism(const EvalEnv& env, const std::string& name,
                                        SourcePos pos)
    {
        auto it = env.morphisms.find(name);
        if (it == env.morphisms.end())
            throw unbound_name("unbound morphism name '" + name + "' at line "
                               + std::to_string(pos.line) + ", column "
                               + std::to_string(pos.column));
        return it->second;
    }

    inline GradedClass as_class(const EvalResult& v, const RingPtr& ring_hint, SourcePos pos)
    {
        if (std::holds_alternative<GradedClass>(v))
            return std::get<GradedClass>(v);
        if (!ring_hint)
            throw eval_error("scalar used where a class is required", pos);
        return scalar_mul(std::get<Rational>(v), GradedClass::unit(ring_hint));
    }

    inline RingPtr ring_of(const EvalResult& v)
    {
        if (std::holds_alternative<GradedClass>(v))
            return std::get<GradedClass>(v).ring();
        return nullptr;
    }

    /// Attach the position of the innermost offending node once.
    template <class E>
    [[noreturn]] inline void rethrow_with_pos(const E& ex, SourcePos pos)
    {
        std::string msg = ex.what();
        if (msg.find("at line") != std::string::npos)
            throw; // already positioned by a deeper node
        throw E(msg + " at line " + std::to_string(pos.line) + ", column "
                + std::to_string(pos.column));
    }

} // namespace dsl

inline EvalResult eval(const ExprPtr& e, const EvalEnv& env);

namespace dsl {
    inline EvalResult eval_node(const ExprPtr& e, const EvalEnv& env);
}

/// Structural fold delegating to the ring and morphism operations. Scalars
/// mix with classes by embedding along the unit; errors carry the position
/// of the innermost offending subexpression.
inline EvalResult eval(const ExprPtr& e, const EvalEnv& env)
{
    try {
        return dsl::eval_node(e, env);
    } catch (const ring_mismatch& ex) {
        dsl::rethrow_with_pos(ex, e->pos);
    } catch (const non_nilpotent_input& ex) {
        dsl::rethrow_with_pos(ex, e->pos);
    } catch (const no_point_class& ex) {
        dsl::rethrow_with_pos(ex, e->pos);
    } catch (const validation_error& ex) {
        dsl::rethrow_with_pos(ex, e->pos);
    }
}

inline EvalResult dsl::eval_node(const ExprPtr& e, const EvalEnv& env)
{
    using dsl::as_class;
    using dsl::ring_of;
    switch (e->kind) {
    case Expr::Kind::RationalLit: return e->lit;
    case Expr::Kind::ClassRef: return dsl::env_class(env, e->name, e->pos);
    case Expr::Kind::C1: {
        const GradedClass& c = dsl::env_class(env, e->name, e->pos);
        for (const auto& [k, v] : c.terms())
            if (k.codim != 1)
                throw eval_error("c1(" + e->name + "): bound class is not a divisor class",
                                 e->pos);
        return c;
    }
    case Expr::Kind::Add: {
        EvalResult a = eval(e->a, env);
        EvalResult b = eval(e->b, env);
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
            return std::get<Rational>(a) + std::get<Rational>(b);
        RingPtr ring = ring_of(a) ? ring_of(a) : ring_of(b);
        return add(as_class(a, ring, e->pos), as_class(b, ring, e->pos));
    }
    case Expr::Kind::Mul: {
        EvalResult a = eval(e->a, env);
        EvalResult b = eval(e->b, env);
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
            return std::get<Rational>(a) * std::get<Rational>(b);
        if (std::holds_alternative<Rational>(a))
            return scalar_mul(std::get<Rational>(a), std::get<GradedClass>(b));
        if (std::holds_alternative<Rational>(b))
            return scalar_mul(std::get<Rational>(b), std::get<GradedClass>(a));
        return mul(std::get<GradedClass>(a), std::get<GradedClass>(b));
    }
    case Expr::Kind::Pow: {
        EvalResult a = eval(e->a, env);
        if (std::holds_alternative<Rational>(a))
            return rational_pow(std::get<Rational>(a), static_cast<int>(e->k));
        return power(std::get<GradedClass>(a), static_cast<int>(e->k));
    }
    case Expr::Kind::Neg: {
        EvalResult a = eval(e->a, env);
        if (std::holds_alternative<Rational>(a))
            return -std::get<Rational>(a);
        return scalar_mul(-1, std::get<GradedClass>(a));
    }
    case Expr::Kind::Exp: {
        EvalResult a = eval(e->a, env);
        if (std::holds_alternative<Rational>(a))
            throw eval_error("exp requires a class operand", e->pos);
        return exp_truncated(std::get<GradedClass>(a));
    }
    case Expr::Kind::Push: {
        const MorphPtr& f = dsl::env_morphism(env, e->name, e->pos);
        EvalResult a = eval(e->a, env);
        return pushforward(f, as_class(a, f->source(), e->pos));
    }
    case Expr::Kind::Pull: {
        const MorphPtr& f = dsl::env_morphism(env, e->name, e->pos);
        EvalResult a = eval(e->a, env);
        return pullback(f, as_class(a, f->target(), e->pos));
    }
    case Expr::Kind::Integrate: {
        EvalResult a = eval(e->a, env);
        if (std::holds_alternative<Rational>(a))
            throw eval_error("integrate requires a class operand", e->pos);
        return integrate(std::get<GradedClass>(a));
    }
    case Expr::Kind::Component: {
        EvalResult a = eval(e->a, env);
        if (std::holds_alternative<Rational>(a))
            throw eval_error("component requires a class operand", e->pos);
        return component(std::get<GradedClass>(a), static_cast<int>(e->k));
    }
    }
    throw eval_error("unreachable expression kind", e->pos);
}

} // namespace chowdr
