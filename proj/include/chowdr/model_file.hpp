#pragma once

#include "chowdr/expr.hpp"
#include "chowdr/geometry.hpp"
#include "chowdr/registry.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chowdr {

// Model files declare rings, morphisms, classes and families in one pass;
// every name must be declared before it is used. Rational literals are
// exact (decimals are rejected). See the README for the grammar.

namespace modelfile {

    enum class Tok {
        Ident,
        Number,
        Colon,
        Arrow,
        LBrace,
        RBrace,
        Equals,
        Star,
        Plus,
        Minus,
        Comma,
        End
    };

    struct Token {
        Tok kind;
        std::string text;
        Rational value;
        SourcePos pos;
    };

    class Lexer {
    public:
        explicit Lexer(std::string_view src) : src_(src) {}

        Token next()
        {
            skip_ws_and_comments();
            SourcePos pos = here();
            if (i_ >= src_.size())
                return {Tok::End, "", 0, pos};
            char c = src_[i_];
            if (std::isdigit(static_cast<unsigned char>(c)))
                return lex_number(pos);
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t start = i_;
                while (i_ < src_.size()
                       && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                    advance();
                return {Tok::Ident, std::string(src_.substr(start, i_ - start)), 0, pos};
            }
            if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
                advance();
                advance();
                return {Tok::Arrow, "", 0, pos};
            }
            advance();
            switch (c) {
            case ':': return {Tok::Colon, "", 0, pos};
            case '{': return {Tok::LBrace, "", 0, pos};
            case '}': return {Tok::RBrace, "", 0, pos};
            case '=': return {Tok::Equals, "", 0, pos};
            case '*': return {Tok::Star, "", 0, pos};
            case '+': return {Tok::Plus, "", 0, pos};
            case '-': return {Tok::Minus, "", 0, pos};
            case ',': return {Tok::Comma, "", 0, pos};
            default: throw syntax_error(std::string("unexpected character '") + c + "'", pos);
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

        void skip_ws_and_comments()
        {
            while (i_ < src_.size()) {
                if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
                    advance();
                } else if (src_[i_] == '#') {
                    while (i_ < src_.size() && src_[i_] != '\n')
                        advance();
                } else {
                    break;
                }
            }
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
            if (i_ < src_.size() && src_[i_] == '/') {
                advance();
                if (i_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[i_])))
                    throw syntax_error("expected digits after '/'", here(), "integer");
                std::string den = digits();
                if (i_ < src_.size() && src_[i_] == '.')
                    throw syntax_error("decimal literals are not accepted; use exact rationals",
                                       here());
                if (Integer(den) == 0)
                    throw syntax_error("zero denominator", pos);
                return {Tok::Number, "", Rational(Integer(num), Integer(den)), pos};
            }
            return {Tok::Number, "", Rational(Integer(num)), pos};
        }

        std::string_view src_;
        size_t i_ = 0;
        int line_ = 1;
        int col_ = 1;
    };

    class Parser {
    public:
        explicit Parser(std::string_view src) : lex_(src) { shift(); }

        Registry parse()
        {
            Registry reg;
            while (tok_.kind != Tok::End) {
                Token kw = expect(Tok::Ident, "declaration keyword");
                if (kw.text == "ring")
                    ring_decl(reg, kw.pos);
                else if (kw.text == "morphism")
                    morphism_decl(reg, kw.pos);
                else if (kw.text == "class")
                    class_decl(reg, kw.pos);
                else if (kw.text == "family")
                    family_decl(reg, kw.pos);
                else
                    throw syntax_error("unknown declaration '" + kw.text + "'", kw.pos,
                                       "ring, morphism, class or family");
            }
            return reg;
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

        bool accept_ident(const std::string& word)
        {
            if (tok_.kind == Tok::Ident && tok_.text == word) {
                shift();
                return true;
            }
            return false;
        }

        int expect_int(const std::string& what)
        {
            Token t = expect(Tok::Number, what);
            if (rational_den(t.value) != 1)
                throw syntax_error("expected an integer", t.pos, what);
            return static_cast<int>(rational_num(t.value));
        }

        /// lincomb := 0 | term (('+'|'-') term)*, term := [RAT '*'] IDENT
        LinComb lincomb()
        {
            LinComb comb;
            bool negate = false;
            if (tok_.kind == Tok::Minus) {
                negate = true;
                shift();
            }
            if (tok_.kind == Tok::Number && tok_.value == 0) {
                shift();
                if (negate)
                    throw syntax_error("'-0' is not a linear combination", tok_.pos);
                return comb;
            }
            while (true) {
                Rational coeff = negate ? -1 : 1;
                if (tok_.kind == Tok::Number) {
                    coeff *= tok_.value;
                    shift();
                    expect(Tok::Star, "'*' between coefficient and symbol");
                }
                Token sym = expect(Tok::Ident, "basis symbol");
                comb.push_back({coeff, sym.text});
                if (tok_.kind == Tok::Plus) {
                    negate = false;
                    shift();
                } else if (tok_.kind == Tok::Minus) {
                    negate = true;
                    shift();
                } else {
                    break;
                }
            }
            return comb;
        }

        static std::string loc(SourcePos p)
        {
            return "line " + std::to_string(p.line) + ", column " + std::to_string(p.column);
        }

        void check_fresh(const Registry& reg, const std::string& name, SourcePos pos)
        {
            if (reg.rings.count(name) || reg.morphisms.count(name) || reg.classes.count(name)
                || reg.families.count(name))
                throw validation_error("duplicate declaration of '" + name + "' at " + loc(pos));
        }

        const RingPtr& ring_ref(const Registry& reg, const std::string& name, SourcePos pos)
        {
            auto it = reg.rings.find(name);
            if (it == reg.rings.end())
                throw forward_reference("ring '" + name + "' is not declared before use at "
                                        + loc(pos));
            return it->second;
        }

        const MorphPtr& morphism_ref(const Registry& reg, const std::string& name, SourcePos pos)
        {
            auto it = reg.morphisms.find(name);
            if (it == reg.morphisms.end())
                throw forward_reference("morphism '" + name + "' is not declared before use at "
                                        + loc(pos));
            return it->second;
        }

        /// A named class or a basis symbol of the given ring (or literal 0).
        GradedClass class_ref(const Registry& reg, const RingPtr& ring, SourcePos pos)
        {
            if (tok_.kind == Tok::Number && tok_.value == 0) {
                shift();
                return GradedClass::zero(ring);
            }
            Token t = expect(Tok::Ident, "class name, basis symbol or 0");
            auto it = reg.classes.find(t.text);
            if (it != reg.classes.end()) {
                if (it->second.ring() != ring)
                    throw validation_error("class '" + t.text + "' lives on '"
                                           + it->second.ring()->name() + "', expected '"
                                           + ring->name() + "' at " + loc(t.pos));
                return it->second;
            }
            if (ring->find(t.text))
                return GradedClass::basis_element(ring, t.text);
            throw forward_reference("'" + t.text + "' is neither a declared class nor a basis "
                                    "symbol of '" + ring->name() + "' at " + loc(t.pos));
        }

        void ring_decl(Registry& reg, SourcePos pos)
        {
            Token name = expect(Tok::Ident, "ring name");
            check_fresh(reg, name.text, name.pos);
            expect(Tok::LBrace, "'{'");
            if (!accept_ident("dimension"))
                throw syntax_error("expected 'dimension'", tok_.pos, "dimension");
            int dim = expect_int("dimension");
            std::vector<std::vector<std::string>> basis(static_cast<size_t>(std::max(dim, 0))
                                                        + 1);
            std::optional<std::string> point;
            std::vector<ProductEntry> products;
            while (tok_.kind != Tok::RBrace) {
                Token kw = expect(Tok::Ident, "basis, point, product or '}'");
                if (kw.text == "basis") {
                    int codim = expect_int("codimension");
                    if (codim < 0 || codim > dim)
                        throw validation_error("basis codimension out of range at "
                                               + loc(kw.pos));
                    expect(Tok::Colon, "':'");
                    basis[codim].push_back(expect(Tok::Ident, "basis symbol").text);
                    while (tok_.kind == Tok::Comma) {
                        shift();
                        basis[codim].push_back(expect(Tok::Ident, "basis symbol").text);
                    }
                } else if (kw.text == "point") {
                    point = expect(Tok::Ident, "point symbol").text;
                } else if (kw.text == "product") {
                    std::string lhs = expect(Tok::Ident, "basis symbol").text;
                    expect(Tok::Star, "'*'");
                    std::string rhs = expect(Tok::Ident, "basis symbol").text;
                    expect(Tok::Equals, "'='");
                    products.push_back({lhs, rhs, lincomb()});
                } else {
                    throw syntax_error("unexpected '" + kw.text + "'", kw.pos,
                                       "basis, point or product");
                }
            }
            shift(); // '}'
            try {
                reg.rings[name.text] = make_ring(name.text, dim, std::move(basis), products,
                                                 point);
            } catch (const validation_error& e) {
                throw validation_error(std::string(e.what()) + " (declared at " + loc(pos)
                                       + ")");
            }
        }

        void morphism_decl(Registry& reg, SourcePos pos)
        {
            Token name = expect(Tok::Ident, "morphism name");
            check_fresh(reg, name.text, name.pos);
            expect(Tok::Colon, "':'");
            Token src = expect(Tok::Ident, "source ring");
            expect(Tok::Arrow, "'->'");
            Token dst = expect(Tok::Ident, "target ring");
            const RingPtr& source = ring_ref(reg, src.text, src.pos);
            const RingPtr& target = ring_ref(reg, dst.text, dst.pos);
            expect(Tok::LBrace, "'{'");
            if (!accept_ident("rel_dim"))
                throw syntax_error("expected 'rel_dim'", tok_.pos, "rel_dim");
            Token rd = tok_;
            int sign = 1;
            if (tok_.kind == Tok::Minus) {
                sign = -1;
                shift();
            }
            int rel_dim = sign * expect_int("relative dimension");
            std::vector<std::pair<std::string, LinComb>> pull, push;
            while (tok_.kind != Tok::RBrace) {
                Token kw = expect(Tok::Ident, "pull, push or '}'");
                bool is_pull = kw.text == "pull";
                if (!is_pull && kw.text != "push")
                    throw syntax_error("unexpected '" + kw.text + "'", kw.pos, "pull or push");
                std::string sym = expect(Tok::Ident, "basis symbol").text;
                expect(Tok::Equals, "'='");
                LinComb comb = lincomb();
                (is_pull ? pull : push).push_back({sym, std::move(comb)});
            }
            shift(); // '}'
            (void)rd;
            try {
                reg.morphisms[name.text] =
                    register_morphism(name.text, source, target, pull, push, rel_dim);
            } catch (const validation_error& e) {
                throw validation_error(std::string(e.what()) + " (declared at " + loc(pos)
                                       + ")");
            }
        }

        void class_decl(Registry& reg, SourcePos pos)
        {
            Token name = expect(Tok::Ident, "class name");
            check_fresh(reg, name.text, name.pos);
            if (!accept_ident("on"))
                throw syntax_error("expected 'on'", tok_.pos, "on");
            Token ringname = expect(Tok::Ident, "ring name");
            const RingPtr& ring = ring_ref(reg, ringname.text, ringname.pos);
            expect(Tok::Equals, "'='");
            LinComb comb = lincomb();
            GradedClass value(ring);
            for (const auto& [c, sym] : comb) {
                auto key = ring->find(sym);
                if (!key)
                    throw forward_reference("'" + sym + "' is not a basis symbol of '"
                                            + ring->name() + "' at " + loc(pos));
                value.accumulate(*key, c);
            }
            reg.classes.emplace(name.text, std::move(value));
        }

        void family_decl(Registry& reg, SourcePos pos)
        {
            Token name = expect(Tok::Ident, "family name");
            check_fresh(reg, name.text, name.pos);
            expect(Tok::LBrace, "'{'");
            FamilyModel fam;
            fam.name = name.text;
            std::optional<GradedClass> cL, cF;
            while (tok_.kind != Tok::RBrace) {
                Token kw = expect(Tok::Ident, "family field or '}'");
                if (kw.text == "total") {
                    fam.total = ring_ref(reg, expect(Tok::Ident, "ring name").text, kw.pos);
                } else if (kw.text == "base") {
                    fam.base = ring_ref(reg, expect(Tok::Ident, "ring name").text, kw.pos);
                } else if (kw.text == "proj") {
                    fam.proj = morphism_ref(reg, expect(Tok::Ident, "morphism name").text,
                                            kw.pos);
                } else if (kw.text == "n") {
                    fam.n = expect_int("relative dimension");
                } else if (kw.text == "g") {
                    fam.g = expect_int("Picard dimension");
                } else if (kw.text == "cL") {
                    if (!fam.total)
                        throw forward_reference("cL before total at " + loc(kw.pos));
                    cL = class_ref(reg, fam.total, kw.pos);
                } else if (kw.text == "cF") {
                    if (!fam.total)
                        throw forward_reference("cF before total at " + loc(kw.pos));
                    cF = class_ref(reg, fam.total, kw.pos);
                } else if (kw.text == "fiber") {
                    fam.fiber = ring_ref(reg, expect(Tok::Ident, "ring name").text, kw.pos);
                } else if (kw.text == "fiber_restrict") {
                    fam.fiber_restrict =
                        morphism_ref(reg, expect(Tok::Ident, "morphism name").text, kw.pos);
                } else if (kw.text == "abelian") {
                    Token v = expect(Tok::Ident, "true or false");
                    if (v.text != "true" && v.text != "false")
                        throw syntax_error("expected 'true' or 'false'", v.pos);
                    fam.abelian_fibers = v.text == "true";
                } else if (kw.text == "d") {
                    int d = expect_int("rank");
                    fam.rank = Integer(d);
                } else if (kw.text == "fiber_polarization") {
                    if (!fam.fiber)
                        throw forward_reference("fiber_polarization before fiber at "
                                                + loc(kw.pos));
                    fam.fiber_polarization = class_ref(reg, fam.fiber, kw.pos);
                } else {
                    throw syntax_error("unknown family field '" + kw.text + "'", kw.pos);
                }
            }
            shift(); // '}'
            if (!fam.total || !fam.base || !fam.proj)
                throw validation_error("family '" + fam.name
                                       + "' is missing total, base or proj (declared at "
                                       + loc(pos) + ")");
            fam.cL = cL.value_or(GradedClass::zero(fam.total));
            fam.cF = cF.value_or(GradedClass::zero(fam.total));
            try {
                validate_family(fam);
            } catch (const validation_error& e) {
                throw validation_error(std::string(e.what()) + " (declared at " + loc(pos)
                                       + ")");
            }
            reg.families.emplace(name.text, std::move(fam));
        }

        Lexer lex_;
        Token tok_;
    };

} // namespace modelfile

inline Registry parse_model_file(std::string_view text)
{
    return modelfile::Parser(text).parse();
}

/// Evaluation environment of a registry: declared classes, every morphism,
/// and each basis symbol whose name appears in exactly one ring.
inline EvalEnv environment(const Registry& reg)
{
    EvalEnv env;
    env.classes = reg.classes;
    env.morphisms = reg.morphisms;
    std::map<std::string, int> counts;
    for (const auto& [rname, ring] : reg.rings)
        for (int i = 0; i < ring->total_basis(); ++i)
            ++counts[ring->basis_name(ring->key_of(i))];
    for (const auto& [rname, ring] : reg.rings)
        for (int i = 0; i < ring->total_basis(); ++i) {
            const std::string& sym = ring->basis_name(ring->key_of(i));
            if (counts[sym] == 1 && !env.classes.count(sym))
                env.classes.emplace(sym, GradedClass::basis_element(ring, sym));
        }
    return env;
}

} // namespace chowdr
