#include "chowdr/expr.hpp"
#include "chowdr/models.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace chowdr;

namespace {

ExprPtr lit(Rational q)
{
    Expr e{Expr::Kind::RationalLit};
    e.lit = std::move(q);
    return make_expr(std::move(e));
}

ExprPtr ref(std::string name)
{
    Expr e{Expr::Kind::ClassRef};
    e.name = std::move(name);
    return make_expr(std::move(e));
}

ExprPtr node(Expr::Kind kind, ExprPtr a, ExprPtr b = nullptr)
{
    Expr e{kind};
    e.a = std::move(a);
    e.b = std::move(b);
    return make_expr(std::move(e));
}

ExprPtr random_ast(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 10);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 9);
    std::uniform_int_distribution<int> expo(0, 5);
    static const char* names[] = {"x", "y", "z2", "L", "F_0", "pi", "theta_hat"};
    std::uniform_int_distribution<int> name(0, 6);
    switch (pick(rng)) {
    case 0: return lit(Rational(num(rng), den(rng)));
    case 1: return ref(names[name(rng)]);
    case 2: {
        Expr e{Expr::Kind::C1};
        e.name = names[name(rng)];
        return make_expr(std::move(e));
    }
    case 3: return node(Expr::Kind::Add, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 4: return node(Expr::Kind::Mul, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 5: {
        Expr e{Expr::Kind::Pow};
        e.a = random_ast(rng, depth - 1);
        e.k = expo(rng);
        return make_expr(std::move(e));
    }
    case 6: return node(Expr::Kind::Neg, random_ast(rng, depth - 1));
    case 7: return node(Expr::Kind::Exp, random_ast(rng, depth - 1));
    case 8: {
        Expr e{Expr::Kind::Push};
        e.name = names[name(rng)];
        e.a = random_ast(rng, depth - 1);
        return make_expr(std::move(e));
    }
    case 9: return node(Expr::Kind::Integrate, random_ast(rng, depth - 1));
    default: {
        Expr e{Expr::Kind::Component};
        e.a = random_ast(rng, depth - 1);
        e.k = expo(rng);
        return make_expr(std::move(e));
    }
    }
}

} // namespace

TEST_CASE("grammar examples")
{
    auto e = parse_expression("push(pi, c1(L)^2 * c1(F)^0)");
    REQUIRE(e->kind == Expr::Kind::Push);
    CHECK(e->name == "pi");
    REQUIRE(e->a->kind == Expr::Kind::Mul);
    CHECK(e->a->a->kind == Expr::Kind::Pow);
    CHECK(e->a->a->a->kind == Expr::Kind::C1);
    CHECK(e->a->a->k == 2);
    CHECK(e->a->b->k == 0);

    auto h = parse_expression("-1/2 * push(pi, c1(L)^2)");
    REQUIRE(h->kind == Expr::Kind::Mul);
    REQUIRE(h->a->kind == Expr::Kind::RationalLit);
    CHECK(h->a->lit == Rational(-1, 2));
    CHECK(h->b->kind == Expr::Kind::Push);

    auto p = parse_expression("a + b * c ^ 2");
    REQUIRE(p->kind == Expr::Kind::Add);
    REQUIRE(p->b->kind == Expr::Kind::Mul);
    CHECK(p->b->b->kind == Expr::Kind::Pow);

    // Leading minus binds loosest except on numeric literals.
    auto n = parse_expression("-a + b");
    CHECK(n->kind == Expr::Kind::Neg);
    CHECK(n->a->kind == Expr::Kind::Add);
    auto m = parse_expression("-2 + b");
    CHECK(m->kind == Expr::Kind::Add);
    CHECK(m->a->lit == -2);
}

TEST_CASE("syntax errors carry positions and expectations")
{
    try {
        parse_expression("c1(L ^");
        FAIL("expected a syntax error");
    } catch (const syntax_error& e) {
        CHECK(e.pos().line == 1);
        CHECK(e.pos().column == 6);
        CHECK(e.expected() == "')'");
    }
    CHECK_THROWS_AS(parse_expression("0.5"), syntax_error);
    CHECK_THROWS_AS(parse_expression("x ^ y"), syntax_error);
    CHECK_THROWS_AS(parse_expression("x ^ -2"), syntax_error);
    CHECK_THROWS_AS(parse_expression("x ^ 1/2"), syntax_error);
    CHECK_THROWS_AS(parse_expression("2 x"), syntax_error);
    CHECK_THROWS_AS(parse_expression("frob(x)"), syntax_error);
    CHECK_THROWS_AS(parse_expression("push(2, x)"), syntax_error);
    CHECK_THROWS_AS(parse_expression(""), syntax_error);
    CHECK_THROWS_AS(parse_expression("(x"), syntax_error);

    // Malformed input never crashes: fuzz a little.
    std::mt19937_64 rng(4242);
    const std::string alphabet = "abc12+-*^()/, .#";
    std::uniform_int_distribution<size_t> ch(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 24);
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        int n = len(rng);
        for (int j = 0; j < n; ++j)
            s += alphabet[ch(rng)];
        try {
            parse_expression(s);
        } catch (const syntax_error&) {
            // fine
        }
    }
}

TEST_CASE("format produces canonical minimal parentheses")
{
    CHECK(format_expression(parse_expression("((c1(L))^2)")) == "c1(L)^2");
    CHECK(format_expression(parse_expression("-1/2 * push(pi, c1(L)^2)"))
          == "-1/2 * push(pi, c1(L)^2)");
    CHECK(format_expression(lit(Rational(-1, 2))) == "-1/2");
    CHECK(format_expression(parse_expression("a + (b + c)")) == "a + (b + c)");
    CHECK(format_expression(parse_expression("(a + b) + c")) == "a + b + c");
    CHECK(format_expression(parse_expression("a * (b * c)")) == "a * (b * c)");
    CHECK(format_expression(parse_expression("(a * b) * c")) == "a * b * c");
    CHECK(format_expression(parse_expression("a - b - c")) == "a - b - c");
    CHECK(format_expression(parse_expression("(a + b)^2")) == "(a + b)^2");
    CHECK(format_expression(node(Expr::Kind::Neg, lit(3))) == "-(3)");
}

TEST_CASE("parse after format is the identity on random trees")
{
    std::mt19937_64 rng(20250809);
    for (int i = 0; i < 1000; ++i) {
        ExprPtr ast = random_ast(rng, 8);
        std::string text = format_expression(ast);
        ExprPtr back;
        INFO(text);
        REQUIRE_NOTHROW(back = parse_expression(text));
        REQUIRE(same_ast(ast, back));
        // Formatting is idempotent.
        CHECK(format_expression(back) == text);
    }
}

TEST_CASE("evaluation against the flagship environment")
{
    const Library& lib = library();
    EvalEnv env;
    env.classes.emplace("P", lib.es.poincare);
    env.classes.emplace("f1", GradedClass::basis_element(lib.es.ring, "f1"));
    env.classes.emplace("theta", GradedClass::basis_element(lib.elliptic, "theta"));
    env.morphisms.emplace("pi", lib.es.p2);

    auto hain = eval(parse_expression("(-1/2 * push(pi, c1(P)^2))^1"), env);
    CHECK(equal(std::get<GradedClass>(hain),
                GradedClass::basis_element(lib.elliptic_dual, "theta_hat")));

    auto integral = eval(parse_expression("integrate(c1(P)^2)"), env);
    CHECK(std::get<Rational>(integral) == -2);

    auto expP = eval(parse_expression("component(exp(P), 2)"), env);
    CHECK(equal(std::get<GradedClass>(expP),
                scalar_mul(-1, GradedClass::basis_element(lib.es.ring, "pt"))));

    // Scalars embed along the unit.
    auto mixed = eval(parse_expression("2 + f1"), env);
    CHECK(equal(std::get<GradedClass>(mixed),
                add(scalar_mul(2, GradedClass::unit(lib.es.ring)),
                    GradedClass::basis_element(lib.es.ring, "f1"))));
    auto scalar = eval(parse_expression("(2/3)^2 * 9"), env);
    CHECK(std::get<Rational>(scalar) == 4);

    CHECK_THROWS_AS(eval(parse_expression("f1 + theta"), env), ring_mismatch);
    CHECK_THROWS_AS(eval(parse_expression("nope"), env), unbound_name);
    CHECK_THROWS_AS(eval(parse_expression("push(nope, f1)"), env), unbound_name);
    CHECK_THROWS_AS(eval(parse_expression("exp(1 + f1)"), env), non_nilpotent_input);
    CHECK_THROWS_AS(eval(parse_expression("exp(2)"), env), eval_error);
    CHECK_THROWS_AS(eval(parse_expression("integrate(2)"), env), eval_error);
    CHECK_THROWS_AS(eval(parse_expression("c1(pt_class)"), env), unbound_name);

    // c1 refuses non-divisor bindings.
    EvalEnv env2 = env;
    env2.classes.emplace("PT", GradedClass::basis_element(lib.es.ring, "pt"));
    CHECK_THROWS_AS(eval(parse_expression("c1(PT)"), env2), eval_error);
}
