#include "chowdr/models.hpp"
#include "chowdr/morphism.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chowdr;

TEST_CASE("register_morphism accepts the projection and the identity")
{
    const Library& lib = library();
    // The library morphisms passed full validation at construction; rebuild
    // the second projection from scratch as an explicit witness.
    auto p2 = register_morphism("p2_again", lib.es.ring, lib.elliptic_dual,
                                {{"one", {{1, "one"}}}, {"theta_hat", {{1, "f2"}}}},
                                {{"one", {}},
                                 {"f1", {{1, "one"}}},
                                 {"f2", {}},
                                 {"delta", {{1, "one"}}},
                                 {"pt", {{1, "theta_hat"}}}},
                                1);
    CHECK(same_tables(*p2, *lib.es.p2));
    CHECK(same_tables(*identity_morphism(lib.es.ring), *lib.es.mult(1)));
}

TEST_CASE("register_morphism rejects inconsistent tables")
{
    const Library& lib = library();
    // Doubling the point pushforward breaks the projection formula against
    // f1 * f2 = pt.
    CHECK_THROWS_AS(register_morphism("bad", lib.es.ring, lib.elliptic_dual,
                                      {{"one", {{1, "one"}}}, {"theta_hat", {{1, "f2"}}}},
                                      {{"one", {}},
                                       {"f1", {{1, "one"}}},
                                       {"f2", {}},
                                       {"delta", {{1, "one"}}},
                                       {"pt", {{2, "theta_hat"}}}},
                                      1),
                    projection_formula_violation);
    // Pullback that is not multiplicative: theta_hat -> f1 + f2 squares to
    // 2 pt != 0.
    CHECK_THROWS_AS(register_morphism("bad", lib.es.ring, lib.elliptic_dual,
                                      {{"one", {{1, "one"}}},
                                       {"theta_hat", {{1, "f1"}, {1, "f2"}}}},
                                      {{"one", {}},
                                       {"f1", {{1, "one"}}},
                                       {"f2", {}},
                                       {"delta", {{1, "one"}}},
                                       {"pt", {{1, "theta_hat"}}}},
                                      1),
                    not_ring_homomorphism);
    // Wrong relative dimension.
    CHECK_THROWS_AS(register_morphism("bad", lib.es.ring, lib.elliptic_dual,
                                      {{"one", {{1, "one"}}}, {"theta_hat", {{1, "f2"}}}},
                                      {{"one", {}},
                                       {"f1", {{1, "one"}}},
                                       {"f2", {}},
                                       {"delta", {{1, "one"}}},
                                       {"pt", {{1, "theta_hat"}}}},
                                      2),
                    degree_mismatch);
    // Missing table entry.
    CHECK_THROWS_AS(register_morphism("bad", lib.es.ring, lib.elliptic_dual,
                                      {{"one", {{1, "one"}}}, {"theta_hat", {{1, "f2"}}}},
                                      {{"one", {}},
                                       {"f1", {{1, "one"}}},
                                       {"f2", {}},
                                       {"delta", {{1, "one"}}}},
                                      1),
                    validation_error);
}

TEST_CASE("pullback and pushforward extend the tables linearly")
{
    const Library& lib = library();
    const EllipticSquare& es = lib.es;
    GradedClass theta_hat = GradedClass::basis_element(lib.elliptic_dual, "theta_hat");

    CHECK(equal(pushforward(es.p2, power(es.poincare, 2)), scalar_mul(-2, theta_hat)));
    CHECK(equal(pullback(es.p2, theta_hat), GradedClass::basis_element(es.ring, "f2")));
    auto id = identity_morphism(es.ring);
    CHECK(equal(pushforward(id, es.poincare), es.poincare));

    CHECK_THROWS_AS(pullback(es.p2, GradedClass::unit(es.ring)), ring_mismatch);
    CHECK_THROWS_AS(pushforward(es.p2, theta_hat), ring_mismatch);

    // Pushforward drops classes that would land in negative codimension.
    CHECK(pushforward(es.p2, GradedClass::unit(es.ring)).is_zero());
}

TEST_CASE("composition is functorial and sections invert projections")
{
    const Library& lib = library();
    const EllipticSquare& es = lib.es;

    CHECK(same_tables(*compose(es.p2, es.e1), *identity_morphism(lib.elliptic_dual)));
    CHECK(same_tables(*compose(es.p1, es.e2), *identity_morphism(lib.elliptic)));
    CHECK(same_tables(*compose(es.p1, es.diag), *identity_morphism(lib.elliptic)));

    const FamilyModel& eop = lib.family("elliptic_over_point");
    CHECK(compose(eop.proj, es.p1)->rel_dim() == 2);
    CHECK_THROWS_AS(compose(es.p1, es.p2), composition_mismatch);

    // sigma^* pi^* = id on every basis class.
    for (int i = 0; i < lib.elliptic_dual->total_basis(); ++i) {
        GradedClass x = GradedClass::basis_element(
            lib.elliptic_dual, lib.elliptic_dual->basis_name(lib.elliptic_dual->key_of(i)));
        CHECK(equal(pullback(es.e1, pullback(es.p2, x)), x));
    }
}

TEST_CASE("functoriality across all composable library chains")
{
    const Library& lib = library();
    int chains = 0;
    for (const auto& [fn, f] : lib.registry.morphisms)
        for (const auto& [gn, g] : lib.registry.morphisms) {
            if (g->target() != f->source())
                continue;
            ++chains;
            auto fg = compose(f, g);
            for (int t = 0; t < fg->target()->total_basis(); ++t)
                REQUIRE(equal(fg->pull_basis(t), pullback(g, f->pull_basis(t))));
            for (int b = 0; b < fg->source()->total_basis(); ++b)
                REQUIRE(equal(fg->push_basis(b), pushforward(f, g->push_basis(b))));
        }
    CHECK(chains > 10);
}
