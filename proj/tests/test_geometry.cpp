#include "chowdr/geometry.hpp"
#include "chowdr/models.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chowdr;

TEST_CASE("tensor products model Kuenneth on divisor classes")
{
    const Library& lib = library();

    // E (x) E: two fiber classes in codimension 1, no graph class.
    CHECK(lib.ee2.ring->basis_size(1) == 2);
    GradedClass t1 = GradedClass::basis_element(lib.ee2.ring, "theta_one");
    GradedClass t2 = GradedClass::basis_element(lib.ee2.ring, "one_theta");
    CHECK(power(t1, 2).is_zero());
    CHECK(equal(mul(t1, t2), GradedClass::basis_element(lib.ee2.ring, "theta_theta")));

    CHECK(lib.es2.ring->dimension() == 4);
    CHECK(integrate(GradedClass::basis_element(lib.ee2.ring, "theta_theta")) == 1);

    // External product against the projections.
    GradedClass theta = GradedClass::basis_element(lib.elliptic, "theta");
    CHECK(equal(lib.ee2.tensor_class(theta, GradedClass::unit(lib.elliptic)),
                pullback(lib.ee2.proj1, theta)));
    CHECK(equal(pushforward(lib.ee2.proj1,
                            lib.ee2.tensor_class(theta, theta)),
                theta));
    CHECK(pushforward(lib.ee2.proj1, pullback(lib.ee2.proj1, theta)).is_zero());
}

TEST_CASE("tensor morphisms act factorwise")
{
    const Library& lib = library();
    const AbelianModelPair& g2 = lib.pair(2);
    GradedClass P = lib.es.poincare;
    GradedClass P1 = pullback(lib.es2.proj1, P);
    // (p2 x p2)_* of P^2 (x) pt.
    GradedClass x = lib.es2.tensor_class(power(P, 2),
                                         GradedClass::basis_element(lib.es.ring, "pt"));
    GradedClass expected = lib.ed2.tensor_class(
        scalar_mul(-2, GradedClass::basis_element(lib.elliptic_dual, "theta_hat")),
        GradedClass::basis_element(lib.elliptic_dual, "theta_hat"));
    CHECK(equal(pushforward(g2.p2, x), expected));
    CHECK(equal(pullback(g2.p1, GradedClass::basis_element(lib.ee2.ring, "theta_one")),
                mul(GradedClass::basis_element(lib.es2.ring, "f1_one"), GradedClass::unit(lib.es2.ring))));
}

TEST_CASE("elliptic square: multiplication and inversion tables")
{
    const Library& lib = library();
    const EllipticSquare& es = lib.es;
    GradedClass P = es.poincare;

    CHECK(equal(power(P, 2),
                scalar_mul(-2, GradedClass::basis_element(es.ring, "pt"))));
    CHECK(equal(pushforward(es.p2, power(P, 2)),
                scalar_mul(-2, GradedClass::basis_element(lib.elliptic_dual, "theta_hat"))));
    CHECK(equal(pullback(es.inv, P), scalar_mul(-1, P)));
    for (int r = -3; r <= 3; ++r)
        CHECK(equal(pullback(es.mult(r), P), scalar_mul(r, P)));
    CHECK(same_tables(*es.mult(1), *identity_morphism(es.ring)));

    // The inversion is an involution.
    CHECK(same_tables(*compose(es.inv, es.inv), *identity_morphism(es.ring)));
}

TEST_CASE("truncated polynomial rings")
{
    auto tr = truncated_polynomial_ring("demo", {{"a", 1, 3}}, 2);
    CHECK(tr.ring->total_basis() == 3);
    CHECK(tr.ring->find("a^2").has_value());
    const GradedClass& a = tr.generators[0];
    CHECK(!power(a, 2).is_zero());
    CHECK(power(a, 3).is_zero());

    auto tr2 = truncated_polynomial_ring("demo2", {{"a1", 1, 2}, {"a2", 1, 2}}, 2);
    GradedClass sum = add(tr2.generators[0], tr2.generators[1]);
    CHECK(equal(power(sum, 2), scalar_mul(2, mul(tr2.generators[0], tr2.generators[1]))));

    // Truncation by the ambient dimension, independently of the exponents.
    auto tr3 = truncated_polynomial_ring("demo3", {{"a", 1, 10}}, 2);
    CHECK(tr3.ring->total_basis() == 3);
    CHECK_THROWS_AS(truncated_polynomial_ring("bad", {{"a", 1, 0}}, 2), validation_error);
}

TEST_CASE("poincare_class recognizes tensor powers of the elliptic square")
{
    const Library& lib = library();
    CHECK(equal(poincare_class(lib.es.ring), lib.es.poincare));
    CHECK(equal(poincare_class(lib.es2.ring), lib.pair(2).poincare));

    // Rigidification: both section pullbacks vanish, and 1 x r scales it.
    CHECK(pullback(lib.es.e1, lib.es.poincare).is_zero());
    CHECK(pullback(lib.es.e2, lib.es.poincare).is_zero());

    CHECK(component(poincare_class(lib.es2.ring), 1).terms().size() == 6);
    CHECK_THROWS_AS(poincare_class(lib.jacobian_g2), unsupported_model);
    CHECK_THROWS_AS(poincare_class(lib.ee2.ring), unsupported_model);
}

TEST_CASE("family validation catches inconsistent packages")
{
    const Library& lib = library();
    FamilyModel fam = lib.family("flagship_family");
    CHECK_NOTHROW(validate_family(fam));

    FamilyModel bad = fam;
    bad.n = 2;
    CHECK_THROWS_AS(validate_family(bad), validation_error);

    bad = fam;
    bad.cL = GradedClass::basis_element(lib.es.ring, "pt"); // not a divisor
    CHECK_THROWS_AS(validate_family(bad), validation_error);

    bad = fam;
    bad.cL = GradedClass::basis_element(lib.es.ring, "f2"); // degree 1 on fibers
    CHECK_THROWS_AS(validate_family(bad), validation_error);

    bad = fam;
    bad.fiber = lib.jacobian_g2; // wrong Picard fiber dimension
    CHECK_THROWS_AS(validate_family(bad), validation_error);
}

TEST_CASE("genus-2 total space pushforwards")
{
    const Library& lib = library();
    const FamilyModel& fam = lib.family("genus2_family");
    GradedClass u = GradedClass::basis_element(lib.genus2_total, "u");
    GradedClass theta = GradedClass::basis_element(lib.genus2_jacobian, "theta");

    // The defining relation: pushing u^2 down gives -2 theta.
    CHECK(equal(pushforward(fam.proj, power(u, 2)), scalar_mul(-2, theta)));
    // u is numerically trivial on fibers and rigidified along the point
    // section a.
    CHECK(pullback(fam.fiber_restrict, u).is_zero());
    CHECK(mul(u, GradedClass::basis_element(lib.genus2_total, "a")).is_zero());
}
