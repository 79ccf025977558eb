#include "chowdr/abelian.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chowdr;

namespace {

// Independent oracle for F(1): in the 2g-fold power of the Poincare class
// only the balanced multinomial term survives, giving
//   p2_*(P^(2g)) / (2g)! = ((2g)! / 2^g) * (-2)^g / (2g)! * e = (-1)^g e.
// Computed here with explicit integer arithmetic rather than ring calls.
Rational fourier_fundamental_sign(int g)
{
    Integer multinomial = factorial(2 * g);
    for (int i = 0; i < g; ++i)
        multinomial /= 2; // divide by 2!^g
    Rational coeff = Rational(multinomial) * rational_pow(Rational(-2), g)
                     / Rational(factorial(2 * g));
    return coeff;
}

} // namespace

TEST_CASE("fourier transform on the elliptic pair")
{
    const Library& lib = library();
    const AbelianModelPair& pair = lib.pair(1);

    GradedClass f_fund = fourier(pair, GradedClass::unit(pair.primal));
    CHECK(equal(f_fund, scalar_mul(-1, pair.zero_class_dual)));
    CHECK(equal(fourier(pair, pair.zero_class_primal), GradedClass::unit(pair.dual)));
    CHECK_THROWS_AS(fourier(pair, GradedClass::unit(pair.dual)), ring_mismatch);
}

TEST_CASE("fourier of the fundamental class matches the multinomial oracle")
{
    const Library& lib = library();
    for (int g = 1; g <= 3; ++g) {
        const AbelianModelPair& pair = lib.pair(g);
        GradedClass f = fourier(pair, GradedClass::unit(pair.primal));
        CHECK(equal(f, scalar_mul(fourier_fundamental_sign(g), pair.zero_class_dual)));
        CHECK(check_fourier_zero_section(pair));
        CHECK(equal(fourier(pair, pair.zero_class_primal), GradedClass::unit(pair.dual)));
    }
    CHECK(fourier_fundamental_sign(1) == -1);
    CHECK(fourier_fundamental_sign(2) == 1);
    CHECK(fourier_fundamental_sign(3) == -1);
}

TEST_CASE("abelian pair invariants")
{
    const Library& lib = library();
    for (int g = 1; g <= 3; ++g) {
        const AbelianModelPair& pair = lib.pair(g);
        CHECK(pullback(pair.section_from_dual, pair.poincare).is_zero());
        CHECK(pullback(pair.section_from_primal, pair.poincare).is_zero());
        CHECK(!power(pair.poincare, 2 * g).is_zero());
        CHECK(power(pair.poincare, 2 * g + 1).is_zero());
    }
}

TEST_CASE("poincare formula for library polarizations")
{
    const Library& lib = library();
    GradedClass theta_hat = GradedClass::basis_element(lib.elliptic_dual, "theta_hat");
    GradedClass twice = scalar_mul(2, theta_hat);
    GradedClass pol = lib.registry.named_class("g2_polarization");

    CHECK(poincare_formula_check(lib.elliptic_dual, theta_hat, 1, 1));
    CHECK(poincare_formula_check(lib.elliptic_dual, twice, 1, 2));
    CHECK_FALSE(poincare_formula_check(lib.elliptic_dual, twice, 1, 1));
    CHECK(poincare_formula_check(lib.jacobian_g2, pol, 2, 4));
    CHECK(poincare_formula_check(lib.genus2_jacobian,
                                 GradedClass::basis_element(lib.genus2_jacobian, "theta"), 2,
                                 1));

    // Exactly one rank fits a valid polarization.
    int hits = 0;
    for (int d = 1; d <= 12; ++d)
        if (poincare_formula_check(lib.jacobian_g2, pol, 2, d))
            ++hits;
    CHECK(hits == 1);
}

TEST_CASE("polarization rank")
{
    const Library& lib = library();
    GradedClass theta_hat = GradedClass::basis_element(lib.elliptic_dual, "theta_hat");
    CHECK(polarization_rank(lib.elliptic_dual, scalar_mul(2, theta_hat), 1) == 2);
    CHECK(polarization_rank(lib.elliptic_dual, theta_hat, 1) == 1);
    CHECK(polarization_rank(lib.jacobian_g2, lib.registry.named_class("g2_polarization"), 2)
          == 4);
    CHECK(polarization_rank(lib.genus2_jacobian,
                            scalar_mul(2, GradedClass::basis_element(lib.genus2_jacobian,
                                                                     "theta")),
                            2)
          == 4);

    CHECK_THROWS_AS(polarization_rank(lib.elliptic_dual, scalar_mul(Rational(1, 2), theta_hat),
                                      1),
                    not_positive_integer);
    CHECK_THROWS_AS(polarization_rank(lib.elliptic_dual, GradedClass::zero(lib.elliptic_dual),
                                      1),
                    not_positive_integer);
    CHECK_THROWS_AS(polarization_rank(lib.elliptic_dual, scalar_mul(-1, theta_hat), 1),
                    not_positive_integer);
}

TEST_CASE("symmetry and rigidification checks")
{
    const Library& lib = library();
    const EllipticSquare& es = lib.es;

    // Squares of the Poincare class are symmetric although P itself is not.
    CHECK(check_symmetric(power(es.poincare, 2), es.inv));
    CHECK_FALSE(check_symmetric(es.poincare, es.inv));
    CHECK_FALSE(check_symmetric(GradedClass::basis_element(es.ring, "delta"), es.inv));
    CHECK(check_symmetric(GradedClass::zero(es.ring), es.inv));
    CHECK(check_symmetric(GradedClass::basis_element(es.ring, "f1"), es.inv));

    const MorphPtr& zero_section = lib.registry.morphism("rel_zero_section");
    GradedClass rel_theta = GradedClass::basis_element(lib.ed2.ring, "theta_hat_one");
    GradedClass base_divisor = GradedClass::basis_element(lib.ed2.ring, "one_theta_hat");
    CHECK(check_rigidified(scalar_mul(2, rel_theta), zero_section));
    CHECK_FALSE(check_rigidified(base_divisor, zero_section));
    CHECK(check_rigidified(GradedClass::zero(lib.ed2.ring), zero_section));
}

TEST_CASE("multiplication pulls the zero-section class back by r^(2g)")
{
    const Library& lib = library();
    struct Case {
        RingPtr ring;
        int g;
    };
    for (const Case& c : {Case{lib.elliptic_dual, 1}, Case{lib.jacobian_g2, 2},
                          Case{lib.genus2_jacobian, 2}}) {
        GradedClass e(c.ring);
        e.set(*c.ring->point_class(), 1);
        for (int r : {2, 3, 5}) {
            auto m = mult_morphism(c.ring, r, "m");
            CHECK(equal(pullback(m, e), scalar_mul(Rational(integer_pow(r, 2 * c.g)), e)));
        }
    }
}
