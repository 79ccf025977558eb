#pragma once

#include "chowdr/models.hpp"

namespace chowdr {

/// Fourier transform of a class on the primal side:
/// z |-> p2_*(exp(c1(P)) * p1^*(z)).
inline GradedClass fourier(const AbelianModelPair& pair, const GradedClass& z)
{
    if (z.ring() != pair.primal)
        throw ring_mismatch("fourier: class lives on '" + z.ring()->name() + "', expected '"
                            + pair.primal->name() + "'");
    return pushforward(pair.p2, mul(exp_truncated(pair.poincare), pullback(pair.p1, z)));
}

/// e = (-1)^g F([A]): the transform of the fundamental class is the
/// zero-section class of the dual, up to the sign (-1)^g.
inline bool check_fourier_zero_section(const AbelianModelPair& pair)
{
    GradedClass f = fourier(pair, GradedClass::unit(pair.primal));
    Rational sign = (pair.g % 2 == 0) ? 1 : -1;
    return equal(scalar_mul(sign, f), pair.zero_class_dual);
}

/// The numerical Poincare formula for a polarization of rank d:
/// E^g = g! * d * e and E^(g+1) = 0.
inline bool poincare_formula_check(const RingPtr& model, const GradedClass& e_class, int g,
                                   const Integer& d)
{
    if (e_class.ring() != model)
        throw ring_mismatch("poincare_formula_check: class does not live on the given model");
    auto pt = model->point_class();
    if (!pt)
        throw no_point_class("poincare_formula_check: model '" + model->name()
                             + "' has no point class");
    GradedClass zero_section(model);
    zero_section.set(*pt, 1);
    GradedClass expected = scalar_mul(Rational(factorial(g) * d), zero_section);
    return equal(power(e_class, g), expected) && power(e_class, g + 1).is_zero();
}

/// Rank of the polarization defined by a fiberwise divisor class:
/// integrate(E^g) / g!. Refuses (rather than rounds) when the input is not
/// an honest polarization in the model.
inline Integer polarization_rank(const RingPtr& fiber_model, const GradedClass& e_fiber, int g)
{
    if (e_fiber.ring() != fiber_model)
        throw ring_mismatch("polarization_rank: class does not live on the fiber model");
    Rational r = integrate(power(e_fiber, g)) / Rational(factorial(g));
    if (rational_den(r) != 1 || r <= 0)
        throw not_positive_integer("polarization_rank: E^g/g! integrates to " + to_string(r)
                                   + ", not a positive integer");
    return rational_num(r);
}

/// [-1]^* E = E.
inline bool check_symmetric(const GradedClass& e_class, const MorphPtr& inv)
{
    return equal(pullback(inv, e_class), e_class);
}

/// e^* E = 0: the class restricts trivially along the given section.
inline bool check_rigidified(const GradedClass& e_class, const MorphPtr& e_section)
{
    return pullback(e_section, e_class).is_zero();
}

} // namespace chowdr
