#pragma once

#include "chowdr/geometry.hpp"
#include "chowdr/morphism.hpp"
#include "chowdr/registry.hpp"
#include "chowdr/ring.hpp"

#include <map>
#include <string>
#include <vector>

namespace chowdr {

/// The model of E x E^ (an elliptic curve times its dual) together with its
/// standard morphisms. Codimension-1 basis: f1 = [point x E^], f2 =
/// [E x point], delta = the graph of the canonical isomorphism. The Poincare
/// class is delta - f1 - f2: the unique divisor class restricting trivially
/// along both zero sections on which 1 x r acts by r.
struct EllipticSquare {
    RingPtr elliptic;      // first factor, basis {one, theta}
    RingPtr elliptic_dual; // second factor, basis {one, theta_hat}
    RingPtr ring;
    MorphPtr p1;   // projection to the first factor
    MorphPtr p2;   // projection to the second factor
    MorphPtr e1;   // zero-E section: E^ -> E x E^
    MorphPtr e2;   // zero-E^ section: E -> E x E^
    MorphPtr diag; // graph of the canonical isomorphism: E -> E x E^
    MorphPtr inv;  // 1 x (-1)
    GradedClass poincare;

    /// 1 x r. Point classes on the second factor pull back with
    /// multiplicity r^2 (the degree of multiplication by r); the action on
    /// delta follows from delta = poincare + f1 + f2.
    MorphPtr mult(int r) const
    {
        const Rational r2 = Rational(r) * r;
        return register_morphism(
            "mult" + std::to_string(r), ring, ring,
            {{"one", {{1, "one"}}},
             {"f1", {{1, "f1"}}},
             {"f2", {{r2, "f2"}}},
             {"delta", {{r, "delta"}, {1 - Rational(r), "f1"}, {r2 - r, "f2"}}},
             {"pt", {{r2, "pt"}}}},
            {{"one", {{r2, "one"}}},
             {"f1", {{r2, "f1"}}},
             {"f2", {{1, "f2"}}},
             {"delta", {{r, "delta"}, {r2 - r, "f1"}, {1 - Rational(r), "f2"}}},
             {"pt", {{1, "pt"}}}},
            0);
    }
};

inline EllipticSquare make_elliptic_square(RingPtr elliptic, RingPtr elliptic_dual)
{
    EllipticSquare es;
    es.elliptic = std::move(elliptic);
    es.elliptic_dual = std::move(elliptic_dual);
    es.ring = make_ring("elliptic_square", 2,
                        {{"one"}, {"f1", "f2", "delta"}, {"pt"}},
                        {
                            {"f1", "f1", {}},
                            {"f2", "f2", {}},
                            {"delta", "delta", {}},
                            {"f1", "f2", {{1, "pt"}}},
                            {"f1", "delta", {{1, "pt"}}},
                            {"f2", "delta", {{1, "pt"}}},
                        },
                        "pt");

    es.p1 = register_morphism("p1", es.ring, es.elliptic,
                              {{"one", {{1, "one"}}}, {"theta", {{1, "f1"}}}},
                              {{"one", {}},
                               {"f1", {}},
                               {"f2", {{1, "one"}}},
                               {"delta", {{1, "one"}}},
                               {"pt", {{1, "theta"}}}},
                              1);
    es.p2 = register_morphism("p2", es.ring, es.elliptic_dual,
                              {{"one", {{1, "one"}}}, {"theta_hat", {{1, "f2"}}}},
                              {{"one", {}},
                               {"f1", {{1, "one"}}},
                               {"f2", {}},
                               {"delta", {{1, "one"}}},
                               {"pt", {{1, "theta_hat"}}}},
                              1);
    es.e1 = register_morphism("e1", es.elliptic_dual, es.ring,
                              {{"one", {{1, "one"}}},
                               {"f1", {}},
                               {"f2", {{1, "theta_hat"}}},
                               {"delta", {{1, "theta_hat"}}},
                               {"pt", {}}},
                              {{"one", {{1, "f1"}}}, {"theta_hat", {{1, "pt"}}}},
                              -1);
    es.e2 = register_morphism("e2", es.elliptic, es.ring,
                              {{"one", {{1, "one"}}},
                               {"f1", {{1, "theta"}}},
                               {"f2", {}},
                               {"delta", {{1, "theta"}}},
                               {"pt", {}}},
                              {{"one", {{1, "f2"}}}, {"theta", {{1, "pt"}}}},
                              -1);
    es.diag = register_morphism("diag", es.elliptic, es.ring,
                                {{"one", {{1, "one"}}},
                                 {"f1", {{1, "theta"}}},
                                 {"f2", {{1, "theta"}}},
                                 {"delta", {}},
                                 {"pt", {}}},
                                {{"one", {{1, "delta"}}}, {"theta", {{1, "pt"}}}},
                                -1);
    es.inv = es.mult(-1);
    es.poincare = GradedClass::basis_element(es.ring, "delta")
                  - GradedClass::basis_element(es.ring, "f1")
                  - GradedClass::basis_element(es.ring, "f2");
    return es;
}

/// Numerical action of fiberwise multiplication by r on an abelian model
/// whose basis consists of products of symmetric divisor classes: pullback
/// scales codimension c by r^(2c), pushforward by r^(2(dim-c)).
inline MorphPtr mult_morphism(const RingPtr& ring, int r, std::string name)
{
    std::vector<GradedClass> pull, push;
    pull.reserve(ring->total_basis());
    push.reserve(ring->total_basis());
    for (int i = 0; i < ring->total_basis(); ++i) {
        BasisKey k = ring->key_of(i);
        GradedClass up(ring), down(ring);
        up.set(k, integer_pow(r, 2 * k.codim));
        down.set(k, integer_pow(r, 2 * (ring->dimension() - k.codim)));
        pull.push_back(std::move(up));
        push.push_back(std::move(down));
    }
    return register_morphism(std::move(name), ring, ring, std::move(pull), std::move(push), 0);
}

/// The Poincare class of the elliptic square or one of its tensor powers:
/// the external sum of delta - f1 - f2 across the factors.
inline GradedClass poincare_class(const RingPtr& model)
{
    // Count factors: the name must be "elliptic_square" joined by "_x_".
    const std::string base = "elliptic_square";
    const std::string sep = "_x_";
    const std::string& n = model->name();
    int factors = 0;
    size_t pos = 0;
    while (true) {
        if (n.compare(pos, base.size(), base) != 0)
            throw unsupported_model("poincare_class: '" + n
                                    + "' is not a tensor power of the elliptic square");
        ++factors;
        pos += base.size();
        if (pos == n.size())
            break;
        if (n.compare(pos, sep.size(), sep) != 0)
            throw unsupported_model("poincare_class: '" + n
                                    + "' is not a tensor power of the elliptic square");
        pos += sep.size();
    }

    GradedClass P(model);
    for (int i = 0; i < factors; ++i)
        for (const auto& [sym, sign] :
             std::vector<std::pair<std::string, int>>{{"delta", 1}, {"f1", -1}, {"f2", -1}}) {
            std::string name;
            for (int j = 0; j < factors; ++j) {
                if (j)
                    name += "_";
                name += (j == i) ? sym : "one";
            }
            auto key = model->find(name);
            if (!key)
                throw unsupported_model("poincare_class: missing basis symbol '" + name
                                        + "' in '" + model->name() + "'");
            P.accumulate(*key, sign);
        }
    return P;
}

/// One abelian scheme together with its dual: the product model, the
/// projections, the Poincare class, the two rigidifying sections and the
/// zero-section classes on both sides.
struct AbelianModelPair {
    std::string name;
    RingPtr product;
    RingPtr primal;
    RingPtr dual;
    MorphPtr p1; // product -> primal
    MorphPtr p2; // product -> dual
    GradedClass poincare;
    int g = 1;
    MorphPtr section_from_dual;   // dual -> product, rigidifies along zero of the primal side
    MorphPtr section_from_primal; // primal -> product
    GradedClass zero_class_primal;
    GradedClass zero_class_dual;
};

inline void validate_pair(const AbelianModelPair& pair)
{
    auto fail = [&](const std::string& why) {
        throw validation_error("abelian pair '" + pair.name + "': " + why);
    };
    if (!pullback(pair.section_from_dual, pair.poincare).is_zero())
        fail("Poincare class does not restrict trivially along the zero-primal section");
    if (!pullback(pair.section_from_primal, pair.poincare).is_zero())
        fail("Poincare class does not restrict trivially along the zero-dual section");
    if (power(pair.poincare, 2 * pair.g).is_zero())
        fail("Poincare class has vanishing top self-intersection");
    if (!power(pair.poincare, 2 * pair.g + 1).is_zero())
        fail("Poincare class survives beyond twice the fiber dimension");
}

/// Everything the engine ships built in: the model library, its morphisms,
/// the abelian pairs for g = 1..3 and the verification families. Immutable
/// after construction; access through library().
struct Library {
    RingPtr point_ring;
    RingPtr elliptic;
    RingPtr elliptic_dual;
    RingPtr proj_line;
    RingPtr genus2_curve;
    RingPtr genus2_jacobian;
    RingPtr jacobian_g2;
    RingPtr genus2_total;
    EllipticSquare es;
    TensorProduct ee2, ed2, es2, es3, ee3, ed3, eled, esed, pled;
    std::vector<AbelianModelPair> pairs; // index 0..2 holds g = 1..3
    Registry registry;

    const AbelianModelPair& pair(int g) const
    {
        if (g < 1 || g > static_cast<int>(pairs.size()))
            throw unsupported_model("no built-in abelian pair of dimension "
                                    + std::to_string(g));
        return pairs[g - 1];
    }

    const FamilyModel& family(const std::string& name) const { return registry.family(name); }
};

namespace detail {
    inline Library build_library()
    {
        Library lib;
        lib.point_ring = make_ring("point", 0, {{"one"}}, {}, "one");
        lib.elliptic = make_ring("elliptic", 1, {{"one"}, {"theta"}}, {{"theta", "theta", {}}},
                                 "theta");
        lib.elliptic_dual = make_ring("elliptic_dual", 1, {{"one"}, {"theta_hat"}},
                                      {{"theta_hat", "theta_hat", {}}}, "theta_hat");
        lib.proj_line = make_ring("proj_line", 1, {{"one"}, {"h"}}, {{"h", "h", {}}}, "h");
        lib.genus2_curve = make_ring("genus2_curve", 1, {{"one"}, {"pt"}}, {{"pt", "pt", {}}},
                                     "pt");
        // Jacobian of a genus-2 curve: principally polarized, theta^2 = 2 pt.
        lib.genus2_jacobian = make_ring("genus2_jacobian", 2, {{"one"}, {"theta"}, {"pt"}},
                                        {{"theta", "theta", {{2, "pt"}}},
                                         {"theta", "pt", {}},
                                         {"pt", "pt", {}}},
                                        "pt");
        // Jacobian of a product of two elliptic curves.
        lib.jacobian_g2 = make_ring("jacobian_g2", 2, {{"one"}, {"theta1", "theta2"}, {"pt"}},
                                    {{"theta1", "theta1", {}},
                                     {"theta2", "theta2", {}},
                                     {"theta1", "theta2", {{1, "pt"}}}},
                                    "pt");

        // Genus-2 curve times its Jacobian. Codimension 1: a = [point x J],
        // t = pullback of theta, u = the universal divisor class rigidified
        // along a point section (so a*u = 0 and u is fiberwise trivial).
        // Codimension 2: q = [curve x point], s = a*t, w = u*t. The relation
        // u^2 = -2*s and the degree u*w = -4 encode p2_*(u^2) = -2*theta.
        lib.genus2_total = make_ring("genus2_total", 3,
                                     {{"one"}, {"a", "t", "u"}, {"q", "s", "w"}, {"p"}},
                                     {
                                         {"a", "a", {}},
                                         {"a", "t", {{1, "s"}}},
                                         {"a", "u", {}},
                                         {"t", "t", {{2, "q"}}},
                                         {"t", "u", {{1, "w"}}},
                                         {"u", "u", {{-2, "s"}}},
                                         {"a", "q", {{1, "p"}}},
                                         {"a", "s", {}},
                                         {"a", "w", {}},
                                         {"t", "q", {}},
                                         {"t", "s", {{2, "p"}}},
                                         {"t", "w", {}},
                                         {"u", "q", {}},
                                         {"u", "s", {}},
                                         {"u", "w", {{-4, "p"}}},
                                     },
                                     "p");

        lib.es = make_elliptic_square(lib.elliptic, lib.elliptic_dual);

        lib.ee2 = tensor_product(lib.elliptic, lib.elliptic);
        lib.ed2 = tensor_product(lib.elliptic_dual, lib.elliptic_dual);
        lib.es2 = tensor_product(lib.es.ring, lib.es.ring);
        lib.es3 = tensor_product(lib.es2.ring, lib.es.ring);
        lib.ee3 = tensor_product(lib.ee2.ring, lib.elliptic);
        lib.ed3 = tensor_product(lib.ed2.ring, lib.elliptic_dual);
        lib.eled = tensor_product(lib.elliptic, lib.elliptic_dual);
        lib.esed = tensor_product(lib.es.ring, lib.elliptic_dual);
        lib.pled = tensor_product(lib.proj_line, lib.elliptic_dual);

        // Abelian pairs for g = 1, 2, 3 by taking tensor powers of the
        // elliptic square.
        {
            AbelianModelPair g1;
            g1.name = "elliptic_pair";
            g1.product = lib.es.ring;
            g1.primal = lib.elliptic;
            g1.dual = lib.elliptic_dual;
            g1.p1 = lib.es.p1;
            g1.p2 = lib.es.p2;
            g1.poincare = lib.es.poincare;
            g1.g = 1;
            g1.section_from_dual = lib.es.e1;
            g1.section_from_primal = lib.es.e2;
            g1.zero_class_primal = GradedClass::basis_element(lib.elliptic, "theta");
            g1.zero_class_dual = GradedClass::basis_element(lib.elliptic_dual, "theta_hat");
            validate_pair(g1);
            lib.pairs.push_back(std::move(g1));

            AbelianModelPair g2;
            g2.name = "elliptic_pair_g2";
            g2.product = lib.es2.ring;
            g2.primal = lib.ee2.ring;
            g2.dual = lib.ed2.ring;
            g2.p1 = tensor_morphism(lib.es2, lib.ee2, lib.es.p1, lib.es.p1, "p1_x_p1");
            g2.p2 = tensor_morphism(lib.es2, lib.ed2, lib.es.p2, lib.es.p2, "p2_x_p2");
            g2.poincare = poincare_class(lib.es2.ring);
            g2.g = 2;
            g2.section_from_dual = tensor_morphism(lib.ed2, lib.es2, lib.es.e1, lib.es.e1,
                                                   "e1_x_e1");
            g2.section_from_primal = tensor_morphism(lib.ee2, lib.es2, lib.es.e2, lib.es.e2,
                                                     "e2_x_e2");
            g2.zero_class_primal = GradedClass::basis_element(lib.ee2.ring, "theta_theta");
            g2.zero_class_dual = GradedClass::basis_element(lib.ed2.ring, "theta_hat_theta_hat");
            validate_pair(g2);
            lib.pairs.push_back(g2);

            AbelianModelPair g3;
            g3.name = "elliptic_pair_g3";
            g3.product = lib.es3.ring;
            g3.primal = lib.ee3.ring;
            g3.dual = lib.ed3.ring;
            g3.p1 = tensor_morphism(lib.es3, lib.ee3, g2.p1, lib.es.p1, "p1_x_p1_x_p1");
            g3.p2 = tensor_morphism(lib.es3, lib.ed3, g2.p2, lib.es.p2, "p2_x_p2_x_p2");
            g3.poincare = poincare_class(lib.es3.ring);
            g3.g = 3;
            g3.section_from_dual = tensor_morphism(lib.ed3, lib.es3, g2.section_from_dual,
                                                   lib.es.e1, "e1_x_e1_x_e1");
            g3.section_from_primal = tensor_morphism(lib.ee3, lib.es3, g2.section_from_primal,
                                                     lib.es.e2, "e2_x_e2_x_e2");
            g3.zero_class_primal = GradedClass::basis_element(lib.ee3.ring, "theta_theta_theta");
            g3.zero_class_dual = GradedClass::basis_element(lib.ed3.ring,
                                                            "theta_hat_theta_hat_theta_hat");
            validate_pair(g3);
            lib.pairs.push_back(std::move(g3));
        }

        auto twice = [](const GradedClass& x) { return scalar_mul(2, x); };

        // The flagship family: X = E x E^ over E^ with the Poincare bundle.
        // Its double ramification locus is the single point of the base
        // where the bundle is fiberwise trivial, i.e. the zero section.
        FamilyModel flagship;
        flagship.name = "flagship_family";
        flagship.total = lib.es.ring;
        flagship.base = lib.elliptic_dual;
        flagship.proj = lib.es.p2;
        flagship.n = 1;
        flagship.g = 1;
        flagship.cL = lib.es.poincare;
        flagship.cF = GradedClass::basis_element(lib.es.ring, "f1");
        flagship.fiber = lib.elliptic_dual;
        flagship.fiber_restrict = lib.es.e2;
        flagship.abelian_fibers = true;
        flagship.fiber_polarization =
            twice(GradedClass::basis_element(lib.elliptic_dual, "theta_hat"));
        flagship.rank = 2;
        validate_family(flagship);

        // Square of the flagship: an abelian-surface family over E^ x E^.
        FamilyModel abelian_g2;
        abelian_g2.name = "abelian_g2_family";
        abelian_g2.total = lib.es2.ring;
        abelian_g2.base = lib.ed2.ring;
        abelian_g2.proj = lib.pairs[1].p2;
        abelian_g2.n = 2;
        abelian_g2.g = 2;
        abelian_g2.cL = lib.pairs[1].poincare;
        abelian_g2.cF = pullback(lib.es2.proj1, GradedClass::basis_element(lib.es.ring, "f1"))
                        + pullback(lib.es2.proj2, GradedClass::basis_element(lib.es.ring, "f1"));
        abelian_g2.fiber = lib.ee2.ring;
        abelian_g2.fiber_restrict = lib.pairs[1].section_from_primal;
        abelian_g2.abelian_fibers = true;
        abelian_g2.fiber_polarization =
            twice(GradedClass::basis_element(lib.ee2.ring, "theta_one"))
            + twice(GradedClass::basis_element(lib.ee2.ring, "one_theta"));
        abelian_g2.rank = 4;
        validate_family(abelian_g2);

        // The flagship spread over a two-dimensional base.
        FamilyModel curve_over_surface;
        curve_over_surface.name = "curve_over_surface_family";
        curve_over_surface.total = lib.esed.ring;
        curve_over_surface.base = lib.ed2.ring;
        curve_over_surface.proj = tensor_morphism(lib.esed, lib.ed2, lib.es.p2,
                                                  identity_morphism(lib.elliptic_dual),
                                                  "p2_x_id");
        curve_over_surface.n = 1;
        curve_over_surface.g = 1;
        curve_over_surface.cL = pullback(lib.esed.proj1, lib.es.poincare);
        curve_over_surface.cF =
            pullback(lib.esed.proj1, GradedClass::basis_element(lib.es.ring, "f1"));
        curve_over_surface.fiber = lib.elliptic_dual;
        curve_over_surface.fiber_restrict = register_morphism(
            "cos_fiber", lib.elliptic, lib.esed.ring,
            {{"one_one", {{1, "one"}}},
             {"f1_one", {{1, "theta"}}},
             {"f2_one", {}},
             {"delta_one", {{1, "theta"}}},
             {"one_theta_hat", {}},
             {"pt_one", {}},
             {"f1_theta_hat", {}},
             {"f2_theta_hat", {}},
             {"delta_theta_hat", {}},
             {"pt_theta_hat", {}}},
            {{"one", {{1, "f2_theta_hat"}}}, {"theta", {{1, "pt_theta_hat"}}}},
            -2);
        curve_over_surface.abelian_fibers = true;
        curve_over_surface.fiber_polarization = flagship.fiber_polarization;
        curve_over_surface.rank = 2;
        validate_family(curve_over_surface);

        // The universal genus-2 family: C x J over J with the universal
        // divisor class.
        FamilyModel genus2;
        genus2.name = "genus2_family";
        genus2.total = lib.genus2_total;
        genus2.base = lib.genus2_jacobian;
        genus2.proj = register_morphism("genus2_proj", lib.genus2_total, lib.genus2_jacobian,
                                        {{"one", {{1, "one"}}},
                                         {"theta", {{1, "t"}}},
                                         {"pt", {{1, "q"}}}},
                                        {{"one", {}},
                                         {"a", {{1, "one"}}},
                                         {"t", {}},
                                         {"u", {}},
                                         {"q", {}},
                                         {"s", {{1, "theta"}}},
                                         {"w", {}},
                                         {"p", {{1, "pt"}}}},
                                        1);
        genus2.n = 1;
        genus2.g = 2;
        genus2.cL = GradedClass::basis_element(lib.genus2_total, "u");
        genus2.cF = GradedClass::basis_element(lib.genus2_total, "a");
        genus2.fiber = lib.genus2_jacobian;
        genus2.fiber_restrict = register_morphism("genus2_fiber", lib.genus2_curve,
                                                  lib.genus2_total,
                                                  {{"one", {{1, "one"}}},
                                                   {"a", {{1, "pt"}}},
                                                   {"t", {}},
                                                   {"u", {}},
                                                   {"q", {}},
                                                   {"s", {}},
                                                   {"w", {}},
                                                   {"p", {}}},
                                                  {{"one", {{1, "q"}}}, {"pt", {{1, "p"}}}},
                                                  -2);
        genus2.abelian_fibers = false;
        genus2.fiber_polarization =
            twice(GradedClass::basis_element(lib.genus2_jacobian, "theta"));
        genus2.rank = 4;
        validate_family(genus2);

        // A Picard-trivial family: P^1 x E^ over E^; its Picard space has
        // dimension 0 and the DR class is the fundamental class of the base.
        FamilyModel p1_trivial;
        p1_trivial.name = "p1_trivial_family";
        p1_trivial.total = lib.pled.ring;
        p1_trivial.base = lib.elliptic_dual;
        p1_trivial.proj = lib.pled.proj2;
        p1_trivial.n = 1;
        p1_trivial.g = 0;
        p1_trivial.cL = GradedClass::zero(lib.pled.ring);
        p1_trivial.cF = pullback(lib.pled.proj1, GradedClass::basis_element(lib.proj_line, "h"));
        p1_trivial.fiber = lib.point_ring;
        p1_trivial.fiber_restrict = register_morphism(
            "p1_trivial_fiber", lib.proj_line, lib.pled.ring,
            {{"one_one", {{1, "one"}}},
             {"h_one", {{1, "h"}}},
             {"one_theta_hat", {}},
             {"h_theta_hat", {}}},
            {{"one", {{1, "one_theta_hat"}}}, {"h", {{1, "h_theta_hat"}}}},
            -1);
        p1_trivial.abelian_fibers = false;
        p1_trivial.rank = 1;
        validate_family(p1_trivial);

        // A single elliptic curve over a point; the classical package
        // whose induced polarization on the Jacobian side is 2 theta.
        FamilyModel elliptic_over_point;
        elliptic_over_point.name = "elliptic_over_point";
        elliptic_over_point.total = lib.elliptic;
        elliptic_over_point.base = lib.point_ring;
        elliptic_over_point.proj = register_morphism(
            "elliptic_to_point", lib.elliptic, lib.point_ring, {{"one", {{1, "one"}}}},
            {{"one", {}}, {"theta", {{1, "one"}}}}, 1);
        elliptic_over_point.n = 1;
        elliptic_over_point.g = 1;
        elliptic_over_point.cL = GradedClass::zero(lib.elliptic);
        elliptic_over_point.cF = GradedClass::basis_element(lib.elliptic, "theta");
        elliptic_over_point.fiber = lib.elliptic_dual;
        elliptic_over_point.fiber_restrict = identity_morphism(lib.elliptic, "elliptic_fiber");
        elliptic_over_point.abelian_fibers = true;
        elliptic_over_point.fiber_polarization = flagship.fiber_polarization;
        elliptic_over_point.rank = 2;
        validate_family(elliptic_over_point);

        // A trivial elliptic fibration E x Y^ over Y^ whose relative Picard
        // space has a positive-dimensional base: the setting where
        // rigidification of the induced polarization is a real condition.
        FamilyModel relative_curve;
        relative_curve.name = "relative_curve_family";
        relative_curve.total = lib.eled.ring;
        relative_curve.base = lib.elliptic_dual;
        relative_curve.proj = lib.eled.proj2;
        relative_curve.n = 1;
        relative_curve.g = 1;
        relative_curve.cL = GradedClass::zero(lib.eled.ring);
        relative_curve.cF = pullback(lib.eled.proj1,
                                     GradedClass::basis_element(lib.elliptic, "theta"));
        relative_curve.fiber = lib.elliptic_dual;
        relative_curve.fiber_restrict = register_morphism(
            "relative_curve_fiber", lib.elliptic, lib.eled.ring,
            {{"one_one", {{1, "one"}}},
             {"theta_one", {{1, "theta"}}},
             {"one_theta_hat", {}},
             {"theta_theta_hat", {}}},
            {{"one", {{1, "one_theta_hat"}}}, {"theta", {{1, "theta_theta_hat"}}}},
            -1);
        relative_curve.abelian_fibers = true;
        relative_curve.fiber_polarization = flagship.fiber_polarization;
        relative_curve.rank = 2;
        validate_family(relative_curve);

        // Morphisms supporting the relative e-class computation for
        // relative_curve_family: the product of X with the relative Picard
        // space is E x Z^ x Y^, modelled as elliptic_square (x) elliptic_dual.
        MorphPtr rel_q1 = tensor_morphism(lib.esed, lib.eled, lib.es.p1,
                                          identity_morphism(lib.elliptic_dual), "rel_q1");
        MorphPtr rel_q2 = tensor_morphism(lib.esed, lib.ed2, lib.es.p2,
                                          identity_morphism(lib.elliptic_dual), "rel_q2");
        // Zero section of the relative Picard space Z^ x Y^ -> Y^.
        MorphPtr rel_zero_section = register_morphism(
            "rel_zero_section", lib.elliptic_dual, lib.ed2.ring,
            {{"one_one", {{1, "one"}}},
             {"theta_hat_one", {}},
             {"one_theta_hat", {{1, "theta_hat"}}},
             {"theta_hat_theta_hat", {}}},
            {{"one", {{1, "theta_hat_one"}}}, {"theta_hat", {{1, "theta_hat_theta_hat"}}}},
            -1);
        // Fiberwise inversion of the relative Picard space.
        MorphPtr rel_inv = tensor_morphism(lib.ed2, lib.ed2,
                                           mult_morphism(lib.elliptic_dual, -1, "ed_inv"),
                                           identity_morphism(lib.elliptic_dual), "rel_inv");

        Registry& reg = lib.registry;
        for (const auto& r :
             {lib.point_ring, lib.elliptic, lib.elliptic_dual, lib.proj_line, lib.genus2_curve,
              lib.genus2_jacobian, lib.jacobian_g2, lib.genus2_total, lib.es.ring, lib.ee2.ring,
              lib.ed2.ring, lib.es2.ring, lib.es3.ring, lib.ee3.ring, lib.ed3.ring,
              lib.eled.ring, lib.esed.ring, lib.pled.ring})
            reg.rings[r->name()] = r;

        for (const auto& m :
             {lib.es.p1, lib.es.p2, lib.es.e1, lib.es.e2, lib.es.diag, lib.es.inv,
              lib.es.mult(2), lib.es.mult(3), lib.es.mult(5), lib.pairs[1].p1, lib.pairs[1].p2,
              lib.pairs[2].p1, lib.pairs[2].p2, lib.pairs[1].section_from_dual,
              lib.pairs[1].section_from_primal, lib.pairs[2].section_from_dual,
              lib.pairs[2].section_from_primal, flagship.fiber_restrict,
              curve_over_surface.proj, curve_over_surface.fiber_restrict, genus2.proj,
              genus2.fiber_restrict, p1_trivial.proj, p1_trivial.fiber_restrict,
              elliptic_over_point.proj, elliptic_over_point.fiber_restrict, relative_curve.proj,
              relative_curve.fiber_restrict, rel_q1, rel_q2, rel_zero_section, rel_inv,
              mult_morphism(lib.elliptic_dual, 2, "elliptic_dual.mult2"),
              mult_morphism(lib.elliptic_dual, 3, "elliptic_dual.mult3"),
              mult_morphism(lib.elliptic_dual, 5, "elliptic_dual.mult5"),
              mult_morphism(lib.jacobian_g2, 2, "jacobian_g2.mult2"),
              mult_morphism(lib.jacobian_g2, 3, "jacobian_g2.mult3"),
              mult_morphism(lib.jacobian_g2, 5, "jacobian_g2.mult5"),
              mult_morphism(lib.genus2_jacobian, 2, "genus2_jacobian.mult2"),
              mult_morphism(lib.genus2_jacobian, 3, "genus2_jacobian.mult3"),
              mult_morphism(lib.genus2_jacobian, 5, "genus2_jacobian.mult5")})
            reg.morphisms[m->name()] = m;

        for (auto& fam : {flagship, abelian_g2, curve_over_surface, genus2, p1_trivial,
                          elliptic_over_point, relative_curve})
            reg.families[fam.name] = fam;

        reg.classes.emplace("P", lib.es.poincare);
        reg.classes.emplace("P2", lib.pairs[1].poincare);
        reg.classes.emplace("P3", lib.pairs[2].poincare);
        reg.classes.emplace("twice_theta_hat",
                            twice(GradedClass::basis_element(lib.elliptic_dual, "theta_hat")));
        reg.classes.emplace("principal_theta_hat",
                            GradedClass::basis_element(lib.elliptic_dual, "theta_hat"));
        reg.classes.emplace(
            "g2_polarization",
            twice(GradedClass::basis_element(lib.jacobian_g2, "theta1"))
                + twice(GradedClass::basis_element(lib.jacobian_g2, "theta2")));
        reg.classes.emplace("genus2_theta",
                            GradedClass::basis_element(lib.genus2_jacobian, "theta"));

        return lib;
    }
} // namespace detail

inline const Library& library()
{
    static const Library lib = detail::build_library();
    return lib;
}

} // namespace chowdr
