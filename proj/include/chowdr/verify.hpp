#pragma once

#include "chowdr/abelian.hpp"
#include "chowdr/dr.hpp"
#include "chowdr/expr.hpp"
#include "chowdr/models.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace chowdr {

struct CheckResult {
    std::string id;
    std::string statement;
    bool pass = false;
    std::string expected;
    std::string actual;
};

/// Result of one verification suite: per-check outcomes, overall status
/// (pass iff every check passes) and wall-clock duration.
struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    double duration_ms = 0.0;

    bool ok() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }

    int passed() const
    {
        int n = 0;
        for (const auto& c : checks)
            n += c.pass ? 1 : 0;
        return n;
    }

    int failed() const { return static_cast<int>(checks.size()) - passed(); }
};

namespace verify_detail {

    class Suite {
    public:
        explicit Suite(std::string name) { report_.suite = std::move(name); }

        void equal_class(const std::string& id, const std::string& statement,
                         const GradedClass& expected, const GradedClass& actual)
        {
            CheckResult c{id, statement, false, to_string(expected), to_string(actual)};
            c.pass = expected.ring() == actual.ring() && equal(expected, actual);
            report_.checks.push_back(std::move(c));
        }

        void equal_rational(const std::string& id, const std::string& statement,
                            const Rational& expected, const Rational& actual)
        {
            report_.checks.push_back(CheckResult{id, statement, expected == actual,
                                                 to_string(expected), to_string(actual)});
        }

        void is_true(const std::string& id, const std::string& statement, bool value)
        {
            report_.checks.push_back(
                CheckResult{id, statement, value, "true", value ? "true" : "false"});
        }

        void is_false(const std::string& id, const std::string& statement, bool value)
        {
            report_.checks.push_back(
                CheckResult{id, statement, !value, "false", value ? "true" : "false"});
        }

        template <class E>
        void throws(const std::string& id, const std::string& statement,
                    const std::function<void()>& fn)
        {
            CheckResult c{id, statement, false, "error raised", "no error"};
            try {
                fn();
            } catch (const E&) {
                c.pass = true;
                c.actual = "error raised";
            } catch (const std::exception& e) {
                c.actual = std::string("different error: ") + e.what();
            }
            report_.checks.push_back(std::move(c));
        }

        /// Bulk property: counts failures instead of recording each case.
        void all_cases(const std::string& id, const std::string& statement, long long total,
                       long long failures)
        {
            report_.checks.push_back(CheckResult{id, statement, failures == 0,
                                                 std::to_string(total) + " cases, 0 failures",
                                                 std::to_string(total) + " cases, "
                                                     + std::to_string(failures) + " failures"});
        }

        SuiteReport finish() { return std::move(report_); }

    private:
        SuiteReport report_;
    };

    inline GradedClass random_class(const RingPtr& ring, std::mt19937_64& rng, int max_terms = 4)
    {
        std::uniform_int_distribution<int> nterms(0, max_terms);
        std::uniform_int_distribution<int> flat(0, ring->total_basis() - 1);
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 9);
        GradedClass x(ring);
        const int n = nterms(rng);
        for (int i = 0; i < n; ++i)
            x.accumulate(ring->key_of(flat(rng)), Rational(num(rng), den(rng)));
        return x;
    }

    inline GradedClass random_positive_codim(const RingPtr& ring, std::mt19937_64& rng)
    {
        GradedClass x = random_class(ring, rng);
        GradedClass out(ring);
        for (const auto& [k, c] : x.terms())
            if (k.codim > 0)
                out.set(k, c);
        return out;
    }

    inline std::vector<RingPtr> law_models()
    {
        const Library& lib = library();
        return {lib.elliptic, lib.es.ring, lib.jacobian_g2, lib.genus2_total, lib.es2.ring};
    }

    /// Ring axioms on random sparse classes; returns failures.
    inline long long run_algebra_laws(const RingPtr& ring, long long cases, uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        long long failures = 0;
        for (long long i = 0; i < cases; ++i) {
            GradedClass x = random_class(ring, rng);
            GradedClass y = random_class(ring, rng);
            GradedClass z = random_class(ring, rng);
            if (!equal(mul(x, y), mul(y, x)))
                ++failures;
            if (!equal(mul(mul(x, y), z), mul(x, mul(y, z))))
                ++failures;
            if (!equal(mul(x, add(y, z)), add(mul(x, y), mul(x, z))))
                ++failures;
        }
        return failures;
    }

    /// Grading: every term of a product of homogeneous classes sits in the
    /// sum of the codimensions.
    inline long long run_grading(const RingPtr& ring, long long cases, uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> flat(0, ring->total_basis() - 1);
        long long failures = 0;
        for (long long i = 0; i < cases; ++i) {
            BasisKey a = ring->key_of(flat(rng));
            BasisKey b = ring->key_of(flat(rng));
            GradedClass p = mul(GradedClass::basis_element(ring, ring->basis_name(a)),
                                GradedClass::basis_element(ring, ring->basis_name(b)));
            for (const auto& [k, c] : p.terms())
                if (k.codim != a.codim + b.codim || k.codim > ring->dimension())
                    ++failures;
        }
        return failures;
    }

    inline long long run_exp_additivity(const RingPtr& ring, long long cases, uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        long long failures = 0;
        for (long long i = 0; i < cases; ++i) {
            GradedClass x = random_positive_codim(ring, rng);
            GradedClass y = random_positive_codim(ring, rng);
            if (!equal(exp_truncated(add(x, y)), mul(exp_truncated(x), exp_truncated(y))))
                ++failures;
        }
        return failures;
    }

    /// Projection formula over every basis pair of a morphism; failures.
    inline long long run_projection_formula(const MorphPtr& m)
    {
        long long failures = 0;
        const RingModel& T = *m->target();
        const RingModel& S = *m->source();
        for (int a = 0; a < T.total_basis(); ++a) {
            GradedClass ca = GradedClass::basis_element(m->target(), T.basis_name(T.key_of(a)));
            for (int b = 0; b < S.total_basis(); ++b) {
                GradedClass cb =
                    GradedClass::basis_element(m->source(), S.basis_name(S.key_of(b)));
                if (!equal(pushforward(m, mul(pullback(m, ca), cb)),
                           mul(ca, pushforward(m, cb))))
                    ++failures;
            }
        }
        return failures;
    }

    inline void suite_ring(Suite& s, long long law_cases)
    {
        const Library& lib = library();
        const RingPtr& es = lib.es.ring;
        auto cls = [&](const char* sym) { return GradedClass::basis_element(es, sym); };

        s.is_true("ring.make.elliptic", "elliptic model builds and validates",
                  lib.elliptic->dimension() == 1 && lib.elliptic->basis_size(1) == 1);
        s.throws<validation_error>(
            "ring.make.contradiction", "contradictory product table is rejected", [] {
                make_ring("bad", 2, {{"one"}, {"f1", "f2"}, {"pt"}},
                          {{"f1", "f1", {{1, "pt"}}}, {"f1", "f1", {}}}, "pt");
            });
        s.throws<duplicate_basis_name>("ring.make.duplicate", "duplicate basis symbol rejected",
                                       [] {
                                           make_ring("bad", 1, {{"one"}, {"x", "x"}}, {});
                                       });

        GradedClass pt = cls("pt");
        s.equal_class("ring.add.pt", "pt + pt = 2 pt", scalar_mul(2, pt), add(pt, pt));
        s.equal_class("ring.scalar.zero", "0 * delta = 0", GradedClass::zero(es),
                      scalar_mul(0, cls("delta")));
        s.equal_class("ring.add.cancel", "f1 - f1 = 0", GradedClass::zero(es),
                      add(cls("f1"), scalar_mul(-1, cls("f1"))));

        GradedClass P = lib.es.poincare;
        s.equal_class("ring.mul.poincare", "(delta - f1 - f2)^2 = -2 pt", scalar_mul(-2, pt),
                      mul(P, P));
        s.equal_class("ring.mul.unit", "1 * x = x", cls("delta"),
                      mul(GradedClass::unit(es), cls("delta")));
        s.equal_class("ring.mul.truncate", "pt * f1 = 0 (codim 3 > dim 2)",
                      GradedClass::zero(es), mul(pt, cls("f1")));
        s.equal_class("ring.power.zero", "x^0 = 1", GradedClass::unit(es), power(P, 0));
        s.equal_class("ring.power.square", "(delta - f1 - f2)^2 via power", scalar_mul(-2, pt),
                      power(P, 2));

        s.equal_class("ring.exp.zero", "exp(0) = 1", GradedClass::unit(es),
                      exp_truncated(GradedClass::zero(es)));
        s.equal_class("ring.exp.poincare", "exp(P) = 1 + P - pt",
                      add(add(GradedClass::unit(es), P), scalar_mul(-1, pt)),
                      exp_truncated(P));
        s.throws<non_nilpotent_input>("ring.exp.unit", "exp of a codim-0 class is rejected",
                                      [&] { exp_truncated(GradedClass::unit(es)); });

        s.equal_rational("ring.integrate.pt", "integrate(3 pt) = 3", 3,
                         integrate(scalar_mul(3, pt)));
        s.equal_rational("ring.integrate.f1", "integrate(f1) = 0", 0, integrate(cls("f1")));
        s.equal_rational("ring.integrate.f1f2", "integrate(f1 f2) = 1", 1,
                         integrate(mul(cls("f1"), cls("f2"))));
        s.throws<no_point_class>("ring.integrate.nopoint",
                                 "integrate without a point class is rejected", [] {
                                     auto r = make_ring("nopoint", 1, {{"one"}, {"x"}}, {});
                                     integrate(GradedClass::unit(r));
                                 });

        s.equal_class("ring.component.exp", "component(exp(P), 2) = -pt", scalar_mul(-1, pt),
                      component(exp_truncated(P), 2));
        s.equal_class("ring.component.unit", "component(1, 1) = 0", GradedClass::zero(es),
                      component(GradedClass::unit(es), 1));
        s.throws<ring_mismatch>("ring.mismatch", "classes on different rings do not add", [&] {
            add(GradedClass::unit(es), GradedClass::unit(lib.elliptic));
        });
        s.equal_rational("ring.pointring", "the 0-dimensional ring integrates 1 to 1", 1,
                         integrate(GradedClass::unit(lib.point_ring)));

        uint64_t seed = 20240901;
        for (const auto& ring : law_models()) {
            s.all_cases("ring.laws." + ring->name(),
                        "commutativity/associativity/distributivity on random classes of "
                            + ring->name(),
                        law_cases, run_algebra_laws(ring, law_cases, seed++));
            s.all_cases("ring.grading." + ring->name(),
                        "products of homogeneous classes are homogeneous on " + ring->name(),
                        law_cases, run_grading(ring, law_cases, seed++));
        }
        s.all_cases("ring.exp.additive", "exp(x + y) = exp(x) exp(y) on nilpotents", 200,
                    run_exp_additivity(lib.es.ring, 200, seed++));
    }

    inline void suite_geometry(Suite& s)
    {
        const Library& lib = library();
        const EllipticSquare& es = lib.es;
        auto cls = [&](const char* sym) { return GradedClass::basis_element(es.ring, sym); };

        s.throws<projection_formula_violation>(
            "geom.morphism.bad_push", "inconsistent pushforward table is rejected", [&] {
                register_morphism("bad_p2", es.ring, lib.elliptic_dual,
                                  {{"one", {{1, "one"}}}, {"theta_hat", {{1, "f2"}}}},
                                  {{"one", {}},
                                   {"f1", {{1, "one"}}},
                                   {"f2", {}},
                                   {"delta", {{1, "one"}}},
                                   {"pt", {{2, "theta_hat"}}}},
                                  1);
            });

        GradedClass P = es.poincare;
        s.equal_class("geom.push.p2", "p2_*(P^2) = -2 theta_hat",
                      scalar_mul(-2, GradedClass::basis_element(lib.elliptic_dual, "theta_hat")),
                      pushforward(es.p2, power(P, 2)));
        s.equal_class("geom.pull.p2", "p2^*(theta_hat) = f2", cls("f2"),
                      pullback(es.p2, GradedClass::basis_element(lib.elliptic_dual,
                                                                 "theta_hat")));
        auto id_es = identity_morphism(es.ring);
        s.equal_class("geom.push.id", "id_* x = x", cls("delta"),
                      pushforward(id_es, cls("delta")));

        s.is_true("geom.compose.section",
                  "p2 after its section e1 is the identity of the dual curve",
                  same_tables(*compose(es.p2, es.e1), *identity_morphism(lib.elliptic_dual)));
        s.is_true("geom.compose.section2", "p1 after e2 is the identity",
                  same_tables(*compose(es.p1, es.e2), *identity_morphism(lib.elliptic)));
        s.is_true("geom.compose.diag", "p1 after the graph section is the identity",
                  same_tables(*compose(es.p1, es.diag), *identity_morphism(lib.elliptic)));
        {
            const FamilyModel& eop = lib.family("elliptic_over_point");
            auto chain = compose(eop.proj, es.p1);
            s.is_true("geom.compose.reldim", "relative dimensions add under composition",
                      chain->rel_dim() == 2);
        }
        s.throws<composition_mismatch>("geom.compose.mismatch",
                                       "composing maps with mismatched ends fails",
                                       [&] { compose(es.p1, es.p2); });

        // Functoriality across every composable pair in the registry.
        {
            long long total = 0, failures = 0;
            for (const auto& [fn, f] : lib.registry.morphisms)
                for (const auto& [gn, g] : lib.registry.morphisms) {
                    if (g->target() != f->source())
                        continue;
                    ++total;
                    auto fg = compose(f, g);
                    for (int t = 0; t < fg->target()->total_basis(); ++t) {
                        GradedClass direct = fg->pull_basis(t);
                        GradedClass chained = pullback(g, f->pull_basis(t));
                        if (!equal(direct, chained))
                            ++failures;
                    }
                    for (int b = 0; b < fg->source()->total_basis(); ++b) {
                        GradedClass direct = fg->push_basis(b);
                        GradedClass chained = pushforward(f, g->push_basis(b));
                        if (!equal(direct, chained))
                            ++failures;
                    }
                }
            s.all_cases("geom.functorial", "pullback/pushforward compose functorially on all "
                                           "library chains",
                        total, failures);
        }

        // Sections: sigma^* pi^* x = x on all basis classes.
        {
            long long failures = 0;
            auto section_check = [&](const MorphPtr& pi, const MorphPtr& sigma) {
                for (int i = 0; i < pi->target()->total_basis(); ++i) {
                    GradedClass x = GradedClass::basis_element(
                        pi->target(), pi->target()->basis_name(pi->target()->key_of(i)));
                    if (!equal(pullback(sigma, pullback(pi, x)), x))
                        ++failures;
                }
            };
            section_check(es.p2, es.e1);
            section_check(es.p1, es.e2);
            section_check(es.p1, es.diag);
            s.all_cases("geom.sections", "sections invert pullback along the projection", 3,
                        failures);
        }

        // Projection formula on every registered morphism, all basis pairs.
        {
            long long failures = 0;
            long long total = 0;
            for (const auto& [name, m] : lib.registry.morphisms) {
                total += static_cast<long long>(m->source()->total_basis())
                         * m->target()->total_basis();
                failures += run_projection_formula(m);
            }
            s.all_cases("geom.projection", "projection formula on all basis pairs of all "
                                           "registered morphisms",
                        total, failures);
        }

        s.is_true("geom.tensor.dim", "dim(ExE^ (x) ExE^) = 4", lib.es2.ring->dimension() == 4);
        s.equal_rational("geom.tensor.point", "integrate(pt (x) pt) = 1", 1,
                         integrate(GradedClass::basis_element(lib.ee2.ring, "theta_theta")));
        s.is_true("geom.tensor.kunneth",
                  "E (x) E has two codimension-1 classes (no graph class)",
                  lib.ee2.ring->basis_size(1) == 2);

        s.equal_class("geom.es.inv", "(1 x -1)^* P = -P", scalar_mul(-1, P),
                      pullback(es.inv, P));
        {
            bool all_ok = true;
            for (int r = -3; r <= 3; ++r)
                if (!equal(pullback(es.mult(r), P), scalar_mul(r, P)))
                    all_ok = false;
            s.is_true("geom.es.mult", "(1 x r)^* P = r P for r in -3..3", all_ok);
        }
        s.is_true("geom.es.mult1", "(1 x 1) is the identity",
                  same_tables(*es.mult(1), *identity_morphism(es.ring)));

        {
            auto tr = truncated_polynomial_ring("demo", {{"a", 1, 3}}, 2);
            s.is_true("geom.trunc.basis", "Q[a]/(a^3) has basis {1, a, a^2}",
                      tr.ring->total_basis() == 3);
            s.is_true("geom.trunc.nilpotent", "a^2 != 0, a^3 = 0",
                      !power(tr.generators[0], 2).is_zero()
                          && power(tr.generators[0], 3).is_zero());
            auto tr2 = truncated_polynomial_ring("demo2", {{"a1", 1, 2}, {"a2", 1, 2}}, 2);
            GradedClass sum = add(tr2.generators[0], tr2.generators[1]);
            s.equal_class("geom.trunc.binomial", "(a1 + a2)^2 = 2 a1 a2 under truncation",
                          scalar_mul(2, mul(tr2.generators[0], tr2.generators[1])),
                          power(sum, 2));
        }

        s.equal_class("geom.poincare.es", "poincare_class(E x E^) = delta - f1 - f2", P,
                      poincare_class(es.ring));
        s.is_true("geom.poincare.rigid",
                  "the Poincare class restricts trivially along both zero sections",
                  pullback(es.e1, P).is_zero() && pullback(es.e2, P).is_zero());
        s.is_true("geom.poincare.g2", "the g = 2 Poincare class has 6 codim-1 terms",
                  static_cast<int>(component(poincare_class(lib.es2.ring), 1).terms().size())
                      == 6);
        s.throws<unsupported_model>("geom.poincare.unsupported",
                                    "poincare_class rejects unrelated models",
                                    [&] { poincare_class(lib.jacobian_g2); });
    }

    inline void suite_fourier(Suite& s)
    {
        const Library& lib = library();
        s.equal_class("fourier.g1.fund", "F(1) = -theta_hat on the elliptic pair",
                      scalar_mul(-1, lib.pair(1).zero_class_dual),
                      fourier(lib.pair(1), GradedClass::unit(lib.pair(1).primal)));
        s.equal_class("fourier.g1.point", "F([point]) = fundamental class of the dual",
                      GradedClass::unit(lib.pair(1).dual),
                      fourier(lib.pair(1), lib.pair(1).zero_class_primal));
        s.equal_class("fourier.g2.fund", "F(1) = zero-section class for g = 2",
                      lib.pair(2).zero_class_dual,
                      fourier(lib.pair(2), GradedClass::unit(lib.pair(2).primal)));
        for (int g = 1; g <= 3; ++g) {
            s.is_true("fourier.zero_section.g" + std::to_string(g),
                      "(-1)^g F(1) equals the zero-section class, g = " + std::to_string(g),
                      check_fourier_zero_section(lib.pair(g)));
            s.equal_class("fourier.inverse.g" + std::to_string(g),
                          "F(zero-section) = fundamental class, g = " + std::to_string(g),
                          GradedClass::unit(lib.pair(g).dual),
                          fourier(lib.pair(g), lib.pair(g).zero_class_primal));
        }
    }

    inline void suite_poincare(Suite& s)
    {
        const Library& lib = library();
        GradedClass theta_hat = GradedClass::basis_element(lib.elliptic_dual, "theta_hat");
        GradedClass twice = scalar_mul(2, theta_hat);
        GradedClass pol_g2 = lib.registry.named_class("g2_polarization");

        s.is_true("poincare.g1d1", "theta_hat is a principal polarization (g=1, d=1)",
                  poincare_formula_check(lib.elliptic_dual, theta_hat, 1, 1));
        s.is_true("poincare.g1d2", "2 theta_hat satisfies E = 1!*2*e (g=1, d=2)",
                  poincare_formula_check(lib.elliptic_dual, twice, 1, 2));
        s.is_false("poincare.g1d2.false", "2 theta_hat is not a d=1 polarization",
                   poincare_formula_check(lib.elliptic_dual, twice, 1, 1));
        s.is_true("poincare.g2d4", "(2 theta1 + 2 theta2)^2 = 2!*4*pt (g=2, d=4)",
                  poincare_formula_check(lib.jacobian_g2, pol_g2, 2, 4));

        s.equal_rational("poincare.rank.g1d1", "rank of theta_hat is 1", 1,
                         Rational(polarization_rank(lib.elliptic_dual, theta_hat, 1)));
        s.equal_rational("poincare.rank.g1d2", "rank of 2 theta_hat is 2", 2,
                         Rational(polarization_rank(lib.elliptic_dual, twice, 1)));
        s.equal_rational("poincare.rank.g2d4", "rank of 2 theta1 + 2 theta2 is 4", 4,
                         Rational(polarization_rank(lib.jacobian_g2, pol_g2, 2)));
        s.equal_rational(
            "poincare.rank.genus2", "rank of 2 theta on the genus-2 Jacobian is 4", 4,
            Rational(polarization_rank(lib.genus2_jacobian,
                                       scalar_mul(2, lib.registry.named_class("genus2_theta")),
                                       2)));
        s.throws<not_positive_integer>("poincare.rank.refuse",
                                       "a non-integral fiber integral is refused", [&] {
                                           polarization_rank(lib.elliptic_dual,
                                                             scalar_mul(Rational(1, 2),
                                                                        theta_hat),
                                                             1);
                                       });

        // Exactly one d satisfies the formula for a valid polarization.
        auto unique_d = [&](const RingPtr& model, const GradedClass& E, int g, int expect) {
            int hits = 0;
            for (int d = 1; d <= 10; ++d)
                if (poincare_formula_check(model, E, g, d))
                    ++hits;
            return hits == 1 && poincare_formula_check(model, E, g, expect);
        };
        s.is_true("poincare.unique.g1", "exactly one rank fits 2 theta_hat",
                  unique_d(lib.elliptic_dual, twice, 1, 2));
        s.is_true("poincare.unique.g2", "exactly one rank fits the g=2 polarization",
                  unique_d(lib.jacobian_g2, pol_g2, 2, 4));
    }

    inline void suite_dr(Suite& s)
    {
        const Library& lib = library();
        const FamilyModel& flagship = lib.family("flagship_family");
        GradedClass theta_hat = GradedClass::basis_element(lib.elliptic_dual, "theta_hat");

        DrResult main = dr_main(flagship, 2);
        s.equal_class("dr.flagship.main", "main formula on the flagship family gives [pt]",
                      theta_hat, main.value);
        s.equal_class("dr.flagship.hain", "curve formula agrees", theta_hat,
                      dr_hain(flagship).value);
        s.equal_class("dr.flagship.abelian", "abelian formula agrees", theta_hat,
                      dr_abelian(flagship).value);
        s.equal_class("dr.flagship.albanese", "Albanese formula agrees", theta_hat,
                      dr_albanese(lib.es.ring, lib.es.p2, lib.es.poincare, 1).value);
        s.is_true("dr.flagship.codim", "the DR class sits in codimension g", main.codim_ok());

        // e-class package over a point base.
        const FamilyModel& eop = lib.family("elliptic_over_point");
        GradedClass E = e_class(eop, lib.es.poincare, lib.es.p1, lib.es.p2);
        s.equal_class("dr.eclass.value", "E = -p2_*(c1(U)^2) = 2 theta_hat",
                      scalar_mul(2, theta_hat), E);
        s.is_true("dr.eclass.rank", "the induced polarization has rank 2",
                  polarization_rank(lib.elliptic_dual, E, 1) == 2);
        {
            FamilyModel other = eop;
            other.cF = scalar_mul(2, eop.cF);
            s.equal_class("dr.eclass.ample_independence",
                          "for n = 1 the ample class does not enter", E,
                          e_class(other, lib.es.poincare, lib.es.p1, lib.es.p2));
        }
        s.equal_class("dr.eclass.zero", "c1(U) = 0 gives E = 0",
                      GradedClass::zero(lib.elliptic_dual),
                      e_class(eop, GradedClass::zero(lib.es.ring), lib.es.p1, lib.es.p2));

        // e-class over a positive-dimensional base: rigidification and
        // symmetry are non-vacuous there.
        const FamilyModel& rel = lib.family("relative_curve_family");
        const MorphPtr& q1 = lib.registry.morphism("rel_q1");
        const MorphPtr& q2 = lib.registry.morphism("rel_q2");
        const MorphPtr& zero_section = lib.registry.morphism("rel_zero_section");
        const MorphPtr& rel_inv = lib.registry.morphism("rel_inv");
        GradedClass cU = pullback(lib.esed.proj1, lib.es.poincare);
        GradedClass Erel = e_class(rel, cU, q1, q2);
        s.equal_class("dr.eclass.relative", "relative E-class is twice the relative theta",
                      scalar_mul(2, GradedClass::basis_element(lib.ed2.ring, "theta_hat_one")),
                      Erel);
        s.is_true("dr.eclass.rigid", "e^* E = 0 on the base", check_rigidified(Erel,
                                                                               zero_section));
        s.is_false("dr.eclass.rigid.false", "a base divisor pulled up is not rigidified",
                   check_rigidified(GradedClass::basis_element(lib.ed2.ring, "one_theta_hat"),
                                    zero_section));
        s.is_true("dr.eclass.symmetric", "[-1]^* E = E", check_symmetric(Erel, rel_inv));
        s.is_true("dr.symmetric.via_square",
                  "inversion fixes P^2 even though it negates P",
                  check_symmetric(power(lib.es.poincare, 2), lib.es.inv)
                      && !check_symmetric(lib.es.poincare, lib.es.inv));
        s.is_false("dr.symmetric.false", "the graph class is not symmetric",
                   check_symmetric(GradedClass::basis_element(lib.es.ring, "delta"),
                                   lib.es.inv));
        s.is_true("dr.symmetric.zero", "the zero class is symmetric",
                  check_symmetric(GradedClass::zero(lib.es.ring), lib.es.inv));
        s.is_true("dr.rigid.zero", "the zero class is rigidified",
                  check_rigidified(GradedClass::zero(lib.ed2.ring), zero_section));

        // Formula concordance on every curve family: main with d = 2^g
        // equals the curve formula.
        for (const auto& fname : {"flagship_family", "curve_over_surface_family",
                                  "genus2_family", "p1_trivial_family",
                                  "relative_curve_family"}) {
            const FamilyModel& fam = lib.family(fname);
            if (fam.n != 1)
                continue;
            Integer d = integer_pow(2, fam.g);
            s.equal_class(std::string("dr.concordance.curve.") + fname,
                          std::string("main(d = 2^g) = curve formula on ") + fname,
                          dr_hain(fam).value, dr_main(fam, d).value);
        }

        // Abelian concordance.
        for (const auto& fname : {"flagship_family", "abelian_g2_family",
                                  "curve_over_surface_family"}) {
            const FamilyModel& fam = lib.family(fname);
            s.equal_class(std::string("dr.concordance.abelian.") + fname,
                          std::string("main = abelian formula on ") + fname,
                          dr_abelian(fam).value, dr_main(fam, *fam.rank).value);
            s.equal_class(std::string("dr.concordance.albanese.") + fname,
                          std::string("main = Albanese formula on ") + fname,
                          dr_albanese(fam.total, fam.proj, fam.cL, fam.g).value,
                          dr_main(fam, *fam.rank).value);
        }

        const FamilyModel& g2fam = lib.family("genus2_family");
        s.equal_class("dr.genus2.main", "the universal genus-2 family gives [pt] with d = 4",
                      GradedClass::basis_element(lib.genus2_jacobian, "pt"),
                      dr_main(g2fam, 4).value);
        s.throws<not_abelian_family>("dr.genus2.not_abelian",
                                     "the abelian formula refuses genus-2 fibers",
                                     [&] { dr_abelian(g2fam); });
        s.throws<not_a_curve_family>("dr.hain.n2", "the curve formula refuses surfaces",
                                     [&] { dr_hain(lib.family("abelian_g2_family")); });
        s.throws<invalid_rank>("dr.rank.zero", "rank 0 is rejected",
                               [&] { dr_main(flagship, 0); });

        s.equal_class("dr.albanese.g2", "the g = 2 Albanese computation lands on the point",
                      GradedClass::basis_element(lib.ed2.ring, "theta_hat_theta_hat"),
                      dr_albanese(lib.es2.ring, lib.pair(2).p2, lib.pair(2).poincare, 2).value);
        s.equal_class("dr.albanese.zero", "a trivial bundle gives 0 through the Albanese",
                      GradedClass::zero(lib.elliptic_dual),
                      dr_albanese(lib.es.ring, lib.es.p2, GradedClass::zero(lib.es.ring),
                                  1).value);

        {
            FamilyModel degenerate = flagship;
            degenerate.cL = GradedClass::zero(lib.es.ring);
            s.equal_class("dr.trivial_bundle", "c1(L) = 0 gives the zero (virtual) class",
                          GradedClass::zero(lib.elliptic_dual),
                          dr_main(degenerate, 2).value);
        }
        s.equal_class("dr.g0", "g = 0 yields the fundamental class of the base",
                      GradedClass::unit(lib.elliptic_dual),
                      dr_main(lib.family("p1_trivial_family"), 1).value);

        // Rank recovery from the family's fiber polarization.
        for (const auto& [fname, fam] : lib.registry.families) {
            if (!fam.fiber_polarization || !fam.rank)
                continue;
            s.is_true("dr.rank." + fname, "stored rank matches the fiber integral on " + fname,
                      polarization_rank(fam.fiber, *fam.fiber_polarization, fam.g)
                          == *fam.rank);
        }
    }

    inline void suite_product(Suite& s)
    {
        for (int g1 = 2; g1 <= 6; ++g1)
            for (int g2 = 2; g2 <= 6; ++g2) {
                auto r = product_expansion_check(g1, g2);
                Rational closed = dr_product_constant(g1, g2, ProductVariant::canonical);
                s.is_true("product.canonical." + std::to_string(g1) + "_" + std::to_string(g2),
                          "truncated-ring expansion holds and matches the closed constant, "
                          "(g1, g2) = ("
                              + std::to_string(g1) + ", " + std::to_string(g2) + ")",
                          r.holds && r.derived_constant == closed);
            }
        s.equal_rational("product.constant.22", "derived constant at (2, 2) is 1/256",
                         Rational(1, 256), product_expansion_check(2, 2).derived_constant);
        s.equal_rational("product.constant.23", "derived constant at (2, 3) is 1/4096",
                         Rational(1, 4096), product_expansion_check(2, 3).derived_constant);
        for (int g1 = 0; g1 <= 6; ++g1)
            for (int g2 = 0; g2 <= 6; ++g2) {
                auto r = product_sections_check(g1, g2);
                s.is_true("product.sections." + std::to_string(g1) + "_" + std::to_string(g2),
                          "section-bundle variant reproduces 1/2^(g1+g2) at ("
                              + std::to_string(g1) + ", " + std::to_string(g2) + ")",
                          r.holds
                              && r.derived_constant
                                     == dr_product_constant(g1, g2, ProductVariant::sections));
            }
        s.equal_rational("product.sections.11", "sections constant at (1, 1) is 1/4",
                         Rational(1, 4),
                         dr_product_constant(1, 1, ProductVariant::sections));
        s.equal_rational("product.sections.00", "sections constant at (0, 0) is 1", 1,
                         dr_product_constant(0, 0, ProductVariant::sections));
        s.throws<invalid_genus>("product.genus", "canonical variant refuses genus < 2",
                                [] { product_expansion_check(1, 2); });
    }

    inline void suite_scaling(Suite& s)
    {
        const Library& lib = library();
        for (const auto& [fname, fam] : lib.registry.families) {
            Integer d = fam.rank.value_or(Integer(1));
            bool all_ok = true;
            for (int r : {0, 1, 2, 3, 5})
                if (!dr_scaling_check(fam, d, r))
                    all_ok = false;
            s.is_true("scaling.dr." + fname,
                      "DR(L^r) = r^(2g) DR(L) for r in {0,1,2,3,5} on " + fname, all_ok);
        }
        // Model-level mechanism: [r]^* e = r^(2g) e on the Picard fibers.
        struct Case {
            const char* ring;
            int g;
        };
        for (const Case& c : {Case{"elliptic_dual", 1}, Case{"jacobian_g2", 2},
                              Case{"genus2_jacobian", 2}}) {
            const RingPtr& ring = lib.registry.ring(c.ring);
            GradedClass e(ring);
            e.set(*ring->point_class(), 1);
            bool all_ok = true;
            for (int r : {2, 3, 5}) {
                const MorphPtr& m = lib.registry.morphism(std::string(c.ring) + ".mult"
                                                          + std::to_string(r));
                if (!equal(pullback(m, e),
                           scalar_mul(Rational(integer_pow(r, 2 * c.g)), e)))
                    all_ok = false;
            }
            s.is_true(std::string("scaling.model.") + c.ring,
                      std::string("[r]^* e = r^(2g) e for r in {2,3,5} on ") + c.ring, all_ok);
        }
        {
            bool all_ok = true;
            for (int r : {2, 3, 5})
                if (!equal(pullback(lib.es.mult(r), lib.es.poincare),
                           scalar_mul(r, lib.es.poincare)))
                    all_ok = false;
            s.is_true("scaling.poincare", "(1 x r)^* P = r P for r in {2,3,5}", all_ok);
        }
    }

} // namespace verify_detail

inline std::vector<std::string> suite_names()
{
    return {"ring", "geometry", "fourier", "poincare", "dr", "product", "scaling"};
}

/// Runs one suite ("all" for the union) and reports per-check outcomes.
inline SuiteReport run_suite(const std::string& name, long long law_cases = 1000)
{
    using namespace verify_detail;
    auto t0 = std::chrono::steady_clock::now();
    Suite s(name);
    if (name == "ring" || name == "all")
        suite_ring(s, law_cases);
    if (name == "geometry" || name == "all")
        suite_geometry(s);
    if (name == "fourier" || name == "all")
        suite_fourier(s);
    if (name == "poincare" || name == "all")
        suite_poincare(s);
    if (name == "dr" || name == "all")
        suite_dr(s);
    if (name == "product" || name == "all")
        suite_product(s);
    if (name == "scaling" || name == "all")
        suite_scaling(s);
    SuiteReport rep = s.finish();
    if (rep.checks.empty())
        throw unknown_model("unknown suite '" + name + "'");
    rep.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now()
                                                                - t0)
                          .count();
    return rep;
}

} // namespace chowdr
