#pragma once

#include "chowdr/morphism.hpp"
#include "chowdr/ring.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chowdr {

/// Kuenneth product of two ring models: basis symbols are pairs (joined by
/// '_'), codimensions add, products act componentwise (all classes are
/// even-degree, no signs). Carries the factor decomposition so classes and
/// morphisms can be assembled factorwise, plus validated projections.
struct TensorProduct {
    RingPtr ring;
    RingPtr left;
    RingPtr right;
    MorphPtr proj1; // product space -> left factor
    MorphPtr proj2; // product space -> right factor
    std::vector<std::pair<int, int>> factors_of; // product flat -> (left flat, right flat)
    std::map<std::pair<int, int>, int> flat_of;  // inverse

    /// External product x (x) y of classes on the factors.
    GradedClass tensor_class(const GradedClass& x, const GradedClass& y) const
    {
        if (x.ring() != left || y.ring() != right)
            throw ring_mismatch("tensor_class: operands do not live on the factors of '"
                                + ring->name() + "'");
        GradedClass r(ring);
        for (const auto& [ka, ca] : x.terms())
            for (const auto& [kb, cb] : y.terms()) {
                auto it = flat_of.find({left->flat(ka), right->flat(kb)});
                if (it == flat_of.end())
                    continue; // truncated above the product dimension
                r.accumulate(ring->key_of(it->second), ca * cb);
            }
        return r;
    }
};

inline TensorProduct tensor_product(const RingPtr& r1, const RingPtr& r2)
{
    TensorProduct tp;
    tp.left = r1;
    tp.right = r2;
    const int dim = r1->dimension() + r2->dimension();

    std::vector<std::vector<std::string>> basis(static_cast<size_t>(dim) + 1);
    std::vector<std::vector<std::pair<int, int>>> pairs_by_codim(static_cast<size_t>(dim) + 1);
    for (int c = 0; c <= dim; ++c)
        for (int c1 = 0; c1 <= std::min(c, r1->dimension()); ++c1) {
            const int c2 = c - c1;
            if (c2 > r2->dimension())
                continue;
            for (int i1 = 0; i1 < r1->basis_size(c1); ++i1)
                for (int i2 = 0; i2 < r2->basis_size(c2); ++i2) {
                    basis[c].push_back(r1->basis(c1)[i1] + "_" + r2->basis(c2)[i2]);
                    pairs_by_codim[c].push_back({r1->flat(BasisKey{c1, i1}),
                                                 r2->flat(BasisKey{c2, i2})});
                }
        }

    // Flat order in the product ring follows codimension blocks.
    for (int c = 0; c <= dim; ++c)
        for (const auto& pr : pairs_by_codim[c])
            tp.factors_of.push_back(pr);
    for (int i = 0; i < static_cast<int>(tp.factors_of.size()); ++i)
        tp.flat_of[tp.factors_of[i]] = i;

    std::vector<ProductEntry> products;
    auto name_of = [&](int flat) {
        auto [f1, f2] = tp.factors_of[flat];
        return r1->basis_name(r1->key_of(f1)) + "_" + r2->basis_name(r2->key_of(f2));
    };
    const int total = static_cast<int>(tp.factors_of.size());
    for (int a = 0; a < total; ++a)
        for (int b = a; b < total; ++b) {
            auto [a1, a2] = tp.factors_of[a];
            auto [b1, b2] = tp.factors_of[b];
            LinComb comb;
            for (const auto& [t1, c1] : r1->product(a1, b1))
                for (const auto& [t2, c2] : r2->product(a2, b2)) {
                    auto it = tp.flat_of.find({t1, t2});
                    if (it == tp.flat_of.end())
                        continue;
                    comb.push_back({c1 * c2, name_of(it->second)});
                }
            if (!comb.empty())
                products.push_back({name_of(a), name_of(b), std::move(comb)});
        }

    std::optional<std::string> point;
    if (r1->point_class() && r2->point_class())
        point = r1->basis_name(*r1->point_class()) + "_" + r2->basis_name(*r2->point_class());

    tp.ring = make_ring(r1->name() + "_x_" + r2->name(), dim, std::move(basis),
                        products, point);

    // Projections: pullback embeds a factor class against the other factor's
    // unit; pushforward integrates the other factor (only its point class
    // has nonzero degree).
    auto build_proj = [&](bool first) {
        const RingPtr& fac = first ? r1 : r2;
        const RingPtr& other = first ? r2 : r1;
        std::vector<GradedClass> pull;
        pull.reserve(fac->total_basis());
        const int other_unit = other->flat(other->unit_key());
        for (int t = 0; t < fac->total_basis(); ++t) {
            GradedClass v(tp.ring);
            auto key = first ? std::pair{t, other_unit} : std::pair{other_unit, t};
            v.set(tp.ring->key_of(tp.flat_of.at(key)), 1);
            pull.push_back(std::move(v));
        }
        std::vector<GradedClass> push;
        push.reserve(tp.ring->total_basis());
        for (int s = 0; s < tp.ring->total_basis(); ++s) {
            auto [f1, f2] = tp.factors_of[s];
            const int kept = first ? f1 : f2;
            const int dropped = first ? f2 : f1;
            GradedClass v(fac);
            if (other->point_class() && dropped == other->flat(*other->point_class()))
                v.set(fac->key_of(kept), 1);
            push.push_back(std::move(v));
        }
        return register_morphism(tp.ring->name() + (first ? ".p1" : ".p2"), tp.ring, fac,
                                 std::move(pull), std::move(push),
                                 first ? r2->dimension() : r1->dimension());
    };
    tp.proj1 = build_proj(true);
    tp.proj2 = build_proj(false);
    return tp;
}

/// Product of morphisms acting factorwise between two tensor models.
inline MorphPtr tensor_morphism(const TensorProduct& source, const TensorProduct& target,
                                const MorphPtr& f, const MorphPtr& g, std::string name)
{
    if (f->source() != source.left || g->source() != source.right
        || f->target() != target.left || g->target() != target.right)
        throw composition_mismatch("tensor_morphism '" + name
                                   + "': factor morphisms do not match the tensor models");
    std::vector<GradedClass> pull;
    pull.reserve(target.ring->total_basis());
    for (int t = 0; t < target.ring->total_basis(); ++t) {
        auto [t1, t2] = target.factors_of[t];
        pull.push_back(source.tensor_class(f->pull_basis(t1), g->pull_basis(t2)));
    }
    std::vector<GradedClass> push;
    push.reserve(source.ring->total_basis());
    for (int s = 0; s < source.ring->total_basis(); ++s) {
        auto [s1, s2] = source.factors_of[s];
        push.push_back(target.tensor_class(f->push_basis(s1), g->push_basis(s2)));
    }
    return register_morphism(std::move(name), source.ring, target.ring, std::move(pull),
                             std::move(push), f->rel_dim() + g->rel_dim());
}

struct TruncatedVariable {
    std::string name;
    int codim = 1;
    int truncation = 1; // power at which the variable vanishes
};

/// Q[a_1, ..., a_k] / (a_i^{t_i}), graded by codimension and cut off above
/// the ambient dimension. Monomial basis; returns generator classes too.
struct TruncatedPolynomialRing {
    RingPtr ring;
    std::vector<GradedClass> generators;
};

inline TruncatedPolynomialRing truncated_polynomial_ring(std::string name,
                                                         const std::vector<TruncatedVariable>& vars,
                                                         int ambient_dimension)
{
    for (const auto& v : vars)
        if (v.truncation < 1 || v.codim < 1)
            throw validation_error("truncated_polynomial_ring('" + name
                                   + "'): truncation and codimension must be >= 1");

    // Enumerate exponent vectors, graded by codimension then lexicographic.
    std::vector<std::vector<int>> monomials;
    std::vector<int> expv(vars.size(), 0);
    std::function<void(size_t, int)> walk = [&](size_t i, int codim) {
        if (i == vars.size()) {
            monomials.push_back(expv);
            return;
        }
        for (int e = 0; e < vars[i].truncation; ++e) {
            const int c = codim + e * vars[i].codim;
            if (c > ambient_dimension)
                break;
            expv[i] = e;
            walk(i + 1, c);
        }
        expv[i] = 0;
    };
    walk(0, 0);

    auto codim_of = [&](const std::vector<int>& m) {
        int c = 0;
        for (size_t i = 0; i < vars.size(); ++i)
            c += m[i] * vars[i].codim;
        return c;
    };
    auto name_of = [&](const std::vector<int>& m) {
        std::string s;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += vars[i].name;
            if (m[i] > 1)
                s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? std::string("one") : s;
    };

    std::stable_sort(monomials.begin(), monomials.end(),
                     [&](const auto& a, const auto& b) { return codim_of(a) < codim_of(b); });

    std::vector<std::vector<std::string>> basis(static_cast<size_t>(ambient_dimension) + 1);
    std::map<std::vector<int>, std::string> by_exp;
    for (const auto& m : monomials) {
        basis[codim_of(m)].push_back(name_of(m));
        by_exp[m] = name_of(m);
    }

    std::vector<ProductEntry> products;
    for (size_t a = 0; a < monomials.size(); ++a)
        for (size_t b = a; b < monomials.size(); ++b) {
            std::vector<int> sum(vars.size());
            bool dead = false;
            int codim = 0;
            for (size_t i = 0; i < vars.size(); ++i) {
                sum[i] = monomials[a][i] + monomials[b][i];
                if (sum[i] >= vars[i].truncation)
                    dead = true;
                codim += sum[i] * vars[i].codim;
            }
            if (codim == 0)
                continue; // unit products are implied
            LinComb comb;
            if (!dead && codim <= ambient_dimension)
                comb.push_back({Rational(1), by_exp.at(sum)});
            products.push_back({name_of(monomials[a]), name_of(monomials[b]), std::move(comb)});
        }

    // The top codimension gets a point class when it is one-dimensional.
    std::optional<std::string> point;
    if (!basis.empty() && basis[ambient_dimension].size() == 1)
        point = basis[ambient_dimension][0];

    TruncatedPolynomialRing out;
    out.ring = make_ring(std::move(name), ambient_dimension, std::move(basis), products, point);
    for (const auto& v : vars)
        out.generators.push_back(v.truncation > 1 && v.codim <= ambient_dimension
                                     ? GradedClass::basis_element(out.ring, v.name)
                                     : GradedClass::zero(out.ring));
    return out;
}

/// A fibration package: the data dr formulas consume. `fiber` models one
/// fiber of the relative Picard space (dimension g, used for rank
/// computations); `fiber_restrict` is the inclusion of one fiber of the
/// projection itself (dimension n).
struct FamilyModel {
    std::string name;
    RingPtr total;
    RingPtr base;
    MorphPtr proj;
    int n = 1; // relative dimension of total over base
    int g = 0; // dimension of the relative Picard space
    GradedClass cL; // first Chern class of the (numerically trivial) bundle
    GradedClass cF; // first Chern class of the relatively ample bundle
    RingPtr fiber;
    MorphPtr fiber_restrict;
    bool abelian_fibers = false;
    std::optional<GradedClass> fiber_polarization; // restriction of the induced
                                                   // polarization to one Picard fiber
    std::optional<Integer> rank; // rank d of the polarization, when known
};

/// Structural checks every family must pass before the formulas run on it.
inline void validate_family(const FamilyModel& fam)
{
    auto fail = [&](const std::string& why) {
        throw validation_error("family '" + fam.name + "': " + why);
    };
    if (!fam.total || !fam.base || !fam.proj)
        fail("missing total, base or projection");
    if (fam.proj->source() != fam.total || fam.proj->target() != fam.base)
        fail("projection does not map total to base");
    if (fam.n < 1)
        fail("relative dimension must be >= 1");
    if (fam.g < 0)
        fail("Picard dimension must be >= 0");
    if (fam.proj->rel_dim() != fam.n)
        fail("projection rel_dim disagrees with n");
    for (const auto& [k, c] : fam.cL.terms())
        if (k.codim != 1)
            fail("cL must be a divisor class");
    for (const auto& [k, c] : fam.cF.terms())
        if (k.codim != 1)
            fail("cF must be a divisor class");
    if (fam.cL.ring() != fam.total || fam.cF.ring() != fam.total)
        fail("cL and cF must live on the total space");
    if (fam.fiber_restrict) {
        if (fam.fiber_restrict->target() != fam.total)
            fail("fiber inclusion must land in the total space");
        // Numerical triviality on fibers: the restricted bundle has zero
        // degree against cF^(n-1) on one fiber.
        const RingPtr& F = fam.fiber_restrict->source();
        if (F->dimension() != fam.n)
            fail("fiber of the projection must have dimension n");
        if (F->point_class()) {
            GradedClass restricted = mul(pullback(fam.fiber_restrict, fam.cL),
                                         power(pullback(fam.fiber_restrict, fam.cF), fam.n - 1));
            if (integrate(restricted) != 0)
                fail("cL is not numerically trivial on fibers");
        }
    }
    if (fam.fiber && fam.fiber->dimension() != fam.g)
        fail("Picard fiber model must have dimension g");
    if (fam.fiber_polarization && fam.fiber_polarization->ring() != fam.fiber)
        fail("fiber polarization must live on the Picard fiber model");
}

} // namespace chowdr
