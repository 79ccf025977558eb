#pragma once

#include "chowdr/ring.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace chowdr {

class Morphism;
using MorphPtr = std::shared_ptr<const Morphism>;

/// A morphism of spaces seen through its action on cycle classes: a
/// codimension-preserving pullback (a unital ring homomorphism) and a
/// pushforward shifting codimension by -rel_dim, tied together by the
/// projection formula. Both laws are validated exhaustively on basis
/// classes at registration time.
class Morphism {
public:
    const std::string& name() const { return name_; }
    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    int rel_dim() const { return rel_dim_; }

    /// Pullback of a target basis class (by flat index), as a class on source.
    const GradedClass& pull_basis(int target_flat) const { return pull_[target_flat]; }
    /// Pushforward of a source basis class (by flat index), as a class on target.
    const GradedClass& push_basis(int source_flat) const { return push_[source_flat]; }

    friend MorphPtr register_morphism(std::string, RingPtr, RingPtr,
                                      std::vector<GradedClass>, std::vector<GradedClass>, int);

private:
    Morphism() = default;

    std::string name_;
    RingPtr source_;
    RingPtr target_;
    int rel_dim_ = 0;
    std::vector<GradedClass> pull_;
    std::vector<GradedClass> push_;
};

inline GradedClass pullback(const Morphism& f, const GradedClass& x)
{
    if (x.ring() != f.target())
        throw ring_mismatch("pullback along '" + f.name() + "': class lives on '"
                            + x.ring()->name() + "', expected '" + f.target()->name() + "'");
    GradedClass r(f.source());
    for (const auto& [k, c] : x.terms())
        for (const auto& [k2, c2] : f.pull_basis(f.target()->flat(k)).terms())
            r.accumulate(k2, c * c2);
    return r;
}

inline GradedClass pushforward(const Morphism& f, const GradedClass& x)
{
    if (x.ring() != f.source())
        throw ring_mismatch("pushforward along '" + f.name() + "': class lives on '"
                            + x.ring()->name() + "', expected '" + f.source()->name() + "'");
    GradedClass r(f.target());
    for (const auto& [k, c] : x.terms())
        for (const auto& [k2, c2] : f.push_basis(f.source()->flat(k)).terms())
            r.accumulate(k2, c * c2);
    return r;
}

inline GradedClass pullback(const MorphPtr& f, const GradedClass& x) { return pullback(*f, x); }
inline GradedClass pushforward(const MorphPtr& f, const GradedClass& x)
{
    return pushforward(*f, x);
}

/// Validates and freezes a morphism given its pullback table (one class on
/// source per target basis symbol) and pushforward table (one class on
/// target per source basis symbol).
inline MorphPtr register_morphism(std::string name, RingPtr source, RingPtr target,
                                  std::vector<GradedClass> pull_table,
                                  std::vector<GradedClass> push_table, int rel_dim)
{
    auto m = std::shared_ptr<Morphism>(new Morphism());
    m->name_ = std::move(name);
    m->source_ = std::move(source);
    m->target_ = std::move(target);
    m->rel_dim_ = rel_dim;
    m->pull_ = std::move(pull_table);
    m->push_ = std::move(push_table);

    const RingModel& S = *m->source_;
    const RingModel& T = *m->target_;

    if (rel_dim != S.dimension() - T.dimension())
        throw degree_mismatch("morphism '" + m->name_ + "': rel_dim " + std::to_string(rel_dim)
                              + " does not equal dim(source) - dim(target) = "
                              + std::to_string(S.dimension() - T.dimension()));
    if (static_cast<int>(m->pull_.size()) != T.total_basis())
        throw degree_mismatch("morphism '" + m->name_
                              + "': pullback table must cover every target basis symbol");
    if (static_cast<int>(m->push_.size()) != S.total_basis())
        throw degree_mismatch("morphism '" + m->name_
                              + "': pushforward table must cover every source basis symbol");

    // Degree bookkeeping: pullback preserves codimension, pushforward
    // shifts it by -rel_dim (classes that would land below codimension 0
    // or above the target dimension must be absent).
    for (int t = 0; t < T.total_basis(); ++t) {
        if (m->pull_[t].ring() != m->source_)
            throw ring_mismatch("morphism '" + m->name_ + "': pullback of '"
                                + T.basis_name(T.key_of(t)) + "' is not a class on the source");
        for (const auto& [k, c] : m->pull_[t].terms())
            if (k.codim != T.key_of(t).codim)
                throw degree_mismatch("morphism '" + m->name_ + "': pullback of '"
                                      + T.basis_name(T.key_of(t))
                                      + "' does not preserve codimension");
    }
    for (int s = 0; s < S.total_basis(); ++s) {
        if (m->push_[s].ring() != m->target_)
            throw ring_mismatch("morphism '" + m->name_ + "': pushforward of '"
                                + S.basis_name(S.key_of(s)) + "' is not a class on the target");
        const int expect = S.key_of(s).codim - rel_dim;
        for (const auto& [k, c] : m->push_[s].terms())
            if (k.codim != expect)
                throw degree_mismatch("morphism '" + m->name_ + "': pushforward of '"
                                      + S.basis_name(S.key_of(s)) + "' must land in codimension "
                                      + std::to_string(expect));
    }

    // Pullback is a unital ring homomorphism, checked on all basis products.
    if (!(m->pull_[T.flat(T.unit_key())] == GradedClass::unit(m->source_)))
        throw not_ring_homomorphism("morphism '" + m->name_
                                    + "': pullback does not preserve the unit");
    for (int a = 0; a < T.total_basis(); ++a)
        for (int b = a; b < T.total_basis(); ++b) {
            GradedClass lhs(m->source_);
            for (const auto& [flat, c] : T.product(a, b))
                for (const auto& [k, c2] : m->pull_[flat].terms())
                    lhs.accumulate(k, c * c2);
            GradedClass rhs = mul(m->pull_[a], m->pull_[b]);
            if (!(lhs == rhs))
                throw not_ring_homomorphism(
                    "morphism '" + m->name_ + "': pullback is not multiplicative on "
                    + detail::pair_text(T, a, b));
        }

    // Projection formula on all pairs: push(pull(a) * b) = a * push(b).
    for (int a = 0; a < T.total_basis(); ++a) {
        GradedClass ca = GradedClass::basis_element(m->target_, T.basis_name(T.key_of(a)));
        for (int b = 0; b < S.total_basis(); ++b) {
            GradedClass lhs = pushforward(*m, mul(m->pull_[a],
                                                  GradedClass::basis_element(
                                                      m->source_, S.basis_name(S.key_of(b)))));
            GradedClass rhs = mul(ca, m->push_[b]);
            if (!(lhs == rhs))
                throw projection_formula_violation(
                    "morphism '" + m->name_ + "': projection formula fails for target '"
                    + T.basis_name(T.key_of(a)) + "' and source '" + S.basis_name(S.key_of(b))
                    + "'");
        }
    }

    return m;
}

/// Convenience builder taking name-keyed linear combinations.
inline MorphPtr register_morphism(std::string name, const RingPtr& source, const RingPtr& target,
                                  const std::vector<std::pair<std::string, LinComb>>& pull,
                                  const std::vector<std::pair<std::string, LinComb>>& push,
                                  int rel_dim)
{
    auto build = [](const RingPtr& domain, const RingPtr& values,
                    const std::vector<std::pair<std::string, LinComb>>& table,
                    const char* what, const std::string& mname) {
        std::vector<GradedClass> out(static_cast<size_t>(domain->total_basis()),
                                     GradedClass(values));
        std::vector<char> seen(static_cast<size_t>(domain->total_basis()), 0);
        for (const auto& [sym, comb] : table) {
            auto k = domain->find(sym);
            if (!k)
                throw validation_error("morphism '" + mname + "': " + what + " entry for unknown symbol '"
                                       + sym + "'");
            GradedClass v(values);
            for (const auto& [c, vsym] : comb) {
                auto kv = values->find(vsym);
                if (!kv)
                    throw validation_error("morphism '" + mname + "': " + what + " of '" + sym
                                           + "' references unknown symbol '" + vsym + "'");
                v.accumulate(*kv, c);
            }
            out[domain->flat(*k)] = std::move(v);
            seen[domain->flat(*k)] = 1;
        }
        for (int i = 0; i < domain->total_basis(); ++i)
            if (!seen[i])
                throw validation_error("morphism '" + mname + "': missing " + what + " entry for '"
                                       + domain->basis_name(domain->key_of(i)) + "'");
        return out;
    };
    auto pull_table = build(target, source, pull, "pullback", name);
    auto push_table = build(source, target, push, "pushforward", name);
    return register_morphism(std::move(name), source, target, std::move(pull_table),
                             std::move(push_table), rel_dim);
}

inline MorphPtr identity_morphism(const RingPtr& ring, std::string name = "id")
{
    std::vector<GradedClass> table;
    table.reserve(ring->total_basis());
    for (int i = 0; i < ring->total_basis(); ++i)
        table.push_back(GradedClass::basis_element(ring, ring->basis_name(ring->key_of(i))));
    return register_morphism(std::move(name), ring, ring, table, table, 0);
}

/// Composition "f after g" (g applies first). Pullbacks compose
/// contravariantly, pushforwards covariantly, relative dimensions add.
inline MorphPtr compose(const MorphPtr& f, const MorphPtr& g)
{
    if (g->target() != f->source())
        throw composition_mismatch("compose: target of '" + g->name()
                                   + "' is not the source of '" + f->name() + "'");
    const RingModel& T = *f->target();
    const RingModel& S = *g->source();
    std::vector<GradedClass> pull_table;
    pull_table.reserve(T.total_basis());
    for (int t = 0; t < T.total_basis(); ++t)
        pull_table.push_back(pullback(*g, f->pull_basis(t)));
    std::vector<GradedClass> push_table;
    push_table.reserve(S.total_basis());
    for (int s = 0; s < S.total_basis(); ++s)
        push_table.push_back(pushforward(*f, g->push_basis(s)));
    return register_morphism(f->name() + "." + g->name(), g->source(), f->target(),
                             std::move(pull_table), std::move(push_table),
                             f->rel_dim() + g->rel_dim());
}

inline bool same_tables(const Morphism& a, const Morphism& b)
{
    if (a.source() != b.source() || a.target() != b.target() || a.rel_dim() != b.rel_dim())
        return false;
    for (int t = 0; t < a.target()->total_basis(); ++t)
        if (!(a.pull_basis(t) == b.pull_basis(t)))
            return false;
    for (int s = 0; s < a.source()->total_basis(); ++s)
        if (!(a.push_basis(s) == b.push_basis(s)))
            return false;
    return true;
}

} // namespace chowdr
