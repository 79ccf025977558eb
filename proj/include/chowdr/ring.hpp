#pragma once

#include "chowdr/errors.hpp"
#include "chowdr/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chowdr {

/// Position of a basis symbol: grading degree plus index within that degree.
struct BasisKey {
    int codim = 0;
    int index = 0;
    friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

class RingModel;
using RingPtr = std::shared_ptr<const RingModel>;

/// Linear combination of basis symbols, by name. Used for construction input.
using LinComb = std::vector<std::pair<Rational, std::string>>;

struct ProductEntry {
    std::string lhs;
    std::string rhs;
    LinComb value;
};

namespace detail {
    /// Sparse row over flat basis indices, kept sorted by index with no zeros.
    using SparseRow = std::vector<std::pair<int, Rational>>;

    inline void add_term(SparseRow& row, int idx, const Rational& c)
    {
        if (c == 0)
            return;
        auto it = std::lower_bound(row.begin(), row.end(), idx,
                                   [](const auto& p, int i) { return p.first < i; });
        if (it != row.end() && it->first == idx) {
            it->second += c;
            if (it->second == 0)
                row.erase(it);
        } else {
            row.insert(it, {idx, c});
        }
    }

    inline bool rows_equal(const SparseRow& a, const SparseRow& b) { return a == b; }
} // namespace detail

/// A finite graded commutative algebra over the rationals, presented by an
/// ordered basis per codimension and a table of structure constants. Models
/// the numerical-equivalence ring of a concrete space; immutable once built,
/// so instances are safe to share across threads.
class RingModel {
public:
    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }

    int codim_count() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::string>& basis(int codim) const { return basis_[codim]; }
    int basis_size(int codim) const
    {
        if (codim < 0 || codim > dimension_)
            return 0;
        return static_cast<int>(basis_[codim].size());
    }
    int total_basis() const { return total_; }

    const std::string& basis_name(BasisKey k) const { return basis_[k.codim][k.index]; }

    std::optional<BasisKey> find(const std::string& symbol) const
    {
        auto it = by_name_.find(symbol);
        if (it == by_name_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<BasisKey> point_class() const { return point_; }

    int flat(BasisKey k) const { return offset_[k.codim] + k.index; }
    BasisKey key_of(int flat_index) const { return keys_[flat_index]; }

    /// Structure constants of basis_i * basis_j, as a sparse row of flat indices.
    const detail::SparseRow& product(int flat_a, int flat_b) const
    {
        return table_[static_cast<size_t>(flat_a) * total_ + flat_b];
    }

    BasisKey unit_key() const { return BasisKey{0, 0}; }

    friend RingPtr make_ring(std::string, int, std::vector<std::vector<std::string>>,
                             const std::vector<ProductEntry>&, std::optional<std::string>);

private:
    RingModel() = default;

    std::string name_;
    int dimension_ = 0;
    int total_ = 0;
    std::vector<std::vector<std::string>> basis_;
    std::vector<int> offset_;
    std::vector<BasisKey> keys_;
    std::unordered_map<std::string, BasisKey> by_name_;
    std::vector<detail::SparseRow> table_;
    std::optional<BasisKey> point_;
};

/// A cycle class: sparse rational coefficients over the basis of one ring.
/// Canonical form never stores zero coefficients.
class GradedClass {
public:
    GradedClass() = default;
    explicit GradedClass(RingPtr ring) : ring_(std::move(ring)) {}

    static GradedClass zero(RingPtr ring) { return GradedClass(std::move(ring)); }

    static GradedClass unit(RingPtr ring)
    {
        GradedClass x(std::move(ring));
        x.set(x.ring_->unit_key(), 1);
        return x;
    }

    static GradedClass basis_element(RingPtr ring, const std::string& symbol)
    {
        auto key = ring->find(symbol);
        if (!key)
            throw unbound_name("no basis symbol '" + symbol + "' in ring '" + ring->name() + "'");
        GradedClass x(std::move(ring));
        x.set(*key, 1);
        return x;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<BasisKey, Rational>& terms() const { return coeff_; }
    bool is_zero() const { return coeff_.empty(); }

    Rational coefficient(BasisKey k) const
    {
        auto it = coeff_.find(k);
        return it == coeff_.end() ? Rational(0) : it->second;
    }

    void set(BasisKey k, Rational c)
    {
        if (c == 0)
            coeff_.erase(k);
        else
            coeff_[k] = std::move(c);
    }

    void accumulate(BasisKey k, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = coeff_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                coeff_.erase(it);
        }
    }

    friend bool operator==(const GradedClass& a, const GradedClass& b)
    {
        return a.ring_ == b.ring_ && a.coeff_ == b.coeff_;
    }

private:
    RingPtr ring_;
    std::map<BasisKey, Rational> coeff_;
};

namespace detail {
    inline void require_same_ring(const GradedClass& x, const GradedClass& y, const char* op)
    {
        if (x.ring() != y.ring())
            throw ring_mismatch(std::string(op) + ": classes live on different rings ('"
                                + x.ring()->name() + "' vs '" + y.ring()->name() + "')");
    }
} // namespace detail

inline GradedClass add(const GradedClass& x, const GradedClass& y)
{
    detail::require_same_ring(x, y, "add");
    GradedClass r = x;
    for (const auto& [k, c] : y.terms())
        r.accumulate(k, c);
    return r;
}

inline GradedClass scalar_mul(const Rational& q, const GradedClass& x)
{
    GradedClass r(x.ring());
    if (q == 0)
        return r;
    for (const auto& [k, c] : x.terms())
        r.set(k, q * c);
    return r;
}

inline GradedClass sub(const GradedClass& x, const GradedClass& y)
{
    return add(x, scalar_mul(-1, y));
}

/// Bilinear extension of the structure-constant table. Graded and
/// commutative; anything landing above the ring dimension vanishes.
inline GradedClass mul(const GradedClass& x, const GradedClass& y)
{
    detail::require_same_ring(x, y, "mul");
    const RingModel& ring = *x.ring();
    GradedClass r(x.ring());
    for (const auto& [ka, ca] : x.terms()) {
        for (const auto& [kb, cb] : y.terms()) {
            if (ka.codim + kb.codim > ring.dimension())
                continue;
            const Rational cab = ca * cb;
            for (const auto& [flat, coeff] : ring.product(ring.flat(ka), ring.flat(kb)))
                r.accumulate(ring.key_of(flat), cab * coeff);
        }
    }
    return r;
}

inline GradedClass power(const GradedClass& x, int k)
{
    if (k < 0)
        throw validation_error("power: exponent must be non-negative");
    GradedClass r = GradedClass::unit(x.ring());
    for (int i = 0; i < k; ++i)
        r = mul(r, x);
    return r;
}

/// Truncated exponential sum_{i=0..dim} x^i / i!. Exact because positive
/// codimension classes are nilpotent of order <= dim + 1.
inline GradedClass exp_truncated(const GradedClass& x)
{
    for (const auto& [k, c] : x.terms())
        if (k.codim == 0)
            throw non_nilpotent_input(
                "exp_truncated: input has a nonzero codimension-0 component");
    GradedClass r = GradedClass::unit(x.ring());
    GradedClass term = r;
    for (int i = 1; i <= x.ring()->dimension(); ++i) {
        term = scalar_mul(Rational(1, i), mul(term, x));
        if (term.is_zero())
            break;
        r = add(r, term);
    }
    return r;
}

/// Degree map: coefficient of the designated point class.
inline Rational integrate(const GradedClass& x)
{
    auto pt = x.ring()->point_class();
    if (!pt)
        throw no_point_class("integrate: ring '" + x.ring()->name()
                             + "' has no designated point class");
    return x.coefficient(*pt);
}

inline bool equal(const GradedClass& x, const GradedClass& y)
{
    detail::require_same_ring(x, y, "equal");
    return x.terms() == y.terms();
}

/// The graded piece of x in the given codimension (zero class if out of range).
inline GradedClass component(const GradedClass& x, int codim)
{
    GradedClass r(x.ring());
    for (const auto& [k, c] : x.terms())
        if (k.codim == codim)
            r.set(k, c);
    return r;
}

inline GradedClass operator+(const GradedClass& x, const GradedClass& y) { return add(x, y); }
inline GradedClass operator-(const GradedClass& x, const GradedClass& y) { return sub(x, y); }
inline GradedClass operator-(const GradedClass& x) { return scalar_mul(-1, x); }
inline GradedClass operator*(const GradedClass& x, const GradedClass& y) { return mul(x, y); }
inline GradedClass operator*(const Rational& q, const GradedClass& x) { return scalar_mul(q, x); }

/// Canonical rendering: terms sorted by codimension, then basis name;
/// the unit term prints as a bare rational.
inline std::string to_string(const GradedClass& x)
{
    if (x.is_zero())
        return "0";
    const RingModel& ring = *x.ring();
    std::vector<std::pair<std::pair<int, std::string>, Rational>> parts;
    parts.reserve(x.terms().size());
    for (const auto& [k, c] : x.terms())
        parts.push_back({{k.codim, ring.basis_name(k)}, c});
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::string out;
    bool first = true;
    for (const auto& [key, c] : parts) {
        const auto& [codim, name] = key;
        Rational mag = c;
        bool negative = c < 0;
        if (negative)
            mag = -mag;
        if (first) {
            if (negative)
                out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        if (codim == 0) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += name;
        } else {
            out += to_string(mag) + "*" + name;
        }
    }
    return out;
}

namespace detail {
    inline std::string pair_text(const RingModel& ring, int fa, int fb)
    {
        return "(" + ring.basis_name(ring.key_of(fa)) + ", " + ring.basis_name(ring.key_of(fb))
               + ")";
    }
} // namespace detail

/// Builds and validates a ring model. The whole invariant suite runs here:
/// unit laws, table symmetry, grading truncation, and associativity on every
/// basis triple. Fails fast naming the first offending pair or triple.
inline RingPtr make_ring(std::string name, int dimension,
                         std::vector<std::vector<std::string>> basis_by_codim,
                         const std::vector<ProductEntry>& products,
                         std::optional<std::string> point_class = std::nullopt)
{
    if (dimension < 0)
        throw validation_error("make_ring('" + name + "'): negative dimension");
    basis_by_codim.resize(static_cast<size_t>(dimension) + 1);
    if (basis_by_codim[0].size() != 1)
        throw validation_error("make_ring('" + name
                               + "'): codimension 0 must have exactly one basis symbol");

    auto model = std::shared_ptr<RingModel>(new RingModel());
    model->name_ = std::move(name);
    model->dimension_ = dimension;
    model->basis_ = std::move(basis_by_codim);
    model->offset_.resize(model->basis_.size());
    for (int c = 0; c <= dimension; ++c) {
        model->offset_[c] = model->total_;
        for (int i = 0; i < static_cast<int>(model->basis_[c].size()); ++i) {
            const std::string& sym = model->basis_[c][i];
            if (!model->by_name_.emplace(sym, BasisKey{c, i}).second)
                throw duplicate_basis_name("make_ring('" + model->name_
                                           + "'): duplicate basis symbol '" + sym + "'");
            model->keys_.push_back(BasisKey{c, i});
            ++model->total_;
        }
    }

    const int n = model->total_;
    model->table_.assign(static_cast<size_t>(n) * n, {});
    std::vector<char> specified(static_cast<size_t>(n) * n, 0);
    auto slot = [&](int a, int b) -> detail::SparseRow& {
        return model->table_[static_cast<size_t>(a) * n + b];
    };

    // Ingest declared entries; mirror across the diagonal and reject
    // contradictions between duplicate declarations.
    for (const auto& e : products) {
        auto ka = model->find(e.lhs);
        auto kb = model->find(e.rhs);
        if (!ka || !kb)
            throw validation_error("make_ring('" + model->name_ + "'): product entry ("
                                   + e.lhs + ", " + e.rhs + ") references an undeclared symbol");
        detail::SparseRow row;
        const int target_codim = ka->codim + kb->codim;
        for (const auto& [c, sym] : e.value) {
            auto kv = model->find(sym);
            if (!kv)
                throw validation_error("make_ring('" + model->name_ + "'): product of (" + e.lhs
                                       + ", " + e.rhs + ") references undeclared symbol '" + sym
                                       + "'");
            if (kv->codim != target_codim)
                throw validation_error("make_ring('" + model->name_ + "'): product of (" + e.lhs
                                       + ", " + e.rhs + ") must be homogeneous of codimension "
                                       + std::to_string(target_codim) + ", got '" + sym + "'");
            detail::add_term(row, model->flat(*kv), c);
        }
        if (target_codim > dimension && !row.empty())
            throw validation_error("make_ring('" + model->name_ + "'): product of (" + e.lhs
                                   + ", " + e.rhs + ") exceeds the ring dimension and must be 0");
        const int fa = model->flat(*ka);
        const int fb = model->flat(*kb);
        for (auto [a, b] : {std::pair{fa, fb}, std::pair{fb, fa}}) {
            if (specified[static_cast<size_t>(a) * n + b]
                && !detail::rows_equal(slot(a, b), row))
                throw validation_error("make_ring('" + model->name_
                                       + "'): contradictory product entries for "
                                       + detail::pair_text(*model, a, b));
            slot(a, b) = row;
            specified[static_cast<size_t>(a) * n + b] = 1;
        }
    }

    // Unit laws 1*x = x. Declared entries involving the unit must agree.
    const int unit = 0;
    for (int b = 0; b < n; ++b) {
        detail::SparseRow expected{{b, Rational(1)}};
        for (auto [x, y] : {std::pair{unit, b}, std::pair{b, unit}}) {
            if (specified[static_cast<size_t>(x) * n + y]
                && !detail::rows_equal(slot(x, y), expected))
                throw validation_error("make_ring('" + model->name_ + "'): unit law fails for "
                                       + detail::pair_text(*model, x, y));
            slot(x, y) = expected;
        }
    }

    // Associativity on all basis triples: (a*b)*c = a*(b*c).
    auto mul_row_basis = [&](const detail::SparseRow& row, int c) {
        detail::SparseRow out;
        for (const auto& [idx, coeff] : row)
            for (const auto& [idx2, coeff2] : slot(idx, c))
                detail::add_term(out, idx2, coeff * coeff2);
        return out;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                detail::SparseRow left = mul_row_basis(slot(a, b), c);
                detail::SparseRow right;
                for (const auto& [idx, coeff] : slot(b, c))
                    for (const auto& [idx2, coeff2] : slot(a, idx))
                        detail::add_term(right, idx2, coeff * coeff2);
                if (!detail::rows_equal(left, right))
                    throw validation_error(
                        "make_ring('" + model->name_ + "'): associativity fails on triple ("
                        + model->basis_name(model->key_of(a)) + ", "
                        + model->basis_name(model->key_of(b)) + ", "
                        + model->basis_name(model->key_of(c)) + ")");
            }

    if (point_class) {
        auto kp = model->find(*point_class);
        if (!kp)
            throw validation_error("make_ring('" + model->name_ + "'): point class '"
                                   + *point_class + "' is not a basis symbol");
        if (kp->codim != dimension)
            throw validation_error("make_ring('" + model->name_ + "'): point class '"
                                   + *point_class + "' must live in top codimension");
        model->point_ = *kp;
    }

    return model;
}

} // namespace chowdr
