#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "softac/model.hpp"

namespace softac {

/// Visits every tuple of the constraint whose scope position `pos` is fixed
/// to `a`; the remaining positions run in row-major order.
template <typename Fn>
inline void for_each_column_tuple(const Constraint& c, std::size_t pos, ValueIndex a, Fn&& fn) {
    std::vector<int> rest;
    rest.reserve(c.arity() - 1);
    for (std::size_t k = 0; k < c.arity(); ++k) {
        if (k != pos) rest.push_back(c.dims()[k]);
    }
    Tuple partial(rest.size(), 0);
    Tuple full(c.arity(), 0);
    full[pos] = a;
    do {
        std::size_t r = 0;
        for (std::size_t k = 0; k < c.arity(); ++k) {
            if (k != pos) full[k] = partial[r++];
        }
        fn(full);
    } while (next_tuple(rest, partial));
}

/// Minimum cost over the column of (i,a), ties resolved by row-major order.
inline Valuation column_min(const Constraint& c, std::size_t pos, ValueIndex a) {
    bool first = true;
    Valuation best = c.cost(Tuple(c.arity(), 0));  // overwritten before use
    for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
        Valuation v = c.cost(t);
        if (first || v < best) {
            best = v;
            first = false;
        }
    });
    return best;
}

namespace detail {

inline Constraint& constraint_for(Vcsp& v, const Scope& scope) {
    Constraint* c = v.find_constraint(scope);
    if (!c) throw InputError("no constraint over the given scope");
    return *c;
}

} // namespace detail

/// Shifts the minimum column cost of (i,a) from the constraint down onto the
/// unary table, compensating inside the constraint so the problem stays
/// equivalent. Returns the shifted amount.
inline Valuation proj_in_place(Vcsp& v, const Scope& scope, VariableId i, ValueIndex a) {
    Constraint& c = detail::constraint_for(v, scope);
    std::size_t pos = c.position_of(i);
    v.check_value(i, a);
    Valuation beta = column_min(c, pos, a);
    v.set_unary_cost(i, a, combine(v.unary_cost(i, a), beta));
    if (c.is_delta()) {
        auto& cell = c.delta().minus[pos][static_cast<std::size_t>(a)];
        cell = combine(cell, beta);
    } else {
        auto& table = c.dense_table();
        for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
            std::size_t idx = tuple_index(c.dims(), t);
            table[idx] = difference(table[idx], beta);
        });
    }
    return beta;
}

/// Shifts the whole unary cost of (i,a) up into the constraint, lowering the
/// unary entry to its maximal absorbing part. Returns the shifted amount.
inline Valuation ext_in_place(Vcsp& v, VariableId i, ValueIndex a, const Scope& scope) {
    Constraint& c = detail::constraint_for(v, scope);
    std::size_t pos = c.position_of(i);
    v.check_value(i, a);
    Valuation alpha = v.unary_cost(i, a);
    if (c.is_delta()) {
        auto& cell = c.delta().plus[pos][static_cast<std::size_t>(a)];
        cell = combine(cell, alpha);
    } else {
        auto& table = c.dense_table();
        for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
            std::size_t idx = tuple_index(c.dims(), t);
            table[idx] = combine(table[idx], alpha);
        });
    }
    v.set_unary_cost(i, a, difference(alpha, alpha));
    return alpha;
}

inline Vcsp proj(const Vcsp& v, const Scope& scope, VariableId i, ValueIndex a) {
    Vcsp out = v;
    proj_in_place(out, scope, i, a);
    return out;
}

inline Vcsp ext(const Vcsp& v, VariableId i, ValueIndex a, const Scope& scope) {
    Vcsp out = v;
    ext_in_place(out, i, a, scope);
    return out;
}

/// Rebuilds a constraint dense, with every delta folded in.
inline Constraint materialize_constraint(const Constraint& c) {
    if (!c.is_delta()) return c;
    std::vector<Valuation> table;
    table.reserve(c.size());
    Tuple t(c.arity(), 0);
    do {
        table.push_back(c.cost(t));
    } while (next_tuple(c.dims(), t));
    return Constraint(c.scope(), c.dims(), std::move(table));
}

/// Wraps a constraint in fresh delta tables over its current effective
/// costs. A dense constraint donates its table as the shared original.
inline Constraint delta_wrap_constraint(const Constraint& c, const ValuationStructure& s) {
    std::shared_ptr<const std::vector<Valuation>> original;
    if (c.is_delta()) {
        std::vector<Valuation> table;
        table.reserve(c.size());
        Tuple t(c.arity(), 0);
        do {
            table.push_back(c.cost(t));
        } while (next_tuple(c.dims(), t));
        original = std::make_shared<const std::vector<Valuation>>(std::move(table));
    } else {
        original = std::make_shared<const std::vector<Valuation>>(c.dense_table());
    }
    DeltaBacking delta;
    delta.original = std::move(original);
    for (std::size_t k = 0; k < c.arity(); ++k) {
        delta.plus.emplace_back(static_cast<std::size_t>(c.dims()[k]), s.bot());
        delta.minus.emplace_back(static_cast<std::size_t>(c.dims()[k]), s.bot());
    }
    return Constraint(c.scope(), c.dims(), std::move(delta));
}

/// Problem with every non-unary constraint materialized dense.
inline Vcsp materialize(const Vcsp& v) {
    Vcsp out = v;
    for (auto& c : out.constraints()) c = materialize_constraint(c);
    return out;
}

/// Problem with every non-unary constraint delta-backed (fresh deltas).
inline Vcsp to_delta(const Vcsp& v) {
    Vcsp out = v;
    for (auto& c : out.constraints()) c = delta_wrap_constraint(c, v.structure());
    return out;
}

} // namespace softac
