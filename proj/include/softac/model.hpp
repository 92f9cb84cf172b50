#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "softac/errors.hpp"
#include "softac/structures.hpp"
#include "softac/valuation.hpp"

namespace softac {

using VariableId = int;
using ValueIndex = int;

/// Scope of a constraint: distinct variable ids in ascending order.
using Scope = std::vector<VariableId>;

/// One value index per scope position, in scope order.
using Tuple = std::vector<ValueIndex>;

/// Partial assignment: value index per assigned variable.
using Assignment = std::map<VariableId, ValueIndex>;

struct Variable {
    std::string name;
    std::vector<std::string> domain;  // value labels, distinct, non-empty

    friend bool operator==(const Variable& a, const Variable& b) {
        return a.name == b.name && a.domain == b.domain;
    }
};

// ── row-major tuple indexing ────────────────────────────────────────────────
// Tuples over a scope are ordered row-major with the first scope position most
// significant. Every min-scan and serialization uses this order, which fixes
// all tie-breaks.

inline std::size_t table_size(const std::vector<int>& dims) {
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    return n;
}

inline std::size_t tuple_index(const std::vector<int>& dims, const Tuple& t) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        idx = idx * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(t[k]);
    }
    return idx;
}

inline Tuple tuple_at(const std::vector<int>& dims, std::size_t index) {
    Tuple t(dims.size(), 0);
    for (std::size_t k = dims.size(); k-- > 0;) {
        t[k] = static_cast<int>(index % static_cast<std::size_t>(dims[k]));
        index /= static_cast<std::size_t>(dims[k]);
    }
    return t;
}

/// Advances t to the next row-major tuple; false once all tuples are spent.
inline bool next_tuple(const std::vector<int>& dims, Tuple& t) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        if (++t[k] < dims[k]) return true;
        t[k] = 0;
    }
    return false;
}

// ── constraint storage ──────────────────────────────────────────────────────

/// Space-efficient constraint representation: a shared reference to the
/// original cost table plus, per scope variable, correction tables recording
/// what has been extended into the constraint (plus) and projected out of it
/// (minus). Effective costs are derived on demand, so a constraint of arity r
/// over domains of size d costs O(r*d) extra valuations instead of O(d^r).
struct DeltaBacking {
    std::shared_ptr<const std::vector<Valuation>> original;
    std::vector<std::vector<Valuation>> plus;   // [scope position][value]
    std::vector<std::vector<Valuation>> minus;  // [scope position][value]
};

class Constraint {
public:
    Constraint(Scope scope, std::vector<int> dims, std::vector<Valuation> table)
        : scope_(std::move(scope)), dims_(std::move(dims)), backing_(std::move(table)) {
        validate();
    }

    Constraint(Scope scope, std::vector<int> dims, DeltaBacking delta)
        : scope_(std::move(scope)), dims_(std::move(dims)), backing_(std::move(delta)) {
        validate();
    }

    const Scope& scope() const { return scope_; }
    const std::vector<int>& dims() const { return dims_; }
    std::size_t arity() const { return scope_.size(); }
    std::size_t size() const { return table_size(dims_); }
    bool is_delta() const { return std::holds_alternative<DeltaBacking>(backing_); }

    /// Effective cost of a tuple. For delta-backed constraints this is
    /// (original ⊕ combined plus) ⊖ combined minus, in that order.
    Valuation cost(const Tuple& t) const {
        if (const auto* dense = std::get_if<std::vector<Valuation>>(&backing_)) {
            return (*dense)[tuple_index(dims_, t)];
        }
        const auto& delta = std::get<DeltaBacking>(backing_);
        Valuation base = (*delta.original)[tuple_index(dims_, t)];
        Valuation plus = base.structure().bot();
        Valuation minus = plus;
        for (std::size_t k = 0; k < scope_.size(); ++k) {
            plus = combine(plus, delta.plus[k][static_cast<std::size_t>(t[k])]);
            minus = combine(minus, delta.minus[k][static_cast<std::size_t>(t[k])]);
        }
        Valuation raised = combine(base, plus);
        if (raised < minus) {
            throw CorruptionError("delta tables record more projection than the constraint holds");
        }
        return difference(raised, minus);
    }

    Valuation min_cost() const {
        Tuple t(scope_.size(), 0);
        Valuation best = cost(t);
        while (next_tuple(dims_, t)) best = softac::min(best, cost(t));
        return best;
    }

    /// Position of a variable inside the scope.
    std::size_t position_of(VariableId v) const {
        for (std::size_t k = 0; k < scope_.size(); ++k) {
            if (scope_[k] == v) return k;
        }
        throw InputError("variable " + std::to_string(v) + " not in constraint scope");
    }

    std::vector<Valuation>& dense_table() {
        auto* dense = std::get_if<std::vector<Valuation>>(&backing_);
        if (!dense) throw CapabilityError("constraint is delta-backed, not dense");
        return *dense;
    }
    const std::vector<Valuation>& dense_table() const {
        const auto* dense = std::get_if<std::vector<Valuation>>(&backing_);
        if (!dense) throw CapabilityError("constraint is delta-backed, not dense");
        return *dense;
    }

    DeltaBacking& delta() {
        auto* d = std::get_if<DeltaBacking>(&backing_);
        if (!d) throw CapabilityError("constraint is dense, not delta-backed");
        return *d;
    }
    const DeltaBacking& delta() const {
        const auto* d = std::get_if<DeltaBacking>(&backing_);
        if (!d) throw CapabilityError("constraint is dense, not delta-backed");
        return *d;
    }

    /// Valuations held beyond the shared original table; the delta space bound.
    std::size_t owned_valuation_count() const {
        if (!is_delta()) return size();
        const auto& d = std::get<DeltaBacking>(backing_);
        std::size_t n = 0;
        for (const auto& col : d.plus) n += col.size();
        for (const auto& col : d.minus) n += col.size();
        return n;
    }

private:
    void validate() const {
        if (scope_.size() < 2) throw InputError("non-unary constraint needs arity >= 2");
        if (!std::is_sorted(scope_.begin(), scope_.end()) ||
            std::adjacent_find(scope_.begin(), scope_.end()) != scope_.end()) {
            throw InputError("constraint scope must be strictly ascending");
        }
        if (dims_.size() != scope_.size()) throw InputError("scope/dims mismatch");
        if (table_size(dims_) > 1000000) throw SizeError("dense table guard: d^r exceeds 10^6");
        std::size_t expect = table_size(dims_);
        if (const auto* dense = std::get_if<std::vector<Valuation>>(&backing_)) {
            if (dense->size() != expect) throw InputError("cost table length mismatch");
        } else {
            const auto& d = std::get<DeltaBacking>(backing_);
            if (!d.original || d.original->size() != expect) {
                throw InputError("delta original table length mismatch");
            }
            if (d.plus.size() != scope_.size() || d.minus.size() != scope_.size()) {
                throw InputError("delta table count mismatch");
            }
            for (std::size_t k = 0; k < scope_.size(); ++k) {
                if (d.plus[k].size() != static_cast<std::size_t>(dims_[k]) ||
                    d.minus[k].size() != static_cast<std::size_t>(dims_[k])) {
                    throw InputError("delta table length mismatch");
                }
            }
        }
    }

    Scope scope_;
    std::vector<int> dims_;
    std::variant<std::vector<Valuation>, DeltaBacking> backing_;
};

// ── the problem ──────────────────────────────────────────────────────────────

/// A valued CSP: variables with finite domains, one unary cost table per
/// variable (all-bot when never touched), and at most one non-unary cost
/// table per scope, all over a single valuation structure.
///
/// Problems are plain values: copying yields an independent problem (delta
/// backings share only their immutable original tables).
class Vcsp {
public:
    Vcsp(StructurePtr structure, std::vector<Variable> variables)
        : structure_(std::move(structure)), variables_(std::move(variables)) {
        if (!structure_) throw InputError("problem needs a valuation structure");
        std::set<std::string> names;
        for (const auto& var : variables_) {
            if (var.domain.empty()) throw InputError("variable '" + var.name + "' has an empty domain");
            std::set<std::string> labels(var.domain.begin(), var.domain.end());
            if (labels.size() != var.domain.size()) {
                throw InputError("variable '" + var.name + "' has duplicate value labels");
            }
            if (!names.insert(var.name).second) {
                throw InputError("duplicate variable name '" + var.name + "'");
            }
        }
        unary_.reserve(variables_.size());
        for (const auto& var : variables_) {
            unary_.emplace_back(var.domain.size(), structure_->bot());
        }
    }

    const ValuationStructure& structure() const { return *structure_; }
    StructurePtr structure_ptr() const { return structure_; }

    int var_count() const { return static_cast<int>(variables_.size()); }
    const std::vector<Variable>& variables() const { return variables_; }
    const Variable& variable(VariableId v) const { return variables_.at(static_cast<std::size_t>(v)); }
    int domain_size(VariableId v) const {
        return static_cast<int>(variable(v).domain.size());
    }

    VariableId variable_by_name(const std::string& name) const {
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (variables_[i].name == name) return static_cast<VariableId>(i);
        }
        throw InputError("unknown variable '" + name + "'");
    }

    Valuation unary_cost(VariableId v, ValueIndex a) const {
        check_value(v, a);
        return unary_[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)];
    }
    void set_unary_cost(VariableId v, ValueIndex a, Valuation val) {
        check_value(v, a);
        unary_[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] = val;
    }
    const std::vector<std::vector<Valuation>>& unary_tables() const { return unary_; }

    const std::vector<Constraint>& constraints() const { return constraints_; }
    std::vector<Constraint>& constraints() { return constraints_; }

    /// Adds a non-unary constraint; scopes are unique and kept in
    /// lexicographic order.
    void add_constraint(const Scope& scope, std::vector<Valuation> table) {
        Scope s = scope;
        std::vector<int> dims = dims_for(s);
        Constraint c(std::move(s), std::move(dims), std::move(table));
        insert(std::move(c));
    }
    void add_constraint(Constraint c) { insert(std::move(c)); }

    const Constraint* find_constraint(const Scope& scope) const {
        for (const auto& c : constraints_) {
            if (c.scope() == scope) return &c;
        }
        return nullptr;
    }
    Constraint* find_constraint(const Scope& scope) {
        for (auto& c : constraints_) {
            if (c.scope() == scope) return &c;
        }
        return nullptr;
    }

    std::vector<int> dims_for(const Scope& scope) const {
        std::vector<int> dims;
        dims.reserve(scope.size());
        for (VariableId v : scope) {
            if (v < 0 || v >= var_count()) throw InputError("scope variable out of range");
            dims.push_back(domain_size(v));
        }
        return dims;
    }

    // problem size counters: n, d, e, r
    int n() const { return var_count(); }
    int d() const {
        int best = 0;
        for (const auto& var : variables_) best = std::max(best, static_cast<int>(var.domain.size()));
        return best;
    }
    int e() const { return static_cast<int>(constraints_.size()); }
    int r() const {
        std::size_t best = 1;
        for (const auto& c : constraints_) best = std::max(best, c.arity());
        return static_cast<int>(best);
    }

    void check_value(VariableId v, ValueIndex a) const {
        if (v < 0 || v >= var_count()) throw InputError("variable index out of range");
        if (a < 0 || a >= domain_size(v)) {
            throw InputError("value index " + std::to_string(a) + " outside domain of '" +
                             variable(v).name + "'");
        }
    }

private:
    void insert(Constraint c) {
        if (!structure_->same_as(c.cost(Tuple(c.arity(), 0)).structure())) {
            throw StructureMismatchError("constraint costs are not from the problem's structure");
        }
        if (c.dims() != dims_for(c.scope())) throw InputError("constraint dims do not match domains");
        if (find_constraint(c.scope())) {
            throw InputError("duplicate constraint scope");
        }
        auto pos = std::lower_bound(constraints_.begin(), constraints_.end(), c.scope(),
                                    [](const Constraint& lhs, const Scope& s) { return lhs.scope() < s; });
        constraints_.insert(pos, std::move(c));
    }

    StructurePtr structure_;
    std::vector<Variable> variables_;
    std::vector<std::vector<Valuation>> unary_;
    std::vector<Constraint> constraints_;
};

// ── assignments ──────────────────────────────────────────────────────────────

/// Restriction of an assignment to a variable subset.
inline Assignment project_assignment(const Assignment& t, const std::set<VariableId>& onto) {
    Assignment out;
    for (VariableId v : onto) {
        auto it = t.find(v);
        if (it == t.end()) {
            throw InputError("projection target variable " + std::to_string(v) + " is unassigned");
        }
        out.emplace(v, it->second);
    }
    return out;
}

/// Combined cost of a partial assignment: every constraint whose scope the
/// assignment covers contributes, unary tables included. An empty assignment
/// combines nothing and yields bot.
inline Valuation valuation_of(const Vcsp& v, const Assignment& t) {
    Valuation total = v.structure().bot();
    for (const auto& [var, val] : t) {
        v.check_value(var, val);
        total = combine(total, v.unary_cost(var, val));
    }
    for (const auto& c : v.constraints()) {
        Tuple tuple;
        tuple.reserve(c.arity());
        bool covered = true;
        for (VariableId var : c.scope()) {
            auto it = t.find(var);
            if (it == t.end()) {
                covered = false;
                break;
            }
            tuple.push_back(it->second);
        }
        if (covered) total = combine(total, c.cost(tuple));
    }
    return total;
}

/// The subproblem on J: exactly the variables of J (reindexed, names kept),
/// their unary tables, and the constraints whose scope lies inside J.
inline Vcsp subproblem(const Vcsp& v, const std::set<VariableId>& J) {
    std::vector<VariableId> kept(J.begin(), J.end());
    std::map<VariableId, VariableId> remap;
    std::vector<Variable> vars;
    for (VariableId old : kept) {
        if (old < 0 || old >= v.var_count()) throw InputError("subproblem variable out of range");
        remap[old] = static_cast<VariableId>(vars.size());
        vars.push_back(v.variable(old));
    }
    Vcsp out(v.structure_ptr(), std::move(vars));
    for (VariableId old : kept) {
        for (int a = 0; a < v.domain_size(old); ++a) {
            out.set_unary_cost(remap[old], a, v.unary_cost(old, a));
        }
    }
    for (const auto& c : v.constraints()) {
        bool inside = std::all_of(c.scope().begin(), c.scope().end(),
                                  [&](VariableId var) { return J.count(var) > 0; });
        if (!inside) continue;
        Scope scope;
        for (VariableId var : c.scope()) scope.push_back(remap[var]);
        std::vector<Valuation> table;
        table.reserve(c.size());
        Tuple t(c.arity(), 0);
        do {
            table.push_back(c.cost(t));
        } while (next_tuple(c.dims(), t));
        out.add_constraint(scope, std::move(table));
    }
    return out;
}

/// Lower bound combining every table's minimum entry.
inline Valuation f_min(const Vcsp& v) {
    Valuation total = v.structure().bot();
    for (VariableId var = 0; var < v.var_count(); ++var) {
        Valuation best = v.unary_cost(var, 0);
        for (int a = 1; a < v.domain_size(var); ++a) {
            best = softac::min(best, v.unary_cost(var, a));
        }
        total = combine(total, best);
    }
    for (const auto& c : v.constraints()) total = combine(total, c.min_cost());
    return total;
}

/// Number of complete assignments, saturating at the given limit + 1.
inline std::uint64_t complete_assignment_count(const Vcsp& v, std::uint64_t limit) {
    std::uint64_t n = 1;
    for (int var = 0; var < v.var_count(); ++var) {
        n *= static_cast<std::uint64_t>(v.domain_size(var));
        if (n > limit) return limit + 1;
    }
    return n;
}

inline bool same_signature(const Vcsp& a, const Vcsp& b) {
    return a.structure().same_as(b.structure()) && a.variables() == b.variables();
}

/// Semantic equivalence: every complete assignment costs the same in both
/// problems. Guarded by an assignment-count cap.
inline bool equivalent(const Vcsp& a, const Vcsp& b, std::uint64_t cap = 1000000) {
    if (!same_signature(a, b)) throw InputError("equivalent: problems differ in signature");
    if (complete_assignment_count(a, cap) > cap) {
        throw SizeError("equivalent: assignment count exceeds cap");
    }
    std::vector<int> dims;
    for (int var = 0; var < a.var_count(); ++var) dims.push_back(a.domain_size(var));
    Tuple t(dims.size(), 0);
    do {
        Assignment asg;
        for (std::size_t k = 0; k < dims.size(); ++k) asg[static_cast<VariableId>(k)] = t[k];
        if (valuation_of(a, asg) != valuation_of(b, asg)) return false;
    } while (!dims.empty() && next_tuple(dims, t));
    return true;
}

/// Structural identity: same signature and identical effective cost tables.
inline bool identical(const Vcsp& a, const Vcsp& b) {
    if (!same_signature(a, b)) return false;
    for (VariableId var = 0; var < a.var_count(); ++var) {
        for (int val = 0; val < a.domain_size(var); ++val) {
            if (a.unary_cost(var, val) != b.unary_cost(var, val)) return false;
        }
    }
    if (a.constraints().size() != b.constraints().size()) return false;
    for (std::size_t k = 0; k < a.constraints().size(); ++k) {
        const auto& ca = a.constraints()[k];
        const auto& cb = b.constraints()[k];
        if (ca.scope() != cb.scope()) return false;
        Tuple t(ca.arity(), 0);
        do {
            if (ca.cost(t) != cb.cost(t)) return false;
        } while (next_tuple(ca.dims(), t));
    }
    return true;
}

inline bool operator==(const Vcsp& a, const Vcsp& b) { return identical(a, b); }

} // namespace softac
