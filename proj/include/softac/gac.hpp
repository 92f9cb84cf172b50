#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "softac/model.hpp"
#include "softac/transforms.hpp"

namespace softac {

/// One propagation record: a tuple, the scope it belongs to (a singleton for
/// unary entries), and the cost the entry had when it was enqueued. Entries
/// whose cost has changed since are stale and get discarded at pop time.
struct QueueEntry {
    Tuple tuple;
    Scope scope;
    Valuation recorded;
};

using PropagationQueue = std::deque<QueueEntry>;

struct GacStats {
    std::uint64_t iterations = 0;      // while-loop extractions
    std::uint64_t projac_calls = 0;
    std::uint64_t extac_calls = 0;
    std::uint64_t enqueued = 0;
    std::uint64_t iteration_bound = 0; // erd + (r+1)ed^r(2ed^r+2)
};

struct GacOptions {
    bool stale_guard = true;     // discard entries whose recorded cost is stale
    bool enforce_bound = true;   // fail hard if the iteration bound is exceeded
};

struct GacResult {
    Vcsp problem;
    GacStats stats;
};

/// Guarded projection: computes the column minimum of (i,a), and only when it
/// strictly raises the unary cost applies the shift and records the new unary
/// cost in the queue.
inline void proj_ac(Vcsp& v, const Scope& scope, VariableId i, ValueIndex a, PropagationQueue& q,
                    GacStats* stats = nullptr) {
    if (stats) ++stats->projac_calls;
    Constraint& c = detail::constraint_for(v, scope);
    std::size_t pos = c.position_of(i);
    v.check_value(i, a);
    Valuation beta = column_min(c, pos, a);
    Valuation raised = combine(v.unary_cost(i, a), beta);
    if (!(raised > v.unary_cost(i, a))) return;
    v.set_unary_cost(i, a, raised);
    q.push_back(QueueEntry{Tuple{a}, Scope{i}, raised});
    if (stats) ++stats->enqueued;
    auto& table = c.dense_table();
    for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
        std::size_t idx = tuple_index(c.dims(), t);
        table[idx] = difference(table[idx], beta);
    });
}

/// Guarded extension: raises each tuple of the column of (i,a) to the largest
/// cost that leaves the combined valuation with the unary costs unchanged.
/// Every written cost is absorbing.
inline void ext_ac(Vcsp& v, VariableId i, ValueIndex a, const Scope& scope, PropagationQueue& q,
                   GacStats* stats = nullptr) {
    if (stats) ++stats->extac_calls;
    Constraint& c = detail::constraint_for(v, scope);
    std::size_t pos = c.position_of(i);
    v.check_value(i, a);
    auto& table = c.dense_table();
    for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
        Valuation beta = v.structure().bot();
        for (std::size_t k = 0; k < c.arity(); ++k) {
            beta = combine(beta, v.unary_cost(c.scope()[k], t[k]));
        }
        std::size_t idx = tuple_index(c.dims(), t);
        Valuation gamma = difference(combine(table[idx], beta), beta);
        if (gamma > table[idx]) {
            if (!is_absorbing(gamma)) {
                throw CorruptionError("extension wrote a non-absorbing cost");
            }
            table[idx] = gamma;
            q.push_back(QueueEntry{t, c.scope(), gamma});
            if (stats) ++stats->enqueued;
        }
    });
}

namespace detail {

inline std::uint64_t gac_iteration_bound(const Vcsp& v) {
    std::uint64_t e = static_cast<std::uint64_t>(v.e());
    std::uint64_t d = static_cast<std::uint64_t>(v.d());
    std::uint64_t r = static_cast<std::uint64_t>(v.r());
    std::uint64_t dr = 1;
    for (std::uint64_t k = 0; k < r; ++k) dr *= d;
    std::uint64_t n2 = e * dr * (2 * e * dr + 2);
    return e * r * d + (r + 1) * n2;
}

inline std::vector<std::size_t> constraints_containing(const Vcsp& v, VariableId i) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < v.constraints().size(); ++k) {
        const Scope& s = v.constraints()[k].scope();
        if (std::find(s.begin(), s.end(), i) != s.end()) out.push_back(k);
    }
    return out;
}

} // namespace detail

/// Queue-driven arc consistency enforcement for fair problems. Operates on
/// dense tables. The initialization phase runs both operations once per
/// (variable, value, constraint) in ascending scan order; the propagation
/// phase drains the queue FIFO. The while-loop iteration count is asserted
/// against its polynomial bound.
inline GacResult enforce_gac(const Vcsp& input, const GacOptions& options = {}) {
    if (!input.structure().fair()) {
        throw CapabilityError("arc consistency enforcement needs a fair structure");
    }
    GacResult result{materialize(input), {}};
    Vcsp& v = result.problem;
    GacStats& stats = result.stats;
    stats.iteration_bound = detail::gac_iteration_bound(v);
    PropagationQueue q;

    for (VariableId i = 0; i < v.var_count(); ++i) {
        for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
            for (std::size_t k : detail::constraints_containing(v, i)) {
                Scope scope = v.constraints()[k].scope();
                ext_ac(v, i, a, scope, q, &stats);
                proj_ac(v, scope, i, a, q, &stats);
            }
        }
    }

    while (!q.empty()) {
        ++stats.iterations;
        if (options.enforce_bound && stats.iterations > stats.iteration_bound) {
            throw CorruptionError("propagation exceeded its iteration bound");
        }
        QueueEntry entry = q.front();
        q.pop_front();
        if (options.stale_guard) {
            Valuation now = entry.scope.size() == 1
                                ? v.unary_cost(entry.scope[0], entry.tuple[0])
                                : detail::constraint_for(v, entry.scope).cost(entry.tuple);
            if (now != entry.recorded) continue;
        }
        if (entry.scope.size() == 1) {
            VariableId i = entry.scope[0];
            for (std::size_t k : detail::constraints_containing(v, i)) {
                ext_ac(v, i, entry.tuple[0], v.constraints()[k].scope(), q, &stats);
            }
        } else {
            for (std::size_t pos = 0; pos < entry.scope.size(); ++pos) {
                proj_ac(v, entry.scope, entry.scope[pos], entry.tuple[pos], q, &stats);
            }
        }
    }
    return result;
}

// ── consistency checkers ─────────────────────────────────────────────────────

struct GacViolation {
    int condition = 0;  // 1: tuple not maximal, 2: unary minimum not reached
    Scope scope;
    Tuple tuple;         // condition 1
    VariableId var = -1; // condition 2
    ValueIndex value = -1;

    std::string describe(const Vcsp& v) const {
        std::ostringstream out;
        out << "condition " << condition << " at constraint {";
        for (std::size_t k = 0; k < scope.size(); ++k) {
            out << (k ? "," : "") << v.variable(scope[k]).name;
        }
        out << "}";
        if (condition == 1) {
            out << " tuple (";
            for (std::size_t k = 0; k < tuple.size(); ++k) {
                out << (k ? "," : "") << v.variable(scope[k]).domain[static_cast<std::size_t>(tuple[k])];
            }
            out << ")";
        } else {
            out << " value (" << v.variable(var).name << ","
                << v.variable(var).domain[static_cast<std::size_t>(value)] << ")";
        }
        return out.str();
    }
};

struct GacCheck {
    bool consistent = true;
    std::optional<GacViolation> violation;
};

/// Checks the two defining conditions of generalized soft arc consistency:
/// every tuple cost is maximal against the unary costs of its values, and
/// every unary cost already holds the column minimum of each constraint.
inline GacCheck is_gac(const Vcsp& v) {
    for (const auto& c : v.constraints()) {
        Tuple t(c.arity(), 0);
        do {
            Valuation beta = v.structure().bot();
            for (std::size_t k = 0; k < c.arity(); ++k) {
                beta = combine(beta, v.unary_cost(c.scope()[k], t[k]));
            }
            Valuation cost = c.cost(t);
            if (cost != difference(combine(cost, beta), beta)) {
                return {false, GacViolation{1, c.scope(), t}};
            }
        } while (next_tuple(c.dims(), t));
        for (std::size_t pos = 0; pos < c.arity(); ++pos) {
            VariableId i = c.scope()[pos];
            for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
                Valuation ci = v.unary_cost(i, a);
                bool first = true;
                Valuation best = ci;
                for_each_column_tuple(c, pos, a, [&](const Tuple& col) {
                    Valuation joined = combine(ci, c.cost(col));
                    if (first || joined < best) {
                        best = joined;
                        first = false;
                    }
                });
                if (best != ci) {
                    return {false, GacViolation{2, c.scope(), Tuple{}, i, a}};
                }
            }
        }
    }
    return {};
}

// ── the strictly monotonic route ─────────────────────────────────────────────

/// The crisp problem underneath: same variables and domains, every cost table
/// mapped to the two-level structure with a tuple allowed iff its cost is
/// below top.
inline Vcsp underlying_csp(const Vcsp& v) {
    StructurePtr crisp = make_structure("ordered_max", {{"levels", 2}});
    Vcsp out(crisp, v.variables());
    for (VariableId i = 0; i < v.var_count(); ++i) {
        for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
            out.set_unary_cost(i, a, v.unary_cost(i, a).is_top() ? crisp->top() : crisp->bot());
        }
    }
    for (const auto& c : v.constraints()) {
        std::vector<Valuation> table;
        table.reserve(c.size());
        Tuple t(c.arity(), 0);
        do {
            table.push_back(c.cost(t).is_top() ? crisp->top() : crisp->bot());
        } while (next_tuple(c.dims(), t));
        out.add_constraint(c.scope(), std::move(table));
    }
    return out;
}

namespace detail {

/// Whether (i,a) has a supporting tuple in c: some column tuple below top all
/// of whose other values are still alive.
inline bool has_support(const Vcsp& v, const Constraint& c, std::size_t pos, ValueIndex a) {
    bool found = false;
    for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
        if (found || c.cost(t).is_top()) return;
        for (std::size_t k = 0; k < c.arity(); ++k) {
            if (k != pos && v.unary_cost(c.scope()[k], t[k]).is_top()) return;
        }
        found = true;
    });
    return found;
}

} // namespace detail

struct UnderlyingAcStats {
    std::uint64_t deletions = 0;
};

/// Arc consistency on the underlying crisp problem, expressed on the soft
/// problem itself: a value with no support in some constraint has its unary
/// cost raised to top, and a top value has all its constraint columns raised
/// to top so the deletion is explicit at both levels. Both writes keep the
/// problem equivalent, because every assignment through such a value already
/// costs top.
inline GacResult enforce_ac_underlying(const Vcsp& input) {
    GacResult result{materialize(input), {}};
    Vcsp& v = result.problem;
    Valuation top = v.structure().top();

    auto spread_deletion = [&](VariableId i, ValueIndex a) {
        for (std::size_t k : detail::constraints_containing(v, i)) {
            Constraint& c = v.constraints()[k];
            std::size_t pos = c.position_of(i);
            auto& table = c.dense_table();
            for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
                table[tuple_index(c.dims(), t)] = top;
            });
        }
    };

    for (VariableId i = 0; i < v.var_count(); ++i) {
        for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
            if (v.unary_cost(i, a).is_top()) spread_deletion(i, a);
        }
    }
    bool fired = true;
    while (fired) {
        fired = false;
        for (const auto& c : v.constraints()) {
            for (std::size_t pos = 0; pos < c.arity(); ++pos) {
                VariableId i = c.scope()[pos];
                for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
                    if (v.unary_cost(i, a).is_top()) continue;
                    if (!detail::has_support(v, c, pos, a)) {
                        v.set_unary_cost(i, a, top);
                        spread_deletion(i, a);
                        ++result.stats.iterations;
                        fired = true;
                    }
                }
            }
        }
    }
    return result;
}

/// The simpler arc consistency characterization valid for strictly monotonic
/// combination: the underlying crisp problem is arc consistent, and every
/// live value sees a zero-cost tuple in each of its constraints.
inline GacCheck is_gac_strict(const Vcsp& v) {
    for (const auto& c : v.constraints()) {
        for (std::size_t pos = 0; pos < c.arity(); ++pos) {
            VariableId i = c.scope()[pos];
            for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
                if (v.unary_cost(i, a).is_top()) continue;
                if (!detail::has_support(v, c, pos, a)) {
                    return {false, GacViolation{1, c.scope(), Tuple{}, i, a}};
                }
                bool zero = false;
                for_each_column_tuple(c, pos, a, [&](const Tuple& t) {
                    if (!zero && c.cost(t).is_bot()) zero = true;
                });
                if (!zero) {
                    return {false, GacViolation{2, c.scope(), Tuple{}, i, a}};
                }
            }
        }
    }
    return {};
}

struct SacStats {
    std::uint64_t deletions = 0;
    std::uint64_t proj_calls = 0;
};

struct SacResult {
    Vcsp problem;
    SacStats stats;
};

/// Arc consistency for strictly monotonic structures: crisp arc consistency
/// on the underlying problem, then one projection per (constraint, variable,
/// value) in scan order, run on the space-efficient delta representation.
inline SacResult enforce_sac_strict(const Vcsp& input) {
    if (!input.structure().strictly_monotonic()) {
        throw CapabilityError("structure '" + input.structure().key() +
                              "' is not strictly monotonic");
    }
    GacResult crisp = enforce_ac_underlying(input);
    SacResult result{to_delta(crisp.problem), {}};
    result.stats.deletions = crisp.stats.iterations;
    Vcsp& v = result.problem;
    std::vector<Scope> scopes;
    for (const auto& c : v.constraints()) scopes.push_back(c.scope());
    for (const Scope& scope : scopes) {
        for (VariableId i : scope) {
            for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
                proj_in_place(v, scope, i, a);
                ++result.stats.proj_calls;
            }
        }
    }
    return result;
}

// ── closure enumeration ──────────────────────────────────────────────────────

struct ClosureEntry {
    Vcsp problem;
    Valuation fmin;
};

/// Distinct arc consistency fixpoints reachable from a problem within an
/// operation budget, found by breadth-first search over the guarded
/// operations. Fixpoints are states where no operation fires.
struct ClosureReport {
    std::vector<ClosureEntry> closures;
    bool complete = true;       // no reachable state was cut off by the budget
    std::uint64_t states = 0;   // distinct states visited
};

namespace detail {

inline std::string state_key(const Vcsp& v) {
    std::ostringstream out;
    for (VariableId i = 0; i < v.var_count(); ++i) {
        for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
            out << v.unary_cost(i, a).code() << ",";
        }
    }
    for (const auto& c : v.constraints()) {
        Tuple t(c.arity(), 0);
        do {
            out << c.cost(t).code() << ",";
        } while (next_tuple(c.dims(), t));
        out << ";";
    }
    return out.str();
}

} // namespace detail

inline ClosureReport enumerate_closures(const Vcsp& input, std::uint64_t op_budget,
                                        std::uint64_t state_cap = 200000) {
    if (input.var_count() > 4 || input.d() > 3) {
        throw SizeError("closure enumeration is desk-scale only (n <= 4, d <= 3)");
    }
    ClosureReport report;
    Vcsp start = materialize(input);
    std::map<std::string, bool> seen;  // key -> expanded
    std::deque<std::pair<Vcsp, std::uint64_t>> frontier;
    std::set<std::string> closure_keys;
    frontier.emplace_back(start, 0);
    seen[detail::state_key(start)] = true;

    while (!frontier.empty()) {
        auto [state, depth] = frontier.front();
        frontier.pop_front();
        ++report.states;
        if (report.states > state_cap) {
            report.complete = false;
            break;
        }
        const std::string here = detail::state_key(state);
        bool any_change = false;
        auto consider = [&](Vcsp&& next) {
            std::string key = detail::state_key(next);
            if (key == here) return;
            any_change = true;
            if (depth + 1 > op_budget) {
                report.complete = false;  // a reachable state lies past the budget
                return;
            }
            if (seen.emplace(std::move(key), true).second) {
                frontier.emplace_back(std::move(next), depth + 1);
            }
        };
        for (const auto& c : state.constraints()) {
            Scope scope = c.scope();
            for (VariableId i : scope) {
                for (ValueIndex a = 0; a < state.domain_size(i); ++a) {
                    Vcsp next = state;
                    PropagationQueue q;
                    proj_ac(next, scope, i, a, q);
                    consider(std::move(next));
                }
            }
        }
        for (VariableId i = 0; i < state.var_count(); ++i) {
            for (ValueIndex a = 0; a < state.domain_size(i); ++a) {
                for (std::size_t k : detail::constraints_containing(state, i)) {
                    Vcsp next = state;
                    PropagationQueue q;
                    ext_ac(next, i, a, state.constraints()[k].scope(), q);
                    consider(std::move(next));
                }
            }
        }
        if (!any_change && closure_keys.insert(here).second) {
            report.closures.push_back(ClosureEntry{state, f_min(state)});
        }
    }
    std::sort(report.closures.begin(), report.closures.end(),
              [](const ClosureEntry& a, const ClosureEntry& b) {
                  if (a.fmin != b.fmin) return a.fmin < b.fmin;
                  return detail::state_key(a.problem) < detail::state_key(b.problem);
              });
    return report;
}

} // namespace softac
