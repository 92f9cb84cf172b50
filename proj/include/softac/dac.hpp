#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "softac/gac.hpp"
#include "softac/model.hpp"
#include "softac/transforms.hpp"

namespace softac {

/// Total order on the variables: order[k] is the k-th variable, earlier
/// positions receive the pooled costs.
class VariableOrder {
public:
    explicit VariableOrder(std::vector<VariableId> order) : order_(std::move(order)) {
        std::vector<VariableId> sorted = order_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            if (sorted[k] != static_cast<VariableId>(k)) {
                throw InputError("variable order must be a permutation of all variables");
            }
        }
        positions_.resize(order_.size());
        for (std::size_t k = 0; k < order_.size(); ++k) {
            positions_[static_cast<std::size_t>(order_[k])] = static_cast<int>(k);
        }
    }

    static VariableOrder identity(int n) {
        std::vector<VariableId> order(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k;
        return VariableOrder(std::move(order));
    }

    const std::vector<VariableId>& order() const { return order_; }
    int size() const { return static_cast<int>(order_.size()); }
    int position(VariableId v) const { return positions_.at(static_cast<std::size_t>(v)); }
    VariableId at(int position) const { return order_.at(static_cast<std::size_t>(position)); }

private:
    std::vector<VariableId> order_;
    std::vector<int> positions_;
};

struct DacStats {
    std::uint64_t proj_calls = 0;
    std::uint64_t ext_calls = 0;
};

struct DacOptions {
    /// Re-verify, after each constraint is processed, that its directional
    /// condition holds and that the conditions of all previously processed
    /// constraints still hold.
    bool check_assertions = false;
};

struct DacResult {
    Vcsp problem;
    DacStats stats;
};

namespace detail {

inline void require_binary(const Vcsp& v, const char* who) {
    for (const auto& c : v.constraints()) {
        if (c.arity() != 2) {
            throw CapabilityError(std::string(who) + " handles unary and binary constraints only");
        }
    }
}

/// The directional condition for one ordered constraint side: the unary cost
/// of every (i,a) equals the minimum over b of c_i(a) ⊕ c_ij(a,b) ⊕ c_j(b).
inline bool dac_condition_holds(const Vcsp& v, const Constraint& c, VariableId i, VariableId j,
                                ValueIndex a) {
    std::size_t pos_i = c.position_of(i);
    std::size_t pos_j = c.position_of(j);
    Valuation ci = v.unary_cost(i, a);
    bool first = true;
    Valuation best = ci;
    for (ValueIndex b = 0; b < v.domain_size(j); ++b) {
        Tuple t(2, 0);
        t[pos_i] = a;
        t[pos_j] = b;
        Valuation joined = combine(combine(ci, c.cost(t)), v.unary_cost(j, b));
        if (first || joined < best) {
            best = joined;
            first = false;
        }
    }
    return best == ci;
}

} // namespace detail

struct DacViolation {
    VariableId earlier = -1;
    VariableId later = -1;
    ValueIndex value = -1;
};

struct DacCheck {
    bool consistent = true;
    std::optional<DacViolation> violation;
};

/// Checks directional arc consistency along the order: for every binary
/// constraint, oriented with its order-earlier endpoint first, the earlier
/// unary table already holds the pooled minimum.
inline DacCheck is_dac(const Vcsp& v, const VariableOrder& order) {
    detail::require_binary(v, "directional consistency");
    for (const auto& c : v.constraints()) {
        VariableId u = c.scope()[0];
        VariableId w = c.scope()[1];
        VariableId i = order.position(u) < order.position(w) ? u : w;
        VariableId j = i == u ? w : u;
        for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
            if (!detail::dac_condition_holds(v, c, i, j, a)) {
                return {false, DacViolation{i, j, a}};
            }
        }
    }
    return {};
}

/// Directional arc consistency enforcement: walks the order from the last
/// variable down; for each constraint toward a later variable, extends every
/// later-side unary cost into the constraint, then projects every column onto
/// the earlier variable. Runs on the delta representation; exactly
/// d_j + d_i operation calls are spent per constraint.
inline DacResult enforce_dac(const Vcsp& input, const VariableOrder& order,
                             const DacOptions& options = {}) {
    if (!input.structure().fair()) {
        throw CapabilityError("directional enforcement needs a fair structure");
    }
    detail::require_binary(input, "directional enforcement");
    if (order.size() != input.var_count()) {
        throw InputError("variable order size does not match the problem");
    }
    DacResult result{to_delta(input), {}};
    Vcsp& v = result.problem;
    std::vector<std::pair<VariableId, VariableId>> processed;  // (earlier, later)
    for (int pi = v.var_count() - 2; pi >= 0; --pi) {
        VariableId i = order.at(pi);
        for (int pj = pi + 1; pj < v.var_count(); ++pj) {
            VariableId j = order.at(pj);
            Scope scope{std::min(i, j), std::max(i, j)};
            if (!v.find_constraint(scope)) continue;
            for (ValueIndex b = 0; b < v.domain_size(j); ++b) {
                ext_in_place(v, j, b, scope);
                ++result.stats.ext_calls;
            }
            for (ValueIndex a = 0; a < v.domain_size(i); ++a) {
                proj_in_place(v, scope, i, a);
                ++result.stats.proj_calls;
            }
            processed.emplace_back(i, j);
            if (options.check_assertions) {
                for (const auto& [pi_, pj_] : processed) {
                    const Constraint& c = *v.find_constraint(Scope{std::min(pi_, pj_), std::max(pi_, pj_)});
                    for (ValueIndex a = 0; a < v.domain_size(pi_); ++a) {
                        if (!detail::dac_condition_holds(v, c, pi_, pj_, a)) {
                            throw CorruptionError("directional condition lost after later propagation");
                        }
                    }
                }
            }
        }
    }
    return result;
}

// ── exact solving on trees ───────────────────────────────────────────────────

/// A rooted tree over the variables whose edges are exactly the binary
/// constraint scopes. The topological order lists parents before children.
class TreeStructure {
public:
    TreeStructure(VariableId root, std::vector<VariableId> parent, std::vector<VariableId> topo)
        : root_(root), parent_(std::move(parent)), topo_(std::move(topo)) {}

    /// Derives the tree from the constraint graph, rooted as requested.
    /// Children are visited in ascending variable order.
    static TreeStructure from_constraint_graph(const Vcsp& v, VariableId root) {
        detail::require_binary(v, "tree solving");
        if (root < 0 || root >= v.var_count()) throw InputError("tree root out of range");
        int n = v.var_count();
        if (v.e() != n - 1) {
            throw InputError("constraint graph is not a tree: expected exactly n-1 binary scopes");
        }
        std::vector<std::vector<VariableId>> adjacent(static_cast<std::size_t>(n));
        for (const auto& c : v.constraints()) {
            adjacent[static_cast<std::size_t>(c.scope()[0])].push_back(c.scope()[1]);
            adjacent[static_cast<std::size_t>(c.scope()[1])].push_back(c.scope()[0]);
        }
        for (auto& nbrs : adjacent) std::sort(nbrs.begin(), nbrs.end());
        std::vector<VariableId> parent(static_cast<std::size_t>(n), -1);
        std::vector<bool> visited(static_cast<std::size_t>(n), false);
        std::vector<VariableId> topo;
        std::vector<VariableId> stack{root};
        visited[static_cast<std::size_t>(root)] = true;
        while (!stack.empty()) {
            VariableId at = stack.front();
            stack.erase(stack.begin());
            topo.push_back(at);
            for (VariableId nb : adjacent[static_cast<std::size_t>(at)]) {
                if (visited[static_cast<std::size_t>(nb)]) continue;
                visited[static_cast<std::size_t>(nb)] = true;
                parent[static_cast<std::size_t>(nb)] = at;
                stack.push_back(nb);
            }
        }
        if (static_cast<int>(topo.size()) != n) {
            throw InputError("constraint graph is not a tree: not connected");
        }
        return TreeStructure(root, std::move(parent), std::move(topo));
    }

    VariableId root() const { return root_; }
    VariableId parent(VariableId v) const { return parent_.at(static_cast<std::size_t>(v)); }
    const std::vector<VariableId>& topological_order() const { return topo_; }

private:
    VariableId root_;
    std::vector<VariableId> parent_;
    std::vector<VariableId> topo_;
};

struct TreeSolution {
    Valuation optimum;
    Assignment witness;
    DacStats stats;
};

/// Solves a tree-structured problem exactly: directional enforcement along
/// the topological order pools all costs onto the root, whose best unary
/// entry is the optimal valuation. The witness is rebuilt root-to-leaves by
/// picking, per child, the value that attains the pooled minimum; ties go to
/// the smallest value index.
inline TreeSolution solve_tree(const Vcsp& input, const TreeStructure& tree) {
    VariableOrder order(tree.topological_order());
    DacResult dac = enforce_dac(input, order);
    const Vcsp& v = dac.problem;

    VariableId root = tree.root();
    ValueIndex best_value = 0;
    Valuation best = v.unary_cost(root, 0);
    for (ValueIndex a = 1; a < v.domain_size(root); ++a) {
        if (v.unary_cost(root, a) < best) {
            best = v.unary_cost(root, a);
            best_value = a;
        }
    }
    Assignment witness;
    witness[root] = best_value;
    for (VariableId child : tree.topological_order()) {
        if (child == root) continue;
        VariableId parent = tree.parent(child);
        ValueIndex pa = witness.at(parent);
        Scope scope{std::min(parent, child), std::max(parent, child)};
        const Constraint& c = *v.find_constraint(scope);
        std::size_t pos_p = c.position_of(parent);
        std::size_t pos_c = c.position_of(child);
        ValueIndex chosen = 0;
        bool first = true;
        Valuation lowest = best;
        for (ValueIndex b = 0; b < v.domain_size(child); ++b) {
            Tuple t(2, 0);
            t[pos_p] = pa;
            t[pos_c] = b;
            Valuation joined =
                combine(combine(v.unary_cost(parent, pa), c.cost(t)), v.unary_cost(child, b));
            if (first || joined < lowest) {
                lowest = joined;
                chosen = b;
                first = false;
            }
        }
        witness[child] = chosen;
    }
    Valuation check = valuation_of(input, witness);
    if (check != best) {
        throw CorruptionError("tree witness does not evaluate to the pooled optimum");
    }
    return TreeSolution{best, std::move(witness), dac.stats};
}

// ── bounded irreducibility search ────────────────────────────────────────────

struct ImprovingSequence {
    Scope pair;
    std::vector<std::string> operations;
    Valuation before;
    Valuation after;
};

struct IrreducibilityReport {
    std::vector<ImprovingSequence> improving;  // first found per pair
    std::uint64_t pairs = 0;
    std::uint64_t states = 0;

    bool irreducible() const { return improving.empty(); }
};

/// Searches, for every binary constraint, all sequences of up to `depth`
/// projection/extension operations confined to that constraint and its two
/// unary tables, looking for one that raises the lower bound. This
/// under-approximates irreducibility over arbitrary pair transformations: a
/// hit disproves irreducibility, an empty report is evidence for it.
inline IrreducibilityReport check_irreducibility(const Vcsp& input, int depth,
                                                 std::uint64_t state_cap = 1000000) {
    detail::require_binary(input, "irreducibility search");
    Vcsp base = materialize(input);
    IrreducibilityReport report;
    Valuation before = f_min(base);

    for (const auto& c : base.constraints()) {
        ++report.pairs;
        VariableId i = c.scope()[0];
        VariableId j = c.scope()[1];

        // the rest of the problem is untouched by pair transformations
        Valuation rest = base.structure().bot();
        for (VariableId var = 0; var < base.var_count(); ++var) {
            if (var == i || var == j) continue;
            Valuation m = base.unary_cost(var, 0);
            for (ValueIndex a = 1; a < base.domain_size(var); ++a) {
                m = softac::min(m, base.unary_cost(var, a));
            }
            rest = combine(rest, m);
        }
        for (const auto& other : base.constraints()) {
            if (other.scope() == c.scope()) continue;
            rest = combine(rest, other.min_cost());
        }

        Vcsp pair = subproblem(base, {i, j});
        Scope local{0, 1};
        struct Op {
            bool is_proj;
            VariableId var;
            ValueIndex value;
            std::string name;
        };
        std::vector<Op> ops;
        for (VariableId local_var : {0, 1}) {
            std::string var_name = pair.variable(local_var).name;
            for (ValueIndex a = 0; a < pair.domain_size(local_var); ++a) {
                std::string val = pair.variable(local_var).domain[static_cast<std::size_t>(a)];
                ops.push_back({true, local_var, a, "proj(" + var_name + "," + val + ")"});
            }
        }
        for (VariableId local_var : {0, 1}) {
            std::string var_name = pair.variable(local_var).name;
            for (ValueIndex a = 0; a < pair.domain_size(local_var); ++a) {
                std::string val = pair.variable(local_var).domain[static_cast<std::size_t>(a)];
                ops.push_back({false, local_var, a, "ext(" + var_name + "," + val + ")"});
            }
        }

        std::set<std::string> visited{detail::state_key(pair)};
        struct Node {
            Vcsp state;
            std::vector<std::string> path;
        };
        std::deque<std::pair<Node, int>> frontier;
        frontier.push_back({Node{pair, {}}, 0});
        bool found = false;
        while (!frontier.empty() && !found) {
            auto [node, used] = frontier.front();
            frontier.pop_front();
            ++report.states;
            if (report.states > state_cap) {
                throw SizeError("irreducibility search exceeded its state cap");
            }
            if (used == depth) continue;
            for (const Op& op : ops) {
                Vcsp next = node.state;
                if (op.is_proj) {
                    proj_in_place(next, local, op.var, op.value);
                } else {
                    ext_in_place(next, op.var, op.value, local);
                }
                std::string key = detail::state_key(next);
                if (!visited.insert(key).second) continue;
                std::vector<std::string> path = node.path;
                path.push_back(op.name);
                Valuation total = combine(rest, f_min(next));
                if (total > before) {
                    report.improving.push_back(
                        ImprovingSequence{c.scope(), path, before, total});
                    found = true;
                    break;
                }
                frontier.push_back({Node{std::move(next), std::move(path)}, used + 1});
            }
        }
    }
    return report;
}

} // namespace softac
