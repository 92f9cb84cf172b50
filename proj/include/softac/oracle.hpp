#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softac/model.hpp"

// Brute-force reference implementations. Everything here recomputes results
// from first principles with plain enumeration and deliberately avoids the
// evaluation helpers used by the enforcement code, so agreement between the
// two sides is evidence rather than tautology.

namespace softac::oracle {

struct OptimumResult {
    Valuation valuation;
    Assignment assignment;
    std::uint64_t enumerated = 0;
};

namespace detail {

/// Cost of one complete assignment, recomputed constraint by constraint.
inline Valuation assignment_cost(const Vcsp& v, const std::vector<ValueIndex>& values) {
    Valuation total = v.structure().bot();
    for (VariableId var = 0; var < v.var_count(); ++var) {
        total = combine(total, v.unary_cost(var, values[static_cast<std::size_t>(var)]));
    }
    for (const auto& c : v.constraints()) {
        Tuple t;
        t.reserve(c.arity());
        for (VariableId var : c.scope()) t.push_back(values[static_cast<std::size_t>(var)]);
        total = combine(total, c.cost(t));
    }
    return total;
}

inline bool advance(const Vcsp& v, std::vector<ValueIndex>& values) {
    for (int var = v.var_count() - 1; var >= 0; --var) {
        auto k = static_cast<std::size_t>(var);
        if (++values[k] < v.domain_size(var)) return true;
        values[k] = 0;
    }
    return false;
}

} // namespace detail

/// Exhaustive minimum over all complete assignments; the first minimal
/// assignment in row-major order is returned.
inline OptimumResult brute_optimum(const Vcsp& v, std::uint64_t cap = 1000000) {
    if (complete_assignment_count(v, cap) > cap) {
        throw SizeError("brute_optimum: assignment count exceeds cap");
    }
    std::vector<ValueIndex> values(static_cast<std::size_t>(v.var_count()), 0);
    OptimumResult result{detail::assignment_cost(v, values), {}, 1};
    std::vector<ValueIndex> best_values = values;
    while (detail::advance(v, values)) {
        ++result.enumerated;
        Valuation cost = detail::assignment_cost(v, values);
        if (cost < result.valuation) {
            result.valuation = cost;
            best_values = values;
        }
    }
    for (VariableId var = 0; var < v.var_count(); ++var) {
        result.assignment[var] = best_values[static_cast<std::size_t>(var)];
    }
    return result;
}

/// Same contract as the model's equivalence check, independent code path.
inline bool brute_equivalent(const Vcsp& a, const Vcsp& b, std::uint64_t cap = 1000000) {
    if (!a.structure().same_as(b.structure()) || !(a.variables() == b.variables())) {
        throw InputError("brute_equivalent: problems differ in signature");
    }
    if (complete_assignment_count(a, cap) > cap) {
        throw SizeError("brute_equivalent: assignment count exceeds cap");
    }
    std::vector<ValueIndex> values(static_cast<std::size_t>(a.var_count()), 0);
    do {
        if (detail::assignment_cost(a, values) != detail::assignment_cost(b, values)) {
            return false;
        }
    } while (detail::advance(a, values));
    return true;
}

struct FairnessPair {
    std::string larger;   // b in b ⊖ a
    std::string smaller;  // a
    bool difference_exists = false;
    bool operator_agrees = false;
};

struct FairnessReport {
    std::string structure_key;
    bool fair = true;
    std::vector<FairnessPair> failures;  // first failure per kind is enough for tests
    std::uint64_t pairs_checked = 0;
};

/// For every ordered pair a <= b of a finite carrier, computes the full
/// difference set {g : g ⊕ a = b} and confronts the structure's own
/// difference operator with its maximum. The subtrahend loop runs downward
/// from b so the most absorbing-looking offenders are reported first.
inline FairnessReport brute_fairness(const ValuationStructure& s) {
    auto size = s.carrier_size();
    if (!size) {
        throw CapabilityError("brute_fairness needs a finite carrier");
    }
    FairnessReport report;
    report.structure_key = s.key();
    for (std::uint64_t b = 0; b < *size; ++b) {
        Valuation vb = s.make(b);
        for (std::uint64_t down = 0; down <= b; ++down) {
            std::uint64_t a = b - down;
            Valuation va = s.make(a);
            ++report.pairs_checked;
            bool exists = false;
            Valuation best = s.bot();
            for (std::uint64_t g = 0; g < *size; ++g) {
                Valuation vg = s.make(g);
                if (combine(vg, va) == vb) {
                    best = vg;
                    exists = true;
                }
            }
            bool agrees = false;
            if (exists) {
                try {
                    agrees = difference(vb, va) == best;
                } catch (const Error&) {
                    agrees = false;
                }
            }
            if (!exists || !agrees) {
                report.fair = false;
                report.failures.push_back(
                    FairnessPair{vb.to_string(), va.to_string(), exists, agrees});
                return report;  // first witness is what callers pin down
            }
        }
    }
    return report;
}

struct AbsorbingScan {
    std::vector<Valuation> elements;
    std::uint64_t count() const { return elements.size(); }
};

/// All carrier elements with a ⊕ a = a.
inline AbsorbingScan absorbing_count(const ValuationStructure& s) {
    auto size = s.carrier_size();
    if (!size) {
        throw CapabilityError("absorbing_count needs a finite carrier");
    }
    AbsorbingScan scan;
    for (std::uint64_t code = 0; code < *size; ++code) {
        Valuation a = s.make(code);
        if (combine(a, a) == a) scan.elements.push_back(a);
    }
    return scan;
}

} // namespace softac::oracle
