#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "softac/valuation.hpp"

namespace softac {

struct AxiomCheck {
    std::string axiom;
    bool passed = true;
    std::vector<std::string> witness;  // offending valuations, rendered
    std::uint64_t cases = 0;
};

/// Outcome of verifying one valuation structure: per-axiom results in a fixed
/// order plus the operator classification.
struct AxiomReport {
    std::string structure_key;
    std::string mode;
    std::vector<AxiomCheck> checks;
    bool idempotent = false;
    bool strictly_monotonic = false;

    bool all_passed() const {
        for (const auto& c : checks) {
            if (!c.passed) return false;
        }
        return true;
    }

    const AxiomCheck& check(const std::string& axiom) const {
        for (const auto& c : checks) {
            if (c.axiom == axiom) return c;
        }
        throw InputError("no axiom check named '" + axiom + "'");
    }
};

namespace detail {

/// Exhaustively verifies every monoid axiom, fairness, and the operator
/// classification over a finite carrier.
inline AxiomReport verify_exhaustive(const ValuationStructure& s) {
    AxiomReport report;
    report.structure_key = s.key();
    report.mode = "exhaustive";
    const std::vector<Valuation> all = s.enumerate();
    const Valuation bot = s.bot();
    const Valuation top = s.top();

    AxiomCheck commutativity{"commutativity"};
    for (const auto& a : all) {
        for (const auto& b : all) {
            ++commutativity.cases;
            if (combine(a, b) != combine(b, a)) {
                commutativity.passed = false;
                commutativity.witness = {a.to_string(), b.to_string()};
                goto commutativity_done;
            }
        }
    }
commutativity_done:
    report.checks.push_back(commutativity);

    AxiomCheck associativity{"associativity"};
    for (const auto& a : all) {
        for (const auto& b : all) {
            for (const auto& c : all) {
                ++associativity.cases;
                if (combine(combine(a, b), c) != combine(a, combine(b, c))) {
                    associativity.passed = false;
                    associativity.witness = {a.to_string(), b.to_string(), c.to_string()};
                    goto associativity_done;
                }
            }
        }
    }
associativity_done:
    report.checks.push_back(associativity);

    AxiomCheck identity{"identity"};
    for (const auto& a : all) {
        ++identity.cases;
        if (combine(a, bot) != a) {
            identity.passed = false;
            identity.witness = {a.to_string()};
            break;
        }
    }
    report.checks.push_back(identity);

    AxiomCheck monotonicity{"monotonicity"};
    for (const auto& a : all) {
        for (const auto& b : all) {
            if (!(a >= b)) continue;
            for (const auto& c : all) {
                ++monotonicity.cases;
                if (!(combine(a, c) >= combine(b, c))) {
                    monotonicity.passed = false;
                    monotonicity.witness = {a.to_string(), b.to_string(), c.to_string()};
                    goto monotonicity_done;
                }
            }
        }
    }
monotonicity_done:
    report.checks.push_back(monotonicity);

    AxiomCheck absorbing{"absorbing-top"};
    for (const auto& a : all) {
        ++absorbing.cases;
        if (combine(a, top) != top) {
            absorbing.passed = false;
            absorbing.witness = {a.to_string()};
            break;
        }
    }
    report.checks.push_back(absorbing);

    // Fairness: every pair a <= b has a maximal difference, and the
    // structure's own difference operator returns it. The inner subtrahend
    // runs downward from b, so a failure is reported against the largest
    // subtrahend that breaks.
    AxiomCheck fairness{"fairness"};
    for (const auto& b : all) {
        if (!fairness.passed) break;
        for (auto it = std::find(all.begin(), all.end(), b);; --it) {
            const Valuation& a = *it;
            ++fairness.cases;
            bool found = false;
            Valuation best = bot;
            for (const auto& g : all) {
                if (combine(g, a) == b) {
                    best = g;  // carrier is enumerated in increasing order
                    found = true;
                }
            }
            if (!found) {
                fairness.passed = false;
                fairness.witness = {b.to_string(), a.to_string()};
                break;
            }
            bool ok = false;
            try {
                ok = difference(b, a) == best;
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                fairness.passed = false;
                fairness.witness = {b.to_string(), a.to_string()};
                break;
            }
            if (it == all.begin()) break;
        }
    }
    report.checks.push_back(fairness);

    report.idempotent = true;
    for (const auto& a : all) {
        if (combine(a, a) != a) {
            report.idempotent = false;
            break;
        }
    }
    report.strictly_monotonic = true;
    for (const auto& a : all) {
        for (const auto& b : all) {
            if (!(a > b)) continue;
            for (const auto& c : all) {
                if (c == top) continue;
                if (!(combine(a, c) > combine(b, c))) {
                    report.strictly_monotonic = false;
                    goto classification_done;
                }
            }
        }
    }
classification_done:
    return report;
}

/// Spot-checks the axioms on seeded samples; the only option for structures
/// with unbounded carriers. Maximality of differences is probed with a few
/// larger candidates rather than proven.
inline AxiomReport verify_sampled(const ValuationStructure& s, std::uint64_t count,
                                  std::uint64_t seed) {
    AxiomReport report;
    report.structure_key = s.key();
    report.mode = "sampled(" + std::to_string(count) + "," + std::to_string(seed) + ")";
    std::mt19937_64 rng(seed);
    auto draw = [&] { return s.make(s.sample_code(rng())); };
    const Valuation bot = s.bot();
    const Valuation top = s.top();

    AxiomCheck commutativity{"commutativity"};
    AxiomCheck associativity{"associativity"};
    AxiomCheck identity{"identity"};
    AxiomCheck monotonicity{"monotonicity"};
    AxiomCheck absorbing{"absorbing-top"};
    AxiomCheck fairness{"fairness"};
    report.idempotent = true;
    report.strictly_monotonic = true;

    for (std::uint64_t k = 0; k < count; ++k) {
        Valuation a = draw();
        Valuation b = draw();
        Valuation c = draw();
        if (commutativity.passed) {
            ++commutativity.cases;
            if (combine(a, b) != combine(b, a)) {
                commutativity.passed = false;
                commutativity.witness = {a.to_string(), b.to_string()};
            }
        }
        if (associativity.passed) {
            ++associativity.cases;
            if (combine(combine(a, b), c) != combine(a, combine(b, c))) {
                associativity.passed = false;
                associativity.witness = {a.to_string(), b.to_string(), c.to_string()};
            }
        }
        if (identity.passed) {
            ++identity.cases;
            if (combine(a, bot) != a) {
                identity.passed = false;
                identity.witness = {a.to_string()};
            }
        }
        if (monotonicity.passed) {
            ++monotonicity.cases;
            Valuation hi = softac::max(a, b);
            Valuation lo = softac::min(a, b);
            if (!(combine(hi, c) >= combine(lo, c))) {
                monotonicity.passed = false;
                monotonicity.witness = {hi.to_string(), lo.to_string(), c.to_string()};
            }
        }
        if (absorbing.passed) {
            ++absorbing.cases;
            if (combine(a, top) != top) {
                absorbing.passed = false;
                absorbing.witness = {a.to_string()};
            }
        }
        if (fairness.passed) {
            ++fairness.cases;
            Valuation hi = softac::max(a, b);
            Valuation lo = softac::min(a, b);
            bool ok = true;
            try {
                Valuation diff = difference(hi, lo);
                ok = combine(diff, lo) == hi && diff <= hi;
                for (int probe = 0; ok && probe < 4; ++probe) {
                    Valuation g = draw();
                    if (g > diff && combine(g, lo) == hi) ok = false;
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                fairness.passed = false;
                fairness.witness = {hi.to_string(), lo.to_string()};
            }
        }
        if (report.idempotent && combine(a, a) != a) report.idempotent = false;
        if (report.strictly_monotonic) {
            Valuation hi = softac::max(a, b);
            Valuation lo = softac::min(a, b);
            if (hi > lo && c != top && !(combine(hi, c) > combine(lo, c))) {
                report.strictly_monotonic = false;
            }
        }
    }
    report.checks = {commutativity, associativity, identity, monotonicity, absorbing, fairness};
    return report;
}

} // namespace detail

inline AxiomReport verify_structure_exhaustive(const ValuationStructure& s) {
    if (!s.carrier_size()) {
        throw CapabilityError("exhaustive verification needs a finite carrier; '" + s.key() +
                              "' has none");
    }
    return detail::verify_exhaustive(s);
}

inline AxiomReport verify_structure_sampled(const ValuationStructure& s, std::uint64_t count,
                                            std::uint64_t seed) {
    return detail::verify_sampled(s, count, seed);
}

} // namespace softac
