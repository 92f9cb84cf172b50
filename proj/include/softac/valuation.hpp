#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "softac/errors.hpp"

namespace softac {

class ValuationStructure;

/// A single cost value, owned by exactly one valuation structure.
///
/// Valuations are opaque codes interpreted by their structure. Every
/// structure encodes its carrier so that the code order coincides with the
/// structure's total order, which keeps comparisons branch-free; all other
/// algebra goes through the structure.
class Valuation {
public:
    Valuation(const ValuationStructure* structure, std::uint64_t code)
        : structure_(structure), code_(code) {}

    const ValuationStructure& structure() const { return *structure_; }
    std::uint64_t code() const { return code_; }

    bool is_bot() const;
    bool is_top() const;

    std::string to_string() const;

    friend bool operator==(const Valuation& a, const Valuation& b) {
        check_same_structure(a, b);
        return a.code_ == b.code_;
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        check_same_structure(a, b);
        return a.code_ < b.code_;
    }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

private:
    static void check_same_structure(const Valuation& a, const Valuation& b);

    const ValuationStructure* structure_;
    std::uint64_t code_;
};

/// An ordered commutative monoid with a partial maximal-difference operator:
/// carrier E totally ordered with minimum ⊥ and maximum ⊤, a commutative
/// associative monotonic combination with identity ⊥ and absorbing ⊤, and,
/// for fair structures, difference(b, a) = the largest g with g ⊕ a = b.
///
/// Structures are immutable after construction and freely shareable across
/// threads; every operation is a pure function of its arguments.
class ValuationStructure {
public:
    virtual ~ValuationStructure() = default;

    /// Instance-file name of this structure family, e.g. "bounded_sum".
    virtual std::string kind() const = 0;

    /// Constructor parameters in declaration order, e.g. {{"k", 5}}.
    virtual std::vector<std::pair<std::string, std::uint64_t>> parameters() const { return {}; }

    /// Stable identity, e.g. "weighted" or "bounded_sum(5)". Two structure
    /// objects with equal keys are interchangeable.
    std::string key() const {
        auto params = parameters();
        if (params.empty()) return kind();
        std::string out = kind() + "(";
        for (std::size_t k = 0; k < params.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(params[k].second);
        }
        return out + ")";
    }

    virtual std::uint64_t bot_code() const = 0;
    virtual std::uint64_t top_code() const = 0;

    virtual std::uint64_t combine_codes(std::uint64_t a, std::uint64_t b) const = 0;

    /// Maximal difference of b and a. Requires a <= b in code order.
    /// Throws UnfairStructureError when no difference exists.
    virtual std::uint64_t difference_codes(std::uint64_t b, std::uint64_t a) const = 0;

    /// Number of carrier elements, or nullopt for unbounded carriers.
    /// Finite carriers use exactly the codes 0 .. size-1.
    virtual std::optional<std::uint64_t> carrier_size() const { return std::nullopt; }

    /// Whether every pair a <= b admits a maximal difference. Declared by the
    /// structure and validated by the axiom checkers.
    virtual bool fair() const { return true; }

    /// Whether combination preserves strict order against non-top elements.
    /// Declared by the structure and validated by the axiom checkers.
    virtual bool strictly_monotonic() const { return false; }

    /// Draw a carrier element for sampled verification. `raw` is a uniform
    /// 64-bit word from the caller's generator.
    virtual std::uint64_t sample_code(std::uint64_t raw) const = 0;

    virtual std::string code_to_string(std::uint64_t code) const = 0;

    /// Parse a cost literal as found in instance files. Integer text is
    /// accepted where the structure has a natural integer reading.
    virtual std::uint64_t code_from_string(const std::string& text) const = 0;

    Valuation bot() const { return Valuation(this, bot_code()); }
    Valuation top() const { return Valuation(this, top_code()); }
    Valuation make(std::uint64_t code) const { return Valuation(this, code); }

    bool same_as(const ValuationStructure& other) const {
        return this == &other || key() == other.key();
    }

    /// All carrier elements in increasing order. Requires a finite carrier.
    std::vector<Valuation> enumerate() const {
        auto n = carrier_size();
        if (!n) {
            throw CapabilityError("structure '" + key() + "' has an unbounded carrier");
        }
        std::vector<Valuation> out;
        out.reserve(static_cast<std::size_t>(*n));
        for (std::uint64_t c = 0; c < *n; ++c) {
            out.push_back(make(c));
        }
        return out;
    }
};

inline void Valuation::check_same_structure(const Valuation& a, const Valuation& b) {
    if (!a.structure_->same_as(*b.structure_)) {
        throw StructureMismatchError("valuations from '" + a.structure_->key() + "' and '" +
                                     b.structure_->key() + "' cannot interact");
    }
}

inline bool Valuation::is_bot() const { return code_ == structure_->bot_code(); }
inline bool Valuation::is_top() const { return code_ == structure_->top_code(); }
inline std::string Valuation::to_string() const { return structure_->code_to_string(code_); }

/// a ⊕ b.
inline Valuation combine(const Valuation& a, const Valuation& b) {
    if (!a.structure().same_as(b.structure())) {
        throw StructureMismatchError("combine: operands from '" + a.structure().key() +
                                     "' and '" + b.structure().key() + "'");
    }
    return Valuation(&a.structure(), a.structure().combine_codes(a.code(), b.code()));
}

/// b ⊖ a, the maximal g with g ⊕ a = b. Requires a <= b.
inline Valuation difference(const Valuation& b, const Valuation& a) {
    if (!b.structure().same_as(a.structure())) {
        throw StructureMismatchError("difference: operands from '" + b.structure().key() +
                                     "' and '" + a.structure().key() + "'");
    }
    if (b < a) {
        throw OrderError("difference: " + a.to_string() + " > " + b.to_string());
    }
    return Valuation(&b.structure(), b.structure().difference_codes(b.code(), a.code()));
}

/// Whether a ⊕ a = a.
inline bool is_absorbing(const Valuation& a) { return combine(a, a) == a; }

/// a ⊖ a: the maximal absorbing valuation below or equal to a.
/// Only meaningful in fair structures.
inline Valuation max_absorbing_leq(const Valuation& a) {
    if (!a.structure().fair()) {
        throw UnfairStructureError("max_absorbing_leq requires a fair structure, got '" +
                                   a.structure().key() + "'");
    }
    return difference(a, a);
}

inline Valuation min(const Valuation& a, const Valuation& b) { return a <= b ? a : b; }
inline Valuation max(const Valuation& a, const Valuation& b) { return a >= b ? a : b; }

} // namespace softac
