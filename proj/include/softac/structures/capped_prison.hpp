#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "softac/valuation.hpp"
#include "softac/structures/weighted.hpp"

namespace softac {

/// Prison sentences: a term of 0..cap years, a life sentence, or a death
/// sentence. Two life sentences escalate to death; terms accumulate and
/// saturate at the cap (the unbounded variant admits no maximal difference
/// of life and life, so the carrier is truncated to keep the structure fair).
///
/// Codes: 0..cap are year terms, cap+1 is life, cap+2 is death.
class CappedPrisonStructure final : public ValuationStructure {
public:
    static constexpr std::uint64_t kDefaultCap = 150;

    explicit CappedPrisonStructure(std::uint64_t cap = kDefaultCap) : cap_(cap) {
        if (cap == 0) throw InputError("capped_prison: cap must be >= 1");
    }

    std::uint64_t cap() const { return cap_; }
    std::uint64_t life_code() const { return cap_ + 1; }

    std::string kind() const override { return "capped_prison"; }

    std::vector<std::pair<std::string, std::uint64_t>> parameters() const override {
        return {{"cap", cap_}};
    }

    std::uint64_t bot_code() const override { return 0; }
    std::uint64_t top_code() const override { return cap_ + 2; }

    std::uint64_t combine_codes(std::uint64_t a, std::uint64_t b) const override {
        if (a == top_code() || b == top_code()) return top_code();
        if (a == life_code() && b == life_code()) return top_code();
        if (a == life_code() || b == life_code()) return life_code();
        return std::min(cap_, a + b);
    }

    std::uint64_t difference_codes(std::uint64_t b, std::uint64_t a) const override {
        if (b == top_code()) return top_code();
        if (b == life_code()) {
            // life ⊖ life: every term leaves life unchanged, so the cap is maximal
            return a == life_code() ? cap_ : life_code();
        }
        if (b == cap_) return cap_;
        return b - a;
    }

    std::optional<std::uint64_t> carrier_size() const override { return cap_ + 3; }

    std::uint64_t sample_code(std::uint64_t raw) const override { return raw % (cap_ + 3); }

    std::string code_to_string(std::uint64_t code) const override {
        if (code == top_code()) return "top";
        if (code == life_code()) return "inf";
        return std::to_string(code);
    }

    std::uint64_t code_from_string(const std::string& text) const override {
        if (text == "top") return top_code();
        if (text == "inf") return life_code();
        if (text == "bot") return 0;
        std::uint64_t v = WeightedStructure::parse_uint(text);
        if (v > cap_) throw InputError("capped_prison(" + std::to_string(cap_) + "): term " + text + " above cap");
        return v;
    }

private:
    std::uint64_t cap_;
};

} // namespace softac
