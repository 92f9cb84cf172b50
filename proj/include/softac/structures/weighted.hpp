#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "softac/valuation.hpp"

namespace softac {

/// Nonnegative integer weights with a distinguished infinity: combination is
/// addition, infinity absorbs, difference is subtraction with inf ⊖ a = inf.
/// Strictly monotonic; the model for weighted Max-CSP costs.
///
/// Codes are the weights themselves; the all-ones code is reserved for
/// infinity. Addition is checked and raises OverflowError rather than wrap.
class WeightedStructure final : public ValuationStructure {
public:
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

    std::string kind() const override { return "weighted"; }

    std::uint64_t bot_code() const override { return 0; }
    std::uint64_t top_code() const override { return kInf; }

    bool strictly_monotonic() const override { return true; }

    std::uint64_t combine_codes(std::uint64_t a, std::uint64_t b) const override {
        if (a == kInf || b == kInf) return kInf;
        if (a > kInf - 1 - b) {
            throw OverflowError("weighted: " + std::to_string(a) + " + " + std::to_string(b) +
                                " exceeds the representable range");
        }
        return a + b;
    }

    std::uint64_t difference_codes(std::uint64_t b, std::uint64_t a) const override {
        if (b == kInf) return kInf;  // also inf ⊖ inf: every weight combines below inf
        return b - a;
    }

    std::uint64_t sample_code(std::uint64_t raw) const override {
        // one draw in eight is infinity, the rest small weights
        if ((raw & 7u) == 7u) return kInf;
        return (raw >> 3) % 1000;
    }

    std::string code_to_string(std::uint64_t code) const override {
        return code == kInf ? "inf" : std::to_string(code);
    }

    std::uint64_t code_from_string(const std::string& text) const override {
        if (text == "inf" || text == "top") return kInf;
        if (text == "bot") return 0;
        return parse_uint(text);
    }

    static std::uint64_t parse_uint(const std::string& text) {
        if (text.empty()) throw InputError("empty cost literal");
        std::uint64_t v = 0;
        for (char ch : text) {
            if (ch < '0' || ch > '9') {
                throw InputError("bad cost literal '" + text + "'");
            }
            std::uint64_t digit = static_cast<std::uint64_t>(ch - '0');
            if (v > (kInf - 1 - digit) / 10) {
                throw InputError("cost literal '" + text + "' out of range");
            }
            v = v * 10 + digit;
        }
        return v;
    }
};

} // namespace softac
