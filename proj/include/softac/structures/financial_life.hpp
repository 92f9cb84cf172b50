#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "softac/valuation.hpp"
#include "softac/structures/driving_penalty.hpp"
#include "softac/structures/weighted.hpp"

namespace softac {

/// Joint financial loss F and loss of life H, ordered lexicographically with
/// life dominating. Financial losses add and saturate at fmax (bankruptcy),
/// which makes (fmax,0) absorbing; life losses add, and totals beyond hmax
/// escalate to top. Deliberately NOT fair: (0,1) ⊖ (fmax,0) has no solution,
/// because no combination can undo a saturated financial loss. Shipped as a
/// negative test input for the axiom checkers.
///
/// Codes: h*(fmax+1)+f for the pairs, then one extra code for top.
class FinancialLifeStructure final : public ValuationStructure {
public:
    FinancialLifeStructure(std::uint64_t fmax, std::uint64_t hmax) : fmax_(fmax), hmax_(hmax) {
        if (fmax == 0 || hmax == 0) throw InputError("financial_life: fmax and hmax must be >= 1");
    }

    std::uint64_t fmax() const { return fmax_; }
    std::uint64_t hmax() const { return hmax_; }

    std::string kind() const override { return "financial_life"; }

    std::vector<std::pair<std::string, std::uint64_t>> parameters() const override {
        return {{"fmax", fmax_}, {"hmax", hmax_}};
    }

    std::uint64_t bot_code() const override { return 0; }
    std::uint64_t top_code() const override { return (hmax_ + 1) * (fmax_ + 1); }

    std::uint64_t combine_codes(std::uint64_t a, std::uint64_t b) const override {
        if (a == top_code() || b == top_code()) return top_code();
        std::uint64_t h = h_of(a) + h_of(b);
        if (h > hmax_) return top_code();
        std::uint64_t f = std::min(f_of(a) + f_of(b), fmax_);
        return h * (fmax_ + 1) + f;
    }

    std::uint64_t difference_codes(std::uint64_t b, std::uint64_t a) const override {
        // the structure is finite, so search the carrier directly
        std::uint64_t best = 0;
        bool found = false;
        for (std::uint64_t g = 0; g <= top_code(); ++g) {
            if (combine_codes(g, a) == b) {
                best = g;
                found = true;
            }
        }
        if (!found) {
            throw UnfairStructureError("financial_life: no difference of " + code_to_string(b) +
                                       " and " + code_to_string(a));
        }
        return best;
    }

    std::optional<std::uint64_t> carrier_size() const override { return top_code() + 1; }

    bool fair() const override { return false; }

    std::uint64_t sample_code(std::uint64_t raw) const override { return raw % (top_code() + 1); }

    std::string code_to_string(std::uint64_t code) const override {
        if (code == top_code()) return "top";
        return "(" + std::to_string(f_of(code)) + "," + std::to_string(h_of(code)) + ")";
    }

    std::uint64_t code_from_string(const std::string& text) const override {
        if (text == "top") return top_code();
        if (text == "bot") return 0;
        auto [first, second] = DrivingPenaltyStructure::split_pair(text);
        std::uint64_t f = WeightedStructure::parse_uint(first);
        std::uint64_t h = WeightedStructure::parse_uint(second);
        if (f > fmax_ || h > hmax_) throw InputError("financial_life: '" + text + "' out of range");
        return h * (fmax_ + 1) + f;
    }

private:
    std::uint64_t f_of(std::uint64_t code) const { return code % (fmax_ + 1); }
    std::uint64_t h_of(std::uint64_t code) const { return code / (fmax_ + 1); }

    std::uint64_t fmax_;
    std::uint64_t hmax_;
};

} // namespace softac
