#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "softac/valuation.hpp"
#include "softac/structures/weighted.hpp"

namespace softac {

/// A finite chain of levels 0..levels-1 combined by max. Idempotent, so every
/// element is absorbing and b ⊖ a = b. Two levels give classical CSP;
/// more levels give possibilistic problems.
class OrderedMaxStructure final : public ValuationStructure {
public:
    explicit OrderedMaxStructure(std::uint64_t levels) : levels_(levels) {
        if (levels < 2) throw InputError("ordered_max: need at least 2 levels");
    }

    std::uint64_t levels() const { return levels_; }

    std::string kind() const override { return "ordered_max"; }

    std::vector<std::pair<std::string, std::uint64_t>> parameters() const override {
        return {{"levels", levels_}};
    }

    std::uint64_t bot_code() const override { return 0; }
    std::uint64_t top_code() const override { return levels_ - 1; }

    // the two-level chain is the one idempotent case that is also strictly
    // monotonic; larger chains are not
    bool strictly_monotonic() const override { return levels_ == 2; }

    std::uint64_t combine_codes(std::uint64_t a, std::uint64_t b) const override {
        return std::max(a, b);
    }

    std::uint64_t difference_codes(std::uint64_t b, std::uint64_t /*a*/) const override {
        return b;
    }

    std::optional<std::uint64_t> carrier_size() const override { return levels_; }

    std::uint64_t sample_code(std::uint64_t raw) const override { return raw % levels_; }

    std::string code_to_string(std::uint64_t code) const override { return std::to_string(code); }

    std::uint64_t code_from_string(const std::string& text) const override {
        if (text == "top") return levels_ - 1;
        if (text == "bot") return 0;
        std::uint64_t v = WeightedStructure::parse_uint(text);
        if (v >= levels_) {
            throw InputError("ordered_max(" + std::to_string(levels_) + "): level " + text + " out of range");
        }
        return v;
    }

private:
    std::uint64_t levels_;
};

} // namespace softac
