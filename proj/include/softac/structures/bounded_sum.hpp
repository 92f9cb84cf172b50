#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "softac/valuation.hpp"
#include "softac/structures/weighted.hpp"

namespace softac {

/// Penalties 0..k under capped addition: a ⊕ b = min(k, a+b). The cap k is
/// absorbing and k ⊖ a = k; below the cap the difference is plain subtraction.
class BoundedSumStructure final : public ValuationStructure {
public:
    explicit BoundedSumStructure(std::uint64_t k) : k_(k) {
        if (k == 0) throw InputError("bounded_sum: k must be >= 1");
    }

    std::uint64_t cap() const { return k_; }

    std::string kind() const override { return "bounded_sum"; }

    std::vector<std::pair<std::string, std::uint64_t>> parameters() const override {
        return {{"k", k_}};
    }

    std::uint64_t bot_code() const override { return 0; }
    std::uint64_t top_code() const override { return k_; }

    std::uint64_t combine_codes(std::uint64_t a, std::uint64_t b) const override {
        return std::min(k_, a + b);
    }

    std::uint64_t difference_codes(std::uint64_t b, std::uint64_t a) const override {
        if (b == k_) return k_;
        return b - a;
    }

    std::optional<std::uint64_t> carrier_size() const override { return k_ + 1; }

    std::uint64_t sample_code(std::uint64_t raw) const override { return raw % (k_ + 1); }

    std::string code_to_string(std::uint64_t code) const override { return std::to_string(code); }

    std::uint64_t code_from_string(const std::string& text) const override {
        if (text == "top") return k_;
        if (text == "bot") return 0;
        std::uint64_t v = WeightedStructure::parse_uint(text);
        if (v > k_) throw InputError("bounded_sum(" + std::to_string(k_) + "): cost " + text + " above cap");
        return v;
    }

private:
    std::uint64_t k_;
};

} // namespace softac
