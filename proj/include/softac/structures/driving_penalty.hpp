#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "softac/valuation.hpp"
#include "softac/structures/weighted.hpp"

namespace softac {

/// Sentences for driving offences: up to 12 penalty points (p,0), or a
/// licence suspension of y years (0,y) with 1 <= y <= ymax, or a permanent
/// suspension (0,inf). Points add and saturate at 12, which makes (12,0)
/// absorbing; suspensions add in years and any suspension outweighs any
/// number of points. Year totals beyond ymax escalate to (0,inf) so the
/// carrier stays finite.
///
/// Code layout: 0..12 are the point sentences, 13..12+ymax the finite
/// suspensions, 13+ymax the permanent one. The layout is increasing in the
/// sentence order.
class DrivingPenaltyStructure final : public ValuationStructure {
public:
    static constexpr std::uint64_t kDefaultYmax = 10;
    static constexpr std::uint64_t kMaxPoints = 12;

    explicit DrivingPenaltyStructure(std::uint64_t ymax = kDefaultYmax) : ymax_(ymax) {
        if (ymax == 0) throw InputError("driving_penalty: ymax must be >= 1");
    }

    std::uint64_t ymax() const { return ymax_; }

    std::string kind() const override { return "driving_penalty"; }

    std::vector<std::pair<std::string, std::uint64_t>> parameters() const override {
        return {{"ymax", ymax_}};
    }

    std::uint64_t bot_code() const override { return 0; }
    std::uint64_t top_code() const override { return kMaxPoints + ymax_ + 1; }

    std::uint64_t combine_codes(std::uint64_t a, std::uint64_t b) const override {
        if (a == top_code() || b == top_code()) return top_code();
        std::uint64_t years = years_of(a) + years_of(b);
        if (years == 0) {
            return std::min(points_of(a) + points_of(b), kMaxPoints);
        }
        if (years > ymax_) return top_code();
        return kMaxPoints + years;
    }

    std::uint64_t difference_codes(std::uint64_t b, std::uint64_t a) const override {
        if (b == top_code()) return top_code();
        if (b <= kMaxPoints) {
            // both are point sentences; 12 is absorbing
            if (b == kMaxPoints) return kMaxPoints;
            return b - a;
        }
        // b is a finite suspension (0,y)
        if (a <= kMaxPoints) return b;       // points add no years
        if (a == b) return kMaxPoints;       // any point sentence restores b; (12,0) is largest
        return kMaxPoints + (years_of(b) - years_of(a));
    }

    std::optional<std::uint64_t> carrier_size() const override {
        return kMaxPoints + ymax_ + 2;
    }

    std::uint64_t sample_code(std::uint64_t raw) const override {
        return raw % (kMaxPoints + ymax_ + 2);
    }

    std::string code_to_string(std::uint64_t code) const override {
        if (code == top_code()) return "(0,inf)";
        if (code <= kMaxPoints) return "(" + std::to_string(code) + ",0)";
        return "(0," + std::to_string(code - kMaxPoints) + ")";
    }

    std::uint64_t code_from_string(const std::string& text) const override {
        if (text == "top" || text == "(0,inf)" || text == "inf") return top_code();
        if (text == "bot") return 0;
        if (!text.empty() && text.front() == '(') {
            auto [first, second] = split_pair(text);
            if (first == "0" && second == "inf") return top_code();
            std::uint64_t p = WeightedStructure::parse_uint(first);
            std::uint64_t y = WeightedStructure::parse_uint(second);
            if (y == 0) {
                if (p > kMaxPoints) throw InputError("driving_penalty: more than 12 points in '" + text + "'");
                return p;
            }
            if (p != 0) throw InputError("driving_penalty: mixed sentence '" + text + "'");
            if (y > ymax_) throw InputError("driving_penalty: suspension in '" + text + "' above ymax");
            return kMaxPoints + y;
        }
        std::uint64_t p = WeightedStructure::parse_uint(text);
        if (p > kMaxPoints) throw InputError("driving_penalty: more than 12 points in '" + text + "'");
        return p;
    }

    /// Splits "(x,y)" into its two fields.
    static std::pair<std::string, std::string> split_pair(const std::string& text) {
        if (text.size() < 5 || text.front() != '(' || text.back() != ')') {
            throw InputError("bad pair literal '" + text + "'");
        }
        auto comma = text.find(',');
        if (comma == std::string::npos) throw InputError("bad pair literal '" + text + "'");
        return {text.substr(1, comma - 1), text.substr(comma + 1, text.size() - comma - 2)};
    }

private:
    std::uint64_t points_of(std::uint64_t code) const { return code <= kMaxPoints ? code : 0; }
    std::uint64_t years_of(std::uint64_t code) const { return code <= kMaxPoints ? 0 : code - kMaxPoints; }

    std::uint64_t ymax_;
};

} // namespace softac
