#pragma once

#include <map>
#include <memory>
#include <string>

#include "softac/structures/bounded_sum.hpp"
#include "softac/structures/capped_prison.hpp"
#include "softac/structures/driving_penalty.hpp"
#include "softac/structures/financial_life.hpp"
#include "softac/structures/ordered_max.hpp"
#include "softac/structures/weighted.hpp"

namespace softac {

using StructurePtr = std::shared_ptr<const ValuationStructure>;

/// Builds a structure from its instance-file name and parameters.
inline StructurePtr make_structure(const std::string& kind,
                                   const std::map<std::string, std::uint64_t>& params = {}) {
    auto get = [&](const std::string& name, std::uint64_t fallback,
                   bool required = false) -> std::uint64_t {
        auto it = params.find(name);
        if (it != params.end()) return it->second;
        if (required) throw InputError("structure '" + kind + "' needs parameter '" + name + "'");
        return fallback;
    };
    if (kind == "weighted") return std::make_shared<WeightedStructure>();
    if (kind == "bounded_sum") return std::make_shared<BoundedSumStructure>(get("k", 0, true));
    if (kind == "ordered_max") return std::make_shared<OrderedMaxStructure>(get("levels", 0, true));
    if (kind == "driving_penalty") {
        return std::make_shared<DrivingPenaltyStructure>(
            get("ymax", DrivingPenaltyStructure::kDefaultYmax));
    }
    if (kind == "capped_prison") {
        return std::make_shared<CappedPrisonStructure>(get("cap", CappedPrisonStructure::kDefaultCap));
    }
    if (kind == "financial_life") {
        return std::make_shared<FinancialLifeStructure>(get("fmax", 0, true), get("hmax", 0, true));
    }
    throw InputError("unknown structure kind '" + kind + "'");
}

} // namespace softac
