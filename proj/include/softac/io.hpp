#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "softac/model.hpp"
#include "softac/structures.hpp"

namespace softac::io {

using json = nlohmann::ordered_json;

// Instance files are JSON documents with three keys:
//   structure:   {"kind": ..., <parameter>: <integer>, ...}
//   variables:   [{"name": ..., "domain": [label, ...]}, ...]
//   constraints: [{"scope": [name, ...], "default": cost,
//                  "costs": [[[label, ...], cost], ...]}, ...]
// Costs are integers or literals understood by the declared structure
// ("inf", "top", "(12,0)", ...). A scope of one variable fills that
// variable's unary table. A "comment" key is ignored anywhere.

inline Valuation cost_from_json(const ValuationStructure& s, const json& j) {
    if (j.is_number_unsigned()) return s.make(s.code_from_string(std::to_string(j.get<std::uint64_t>())));
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0) throw InputError("negative cost " + std::to_string(v));
        return s.make(s.code_from_string(std::to_string(v)));
    }
    if (j.is_string()) return s.make(s.code_from_string(j.get<std::string>()));
    throw InputError("cost must be an integer or a string literal");
}

inline json cost_to_json(const Valuation& v) {
    std::string text = v.to_string();
    bool digits = !text.empty();
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            digits = false;
            break;
        }
    }
    if (digits) return json(std::stoull(text));
    return json(text);
}

inline StructurePtr structure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) {
        throw InputError("structure must be an object with a 'kind'");
    }
    std::map<std::string, std::uint64_t> params;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "kind" || it.key() == "comment") continue;
        if (!it.value().is_number_unsigned()) {
            throw InputError("structure parameter '" + it.key() + "' must be a nonnegative integer");
        }
        params[it.key()] = it.value().get<std::uint64_t>();
    }
    return make_structure(j["kind"].get<std::string>(), params);
}

inline json structure_to_json(const ValuationStructure& s) {
    json out;
    out["kind"] = s.kind();
    for (const auto& [name, value] : s.parameters()) out[name] = value;
    return out;
}

inline Vcsp parse_instance(const json& doc) {
    if (!doc.is_object()) throw InputError("instance must be a JSON object");
    if (!doc.contains("structure")) throw InputError("instance needs a 'structure'");
    if (!doc.contains("variables")) throw InputError("instance needs 'variables'");
    StructurePtr structure = structure_from_json(doc["structure"]);

    std::vector<Variable> vars;
    for (const auto& jv : doc["variables"]) {
        if (!jv.contains("name") || !jv.contains("domain")) {
            throw InputError("each variable needs a 'name' and a 'domain'");
        }
        Variable var;
        var.name = jv["name"].get<std::string>();
        for (const auto& label : jv["domain"]) var.domain.push_back(label.get<std::string>());
        vars.push_back(std::move(var));
    }
    Vcsp v(structure, std::move(vars));

    std::set<Scope> seen;
    for (const auto& jc : doc.value("constraints", json::array())) {
        if (!jc.contains("scope")) throw InputError("constraint needs a 'scope'");
        std::vector<VariableId> file_scope;
        for (const auto& name : jc["scope"]) {
            file_scope.push_back(v.variable_by_name(name.get<std::string>()));
        }
        std::set<VariableId> distinct(file_scope.begin(), file_scope.end());
        if (distinct.size() != file_scope.size()) {
            throw InputError("constraint scope repeats a variable");
        }
        Scope scope(distinct.begin(), distinct.end());
        if (!seen.insert(scope).second) {
            std::string names;
            for (const auto& name : jc["scope"]) names += " " + name.get<std::string>();
            throw InputError("duplicate constraint scope:" + names);
        }

        Valuation fallback = jc.contains("default") ? cost_from_json(*structure, jc["default"])
                                                    : structure->bot();

        // tuples arrive in the file's scope order; remap to ascending order
        std::vector<std::size_t> where(file_scope.size());
        for (std::size_t k = 0; k < file_scope.size(); ++k) {
            where[k] = static_cast<std::size_t>(
                std::distance(scope.begin(), std::find(scope.begin(), scope.end(), file_scope[k])));
        }

        auto value_index = [&](VariableId var, const std::string& label) -> ValueIndex {
            const auto& domain = v.variable(var).domain;
            auto it = std::find(domain.begin(), domain.end(), label);
            if (it == domain.end()) {
                throw InputError("value '" + label + "' not in domain of '" + v.variable(var).name + "'");
            }
            return static_cast<ValueIndex>(std::distance(domain.begin(), it));
        };

        if (scope.size() == 1) {
            VariableId var = scope[0];
            for (int a = 0; a < v.domain_size(var); ++a) v.set_unary_cost(var, a, fallback);
            for (const auto& entry : jc.value("costs", json::array())) {
                const auto& labels = entry.at(0);
                if (labels.size() != 1) throw InputError("unary tuple arity mismatch");
                v.set_unary_cost(var, value_index(var, labels[0].get<std::string>()),
                                 cost_from_json(*structure, entry.at(1)));
            }
            continue;
        }

        std::vector<int> dims = v.dims_for(scope);
        std::vector<Valuation> table(table_size(dims), fallback);
        for (const auto& entry : jc.value("costs", json::array())) {
            const auto& labels = entry.at(0);
            if (labels.size() != scope.size()) {
                throw InputError("tuple arity does not match the scope");
            }
            Tuple t(scope.size(), 0);
            for (std::size_t k = 0; k < file_scope.size(); ++k) {
                t[where[k]] = value_index(file_scope[k], labels[k].get<std::string>());
            }
            table[tuple_index(dims, t)] = cost_from_json(*structure, entry.at(1));
        }
        v.add_constraint(scope, std::move(table));
    }
    return v;
}

inline Vcsp parse_instance_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, true);  // with comments allowed
    } catch (const nlohmann::json::exception& ex) {
        throw InputError(std::string("instance is not valid JSON: ") + ex.what());
    }
    return parse_instance(doc);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline Vcsp parse_instance_file(const std::string& path) { return parse_instance_text(read_file(path)); }

/// Serializes a problem in the instance schema: unary tables as one-variable
/// scopes, every table with default bot and its non-bot entries listed in
/// row-major order. Effective costs are written, so the output carries no
/// delta bookkeeping.
inline json problem_to_json(const Vcsp& v) {
    json out;
    out["structure"] = structure_to_json(v.structure());
    out["variables"] = json::array();
    for (const auto& var : v.variables()) {
        json jv;
        jv["name"] = var.name;
        jv["domain"] = var.domain;
        out["variables"].push_back(std::move(jv));
    }
    out["constraints"] = json::array();
    for (VariableId var = 0; var < v.var_count(); ++var) {
        json costs = json::array();
        for (int a = 0; a < v.domain_size(var); ++a) {
            Valuation cost = v.unary_cost(var, a);
            if (cost.is_bot()) continue;
            costs.push_back(json::array(
                {json::array({v.variable(var).domain[static_cast<std::size_t>(a)]}), cost_to_json(cost)}));
        }
        if (costs.empty()) continue;
        json jc;
        jc["scope"] = json::array({v.variable(var).name});
        jc["default"] = cost_to_json(v.structure().bot());
        jc["costs"] = std::move(costs);
        out["constraints"].push_back(std::move(jc));
    }
    for (const auto& c : v.constraints()) {
        json jc;
        json scope = json::array();
        for (VariableId var : c.scope()) scope.push_back(v.variable(var).name);
        jc["scope"] = std::move(scope);
        jc["default"] = cost_to_json(v.structure().bot());
        json costs = json::array();
        Tuple t(c.arity(), 0);
        do {
            Valuation cost = c.cost(t);
            if (cost.is_bot()) continue;
            json labels = json::array();
            for (std::size_t k = 0; k < c.arity(); ++k) {
                labels.push_back(v.variable(c.scope()[k]).domain[static_cast<std::size_t>(t[k])]);
            }
            costs.push_back(json::array({std::move(labels), cost_to_json(cost)}));
        } while (next_tuple(c.dims(), t));
        jc["costs"] = std::move(costs);
        out["constraints"].push_back(std::move(jc));
    }
    return out;
}

/// FNV-1a hash of raw bytes, rendered as fixed-width hex. Used to stamp
/// inputs into reports deterministically.
inline std::string digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace softac::io
