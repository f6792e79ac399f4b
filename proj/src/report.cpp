#include "heterour/report.hpp"

#include <json.hpp>

namespace heterour {

using ordered_json = nlohmann::ordered_json;

std::string to_string(DeterministicKind kind) {
    switch (kind) {
        case DeterministicKind::None: return "none";
        case DeterministicKind::Mean: return "mean";
        case DeterministicKind::Trend: return "trend";
    }
    return "none";
}

DeterministicKind deterministic_from_string(const std::string& name) {
    if (name == "none") {
        return DeterministicKind::None;
    }
    if (name == "mean") {
        return DeterministicKind::Mean;
    }
    if (name == "trend") {
        return DeterministicKind::Trend;
    }
    throw InvalidInput("unknown deterministic kind '" + name + "' (none, mean, trend)");
}

std::string test_result_to_json(const TestResult& result) {
    ordered_json statistic;
    ordered_json p_value;
    const auto add = [&](const char* key, const std::optional<StatOutcome>& outcome) {
        if (outcome) {
            statistic[key] = outcome->observed;
            p_value[key] = outcome->p_value;
        }
    };
    add("lt", result.lt);
    add("tt", result.tt);
    add("mz", result.mz);

    ordered_json decisions;
    for (const auto& [label, level] :
         {std::pair{"0.01", 0.01}, std::pair{"0.05", 0.05}, std::pair{"0.10", 0.10}}) {
        ordered_json at;
        const auto decide = [&](const char* key, const std::optional<StatOutcome>& outcome) {
            if (outcome) {
                at[key] = outcome->p_value < level;
            }
        };
        decide("lt", result.lt);
        decide("tt", result.tt);
        decide("mz", result.mz);
        decisions[label] = at;
    }

    ordered_json doc;
    doc["schema"] = 1;
    doc["statistic"] = statistic;
    doc["p_value"] = p_value;
    doc["b_used"] = result.b_used;
    doc["h_used"] = result.h_used;
    doc["B"] = result.B;
    doc["deterministic"] = to_string(result.deterministic.kind);
    doc["c_bar"] = result.deterministic.kind == DeterministicKind::None
                       ? 0.0
                       : result.deterministic.c_bar;
    doc["seed"] = result.seed;
    doc["decision_at"] = decisions;
    return doc.dump(2) + "\n";
}

}  // namespace heterour
