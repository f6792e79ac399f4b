#pragma once

#include "heterour/bootstrap.hpp"

#include <string>

namespace heterour {

/// Kind name as used on the command line and in reports.
[[nodiscard]] std::string to_string(DeterministicKind kind);
[[nodiscard]] DeterministicKind deterministic_from_string(const std::string& name);

/**
 * @brief Serialize a test result as a JSON document (schema 1).
 *
 * Keys: schema, statistic, p_value, b_used, h_used, B, deterministic,
 * c_bar, seed, decision_at (reject flags at the 1%, 5% and 10% levels).
 * Output is byte-stable for identical results.
 */
[[nodiscard]] std::string test_result_to_json(const TestResult& result);

}  // namespace heterour
