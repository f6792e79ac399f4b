#pragma once

#include "heterour/series.hpp"

#include <cstddef>
#include <span>
#include <string>

namespace heterour {

/**
 * @brief Read a time series from CSV.
 *
 * An optional header row names the columns; a `value` column is then
 * required and a `date` column, when present, supplies labels. Headerless
 * files carry either a single value column or `label,value` pairs.
 * Values are parsed as 64-bit floating point.
 *
 * @throws ParseError on unreadable files, malformed rows, or non-finite values
 */
[[nodiscard]] TimeSeries read_series_csv(const std::string& path);

/// Write `t,value` rows (t = 1..n) with round-trip precision.
void write_series_csv(const std::string& path, std::span<const double> values);

/// Write `t,sigma_hat` rows; t starts at first_t (the original time index of
/// the first residual).
void write_sigma_csv(const std::string& path, std::span<const double> sigma,
                     std::size_t first_t = 1);

/// Shortest round-trip decimal formatting used for all CSV numeric output.
[[nodiscard]] std::string format_double(double v);

}  // namespace heterour
