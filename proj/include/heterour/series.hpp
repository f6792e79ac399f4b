#pragma once

#include "heterour/errors.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace heterour {

/// Minimum length accepted by any statistical operation.
inline constexpr std::size_t kMinSeriesLength = 8;

/**
 * @brief Ordered sequence of finite real observations with optional time labels.
 *
 * Construction rejects non-finite values and label/value length mismatches.
 * Values are immutable after construction; instances are safe to share
 * across threads.
 */
class TimeSeries {
  public:
    TimeSeries() = default;

    explicit TimeSeries(std::vector<double> values) : values_(std::move(values)) {
        validate();
    }

    TimeSeries(std::vector<double> values, std::vector<std::string> labels)
        : values_(std::move(values)), labels_(std::move(labels)) {
        if (!labels_.empty() && labels_.size() != values_.size()) {
            throw LengthMismatch("labels and values must have equal length");
        }
        validate();
    }

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::span<const double> span() const noexcept { return values_; }

    /// Throws InsufficientLength unless size() >= kMinSeriesLength.
    void require_statistical_length() const {
        if (values_.size() < kMinSeriesLength) {
            throw InsufficientLength("series length " + std::to_string(values_.size()) +
                                     " is below the minimum of " +
                                     std::to_string(kMinSeriesLength));
        }
    }

  private:
    void validate() const {
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw InvalidInput("series contains a non-finite value");
            }
        }
    }

    std::vector<double> values_;
    std::vector<std::string> labels_;
};

}  // namespace heterour
