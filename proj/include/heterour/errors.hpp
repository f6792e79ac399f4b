#pragma once

#include <stdexcept>
#include <string>

namespace heterour {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input series too short for the requested statistical operation.
class InsufficientLength : public Error {
  public:
    using Error::Error;
};

/// Series contains NaN or infinite values, or a flag/parameter is out of range.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// Every lagged regressor is zero; the LAD objective is constant in gamma.
class AllLagsZero : public Error {
  public:
    using Error::Error;
};

/// Quasi-differenced regressor cross-product is numerically singular.
class SingularDesign : public Error {
  public:
    using Error::Error;
};

/// All absolute residuals are zero; the volatility path cannot be identified.
class DegenerateResiduals : public Error {
  public:
    using Error::Error;
};

/// Two sequences that must have equal length do not.
class LengthMismatch : public Error {
  public:
    using Error::Error;
};

/// Both the standard deviation and the IQR of the sample are zero.
class ZeroBandwidth : public Error {
  public:
    using Error::Error;
};

/// Subsample length for block-length selection is out of range.
class InvalidSubsampleLength : public Error {
  public:
    using Error::Error;
};

/// |1 - sum(beta_i)| below tolerance in the autoregressive variance estimate.
class NearUnitDenominator : public Error {
  public:
    using Error::Error;
};

/// Malformed CSV or experiment specification file.
class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace heterour
