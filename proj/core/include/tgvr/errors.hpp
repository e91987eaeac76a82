#pragma once

#include <stdexcept>
#include <string>

namespace tgvr {

/// Raised when an iterative routine leaves its numerical contract:
/// non-finite solver state, operator-norm estimation that fails to settle,
/// or a regularization parameter escaping its admissible range.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Base class for file I/O failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Header bytes do not match the expected format.
class MalformedHeaderError : public IoError {
public:
    explicit MalformedHeaderError(const std::string& what) : IoError(what) {}
};

/// Declared dimensions are nonpositive or implausibly large.
class DimensionOverflowError : public IoError {
public:
    explicit DimensionOverflowError(const std::string& what) : IoError(what) {}
};

/// File ends before the declared payload is complete.
class TruncatedPayloadError : public IoError {
public:
    explicit TruncatedPayloadError(const std::string& what) : IoError(what) {}
};

/// Payload decodes to invalid sample values (NaN/Inf).
class MalformedPayloadError : public IoError {
public:
    explicit MalformedPayloadError(const std::string& what) : IoError(what) {}
};

} // namespace tgvr
