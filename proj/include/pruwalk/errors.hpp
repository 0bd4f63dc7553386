#pragma once

#include <stdexcept>
#include <string>

namespace pruwalk {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// series_algebra
struct ValuationError : Error {
    explicit ValuationError(const std::string& msg) : Error(msg) {}
};
struct NonDivisibleError : Error {
    explicit NonDivisibleError(const std::string& msg) : Error(msg) {}
};
struct BranchError : Error {
    explicit BranchError(const std::string& msg) : Error(msg) {}
};
struct TruncationError : Error {
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

// enumeration / DP
struct LimitError : Error {
    explicit LimitError(const std::string& msg) : Error(msg) {}
};

// numerics
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(msg) {}
};
struct UnsupportedModelError : Error {
    explicit UnsupportedModelError(const std::string& msg) : Error(msg) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};
struct NearCriticalError : Error {
    explicit NearCriticalError(const std::string& msg) : Error(msg) {}
};

}  // namespace pruwalk
