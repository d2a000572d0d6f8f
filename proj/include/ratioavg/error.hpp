#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratioavg {

enum class ErrorCode {
    InvalidArgument,
    DomainError,
    RangeViolation,
    DegenerateConfiguration,
    InconsistentRecursion,
    TailTooLarge,
    UnsupportedGroup,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::InconsistentRecursion: return "InconsistentRecursion";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace ratioavg
