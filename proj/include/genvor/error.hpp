#pragma once

#include <stdexcept>
#include <string>

namespace genvor {

enum class ErrorCode {
    CoincidentSites,
    DuplicateSites,
    MissingConstraint,
    NonpositiveWeight,
    KOutOfRange,
    InvalidConfig,
    SiteAtSigma,
    DegenerateGeometry,
    BuilderCapacityExceeded,
    ParseError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::CoincidentSites: return "CoincidentSites";
    case ErrorCode::DuplicateSites: return "DuplicateSites";
    case ErrorCode::MissingConstraint: return "MissingConstraint";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::SiteAtSigma: return "SiteAtSigma";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::BuilderCapacityExceeded: return "BuilderCapacityExceeded";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace genvor
