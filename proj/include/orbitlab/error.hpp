#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitlab {

enum class ErrorKind {
    AllZero,
    ZeroInput,
    NotPrime,
    DimensionMismatch,
    EmptySpec,
    WrongMode,
    CommonRoot,
    CommonFactor,
    DegreeCapExceeded,
    UnsortedInput,
    OrbitTooShort,
    TableTooShort,
    ParseError,
    Validation,
    BudgetExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptySpec: return "EmptySpec";
    case ErrorKind::WrongMode: return "WrongMode";
    case ErrorKind::CommonRoot: return "CommonRoot";
    case ErrorKind::CommonFactor: return "CommonFactor";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::UnsortedInput: return "UnsortedInput";
    case ErrorKind::OrbitTooShort: return "OrbitTooShort";
    case ErrorKind::TableTooShort: return "TableTooShort";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace orbitlab
