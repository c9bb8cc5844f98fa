#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qhwb {

enum class Errc {
    // field tower
    NotSquarefree,
    NotInvertible,
    DivisionByZero,
    NotMonomial,
    RequiresFieldExtension,
    FieldMismatch,
    InvalidArgument,
    LimitExceeded,
    // algebra
    DimensionMismatch,
    NotCommutative,
    NotAssociative,
    UnitAxiomFailed,
    GradingViolation,
    NotSemisimple,
    NotSplitOverField,
    NotIdempotent,
    NoIntegrationData,
    NoGrading,
    // sphere calculus
    ZeroClass,
    NotCubic,
    BetaZero,
    PreconditionViolated,
    Inconsistent,
    AssertionFailed,
    // configurations / spectral
    InvalidDynkinParameters,
    GraphTooLarge,
    BadPairing,
    ParityUnsupported,
    ChainMalformed,
    // front end
    SyntaxError,
    UnresolvedName,
    DuplicateName,
};

/// Exit-code category of an error, as used by the command-line driver.
enum class ErrorCategory { Parse = 1, Validation = 2, Math = 3, Assertion = 4 };

constexpr std::string_view errc_name(Errc e) noexcept
{
    switch (e) {
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotMonomial: return "NotMonomial";
    case Errc::RequiresFieldExtension: return "RequiresFieldExtension";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::LimitExceeded: return "LimitExceeded";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotCommutative: return "NotCommutative";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::UnitAxiomFailed: return "UnitAxiomFailed";
    case Errc::GradingViolation: return "GradingViolation";
    case Errc::NotSemisimple: return "NotSemisimple";
    case Errc::NotSplitOverField: return "NotSplitOverField";
    case Errc::NotIdempotent: return "NotIdempotent";
    case Errc::NoIntegrationData: return "NoIntegrationData";
    case Errc::NoGrading: return "NoGrading";
    case Errc::ZeroClass: return "ZeroClass";
    case Errc::NotCubic: return "NotCubic";
    case Errc::BetaZero: return "BetaZero";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::AssertionFailed: return "AssertionFailed";
    case Errc::InvalidDynkinParameters: return "InvalidDynkinParameters";
    case Errc::GraphTooLarge: return "GraphTooLarge";
    case Errc::BadPairing: return "BadPairing";
    case Errc::ParityUnsupported: return "ParityUnsupported";
    case Errc::ChainMalformed: return "ChainMalformed";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnresolvedName: return "UnresolvedName";
    case Errc::DuplicateName: return "DuplicateName";
    }
    return "Unknown";
}

constexpr ErrorCategory errc_category(Errc e) noexcept
{
    switch (e) {
    case Errc::SyntaxError:
    case Errc::UnresolvedName:
    case Errc::DuplicateName:
        return ErrorCategory::Parse;
    case Errc::LimitExceeded:
    case Errc::NotSquarefree:
    case Errc::FieldMismatch:
    case Errc::InvalidArgument:
    case Errc::DimensionMismatch:
    case Errc::NotCommutative:
    case Errc::NotAssociative:
    case Errc::UnitAxiomFailed:
    case Errc::GradingViolation:
    case Errc::InvalidDynkinParameters:
    case Errc::GraphTooLarge:
    case Errc::BadPairing:
        return ErrorCategory::Validation;
    case Errc::Inconsistent:
    case Errc::AssertionFailed:
        return ErrorCategory::Assertion;
    default:
        return ErrorCategory::Math;
    }
}

/// Every failure in the library is reported through this type. `indices`
/// names the offending basis elements / vertices where applicable and
/// `witness` carries a rendered object (a polynomial, a scalar) when the
/// error has one.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message, std::vector<int> indices = {}, std::string witness = {})
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code), indices_(std::move(indices)), witness_(std::move(witness))
    {
    }

    Errc code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return errc_category(code_); }
    const std::vector<int>& indices() const noexcept { return indices_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    Errc code_;
    std::vector<int> indices_;
    std::string witness_;
};

[[noreturn]] inline void raise(Errc code, std::string message, std::vector<int> indices = {},
                               std::string witness = {})
{
    throw Error(code, std::move(message), std::move(indices), std::move(witness));
}

} // namespace qhwb
