#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgericci {

enum class ErrorCode {
    EmptyInput,
    DuplicateEdge,
    SelfLoop,
    Disconnected,
    ParseError,
    NonpositiveWeight,
    InvalidParameter,
    UnknownVertex,
    IsolatedEdge,
    MassImbalance,
    MissingPotential,
    SamePair,
    NotAdjacent,
    NonconstantVertexWeights,
    NotATree,
    BadOrientation,
    SingularWeight,
    NotSymmetric,
    NoConvergence,
    NoNonzeroEigenvalue,
    RationalOverflow,
    TooLarge,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::IsolatedEdge: return "IsolatedEdge";
    case ErrorCode::MassImbalance: return "MassImbalance";
    case ErrorCode::MissingPotential: return "MissingPotential";
    case ErrorCode::SamePair: return "SamePair";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::NonconstantVertexWeights: return "NonconstantVertexWeights";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::BadOrientation: return "BadOrientation";
    case ErrorCode::SingularWeight: return "SingularWeight";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoNonzeroEigenvalue: return "NoNonzeroEigenvalue";
    case ErrorCode::RationalOverflow: return "RationalOverflow";
    case ErrorCode::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace edgericci
