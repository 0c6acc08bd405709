#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diracinv {

enum class ErrorCode {
    InvalidIndex,
    Parse,
    UnboundName,
    NonFinite,
    DegeneratePoint,
    GuardViolated,
    NonRealPotential,
    NonRealTheta,
    ZeroNorm,
    NoSupportPoints,
    MassInconsistent,
    Quadrature,
    NotDegenerate,
    NotRepresentable,
    ParameterOnSingularLocus,
    Schema,
    CatalogSelfTest,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::InvalidIndex: return "InvalidIndex";
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::UnboundName: return "UnboundName";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::DegeneratePoint: return "DegeneratePoint";
        case ErrorCode::GuardViolated: return "GuardViolated";
        case ErrorCode::NonRealPotential: return "NonRealPotential";
        case ErrorCode::NonRealTheta: return "NonRealTheta";
        case ErrorCode::ZeroNorm: return "ZeroNorm";
        case ErrorCode::NoSupportPoints: return "NoSupportPoints";
        case ErrorCode::MassInconsistent: return "MassInconsistent";
        case ErrorCode::Quadrature: return "QuadratureFailure";
        case ErrorCode::NotDegenerate: return "NotDegenerate";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::ParameterOnSingularLocus: return "ParameterOnSingularLocus";
        case ErrorCode::Schema: return "SchemaViolation";
        case ErrorCode::CatalogSelfTest: return "CatalogSelfTest";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Syntax error in expression text; carries the byte offset and the token
/// classes that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
        : Error(ErrorCode::Parse, format(offset, expected, found)),
          offset_(offset),
          expected_(std::move(expected))
    {
    }

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
    [[nodiscard]] const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                              const std::string& found)
    {
        std::string msg = "at offset " + std::to_string(offset) + ": expected ";
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (k > 0) msg += k + 1 == expected.size() ? " or " : ", ";
            msg += expected[k];
        }
        msg += ", found " + found;
        return msg;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace diracinv
