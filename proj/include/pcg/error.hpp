#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcg {

enum class ErrorKind {
    DuplicateName,
    InvalidName,
    UnknownEndpoint,
    DuplicateEdge,
    CycleDetected,
    UnknownVariable,
    OverlappingSets,
    InvalidNetwork,
    IncompleteAssignment,
    TooLarge,
    InvalidArgument,
    UnknownState,
    ParseError,
    IoError,
    EmptyDataset,
    DegenerateStrata,
    VariableMismatch,
    InvalidEvidence,
    ImpossibleEvidence,
    NotAPolytree,
    ZeroEvidenceProbability,
    InvalidOrder,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure. `kind()` carries the error's name; `what()` is
/// "<Name>: <detail>" so diagnostics always surface the name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace pcg
