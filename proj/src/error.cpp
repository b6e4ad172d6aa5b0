#include "pcg/error.hpp"

namespace pcg {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::InvalidName: return "InvalidName";
    case ErrorKind::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::InvalidNetwork: return "InvalidNetwork";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::DegenerateStrata: return "DegenerateStrata";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::InvalidEvidence: return "InvalidEvidence";
    case ErrorKind::ImpossibleEvidence: return "ImpossibleEvidence";
    case ErrorKind::NotAPolytree: return "NotAPolytree";
    case ErrorKind::ZeroEvidenceProbability: return "ZeroEvidenceProbability";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

} // namespace pcg
