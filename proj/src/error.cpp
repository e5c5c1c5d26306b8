#include "scimap/error.hpp"

namespace scimap {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownJournalId: return "UnknownJournalId";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::NonPositiveCount: return "NonPositiveCount";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::MalformedRegistry: return "MalformedRegistry";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::ThresholdBelowCurrent: return "ThresholdBelowCurrent";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::DisconnectedInput: return "DisconnectedInput";
    case ErrorCode::NodeSetMismatch: return "NodeSetMismatch";
    case ErrorCode::ZeroTargetDistance: return "ZeroTargetDistance";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::EmptyEdgeSet: return "EmptyEdgeSet";
    case ErrorCode::UnassignedNode: return "UnassignedNode";
    case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
    case ErrorCode::CoverageMismatch: return "CoverageMismatch";
    case ErrorCode::DuplicateGamma: return "DuplicateGamma";
    case ErrorCode::MalformedBasemapFile: return "MalformedBasemapFile";
    case ErrorCode::UnknownGamma: return "UnknownGamma";
    case ErrorCode::EmptyOverlay: return "EmptyOverlay";
    case ErrorCode::UnterminatedRecord: return "UnterminatedRecord";
    case ErrorCode::MissingEndOfFile: return "MissingEndOfFile";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::OverlayBasemapMismatch: return "OverlayBasemapMismatch";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace scimap
