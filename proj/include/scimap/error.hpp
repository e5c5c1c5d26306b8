#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scimap {

/// Every failure the library reports. The CLI prints the code's name
/// alongside the message, so names are part of the user-facing surface.
enum class ErrorCode {
  // matrix ingest
  UnknownJournalId,
  DuplicateEntry,
  NonPositiveCount,
  MalformedRow,
  MalformedRegistry,
  // similarity / graph
  EmptyMatrix,
  ThresholdBelowCurrent,
  InvalidThreshold,
  EmptyGraph,
  DisconnectedInput,
  // layout
  NodeSetMismatch,
  ZeroTargetDistance,
  NonFiniteState,
  // clustering
  EmptyEdgeSet,
  UnassignedNode,
  NonPositiveGamma,
  // basemap / overlay
  CoverageMismatch,
  DuplicateGamma,
  MalformedBasemapFile,
  UnknownGamma,
  EmptyOverlay,
  // wos
  UnterminatedRecord,
  MissingEndOfFile,
  // export
  InvalidLabel,
  OverlayBasemapMismatch,
  MalformedFile,
  IoFailure,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace scimap
