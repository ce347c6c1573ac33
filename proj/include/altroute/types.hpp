#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace altroute {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Travel costs are integral (e.g. deciseconds) so that ties and sums are exact.
using Weight = std::int64_t;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

enum class ErrorCode {
    InvalidArgument,
    NoRoute,
    InvalidPath,
    MixedEndpoints,
    NodeNotInAG,
    ZeroBaseDistance,
    NoCandidates,
    LabelCapExceeded,
    MalformedHeader,
    ArcCountMismatch,
    NegativeWeight,
    IdOutOfRange,
    MalformedInput,
    MissingCoordinates,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace altroute
