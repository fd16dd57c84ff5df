#pragma once

#include <cstdint>
#include <limits>

namespace hexroute {

// Path lengths are integer segment counts; there is no floating point in any
// search key.
using Length = std::int32_t;

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;
using CouplerId = std::uint32_t;
using NetId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr ArcId kNoArc = std::numeric_limits<ArcId>::max();
inline constexpr Length kUnreachable = std::numeric_limits<Length>::max();

}  // namespace hexroute
