#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "hexroute/rrg.hpp"

namespace hexroute {

class OracleBudgetExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// All achievable exact lengths between two nodes up to a bound.
struct FeasibleLengthSet
{
  NodeId source = kNoNode;
  NodeId target = kNoNode;
  Length bound = 0;
  /// length -> number of distinct legal paths.
  std::map<Length, std::uint64_t> counts;
  /// length -> first path found with that length.
  std::map<Length, std::vector<ArcId>> witnesses;

  bool contains(Length length) const { return counts.contains(length); }
  std::vector<Length> lengths() const;
};

struct OracleLimits
{
  Length max_length = 24;
  /// Maximum number of DFS steps before giving up.
  std::uint64_t node_budget = 200'000'000;
};

/// Depth-first enumeration of every legal path from `source` to `target` with
/// at most `limits.max_length` segments. Only Free arcs are used. The search
/// is cut where the exact remaining coupler distance exceeds the bound.
/// Throws OracleBudgetExceeded past `limits.node_budget` steps.
FeasibleLengthSet enumerate_paths(const RoutingResourceGraph& rrg,
                                  NodeId source,
                                  NodeId target,
                                  const OracleLimits& limits = {});

struct QuantizationVerdict
{
  bool quantized = true;
  Length minimum = 0;
  /// Lengths whose parity differs from the minimum.
  std::vector<Length> counterexamples;
};

/// Throws std::invalid_argument on an empty set.
QuantizationVerdict check_quantization(const FeasibleLengthSet& set);
QuantizationVerdict check_quantization(const std::vector<Length>& lengths);

}  // namespace hexroute
