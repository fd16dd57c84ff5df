#pragma once

#include <optional>
#include <vector>

#include "hexroute/rrg.hpp"
#include "hexroute/search.hpp"

namespace hexroute {

/// Search view of a routing-resource graph for one net.
///
/// A successor is admitted when its arc is usable by the net (occupancy,
/// reservations, tree-prefix sharing), its opposite is not on the partial
/// path, and it does not enter a coupler already on the partial path. Closing
/// a ring onto the source coupler is allowed when that lands on the target.
class MeshSearchSpace final : public SearchSpace
{
public:
  explicit MeshSearchSpace(const RoutingResourceGraph& rrg, std::optional<NetId> net = std::nullopt)
      : rrg_(rrg), net_(net)
  {
  }

  void successors(NodeId node, std::vector<Step>& out) const override;
  bool admits(const PartialPath& prefix, const Step& step, NodeId target) const override;

  const RoutingResourceGraph& graph() const { return rrg_; }

  /// Pin nodes a path may end at but never pass through (sinks of the net).
  void set_stops(std::vector<NodeId> stops);

private:
  const RoutingResourceGraph& rrg_;
  std::optional<NetId> net_;
  std::vector<NodeId> stops_;
};

}  // namespace hexroute
