#include "hexroute/mesh_search.hpp"

#include <algorithm>

namespace hexroute {

void MeshSearchSpace::successors(NodeId node, std::vector<Step>& out) const
{
  const auto begin = out.size();
  for (ArcId id : rrg_.out_arcs(node))
  {
    const auto& a = rrg_.arc(id);
    out.push_back({a.head, id, a.length});
  }
  // The net's own arcs go first, so equal keys favour sharing its tree.
  if (net_)
    std::stable_partition(out.begin() + static_cast<std::ptrdiff_t>(begin), out.end(), [&](const Step& s) {
      return rrg_.owner(s.arc) == net_;
    });
}

void MeshSearchSpace::set_stops(std::vector<NodeId> stops)
{
  std::sort(stops.begin(), stops.end());
  stops_ = std::move(stops);
}

bool MeshSearchSpace::admits(const PartialPath& prefix, const Step& step, NodeId target) const
{
  if (!prefix.is_root() && std::binary_search(stops_.begin(), stops_.end(), prefix.node()))
    return false;
  const auto& arc = rrg_.arc(step.arc);
  const CouplerId entering = rrg_.coupler_of(step.head);
  const bool new_visit = entering != rrg_.coupler_of(prefix.node());

  bool prefix_mode = net_.has_value();
  bool revisit = false;
  NodeId source = kNoNode;
  for (PartialPath p = prefix;; p = p.parent())
  {
    if (new_visit && rrg_.coupler_of(p.node()) == entering)
      revisit = true;
    if (p.is_root())
    {
      source = p.node();
      break;
    }
    const ArcId used = p.arc();
    if (arc.kind == ArcKind::Inter && used == arc.opposite)
      return false;
    if (prefix_mode && rrg_.owner(used) != net_)
      prefix_mode = false;
  }

  if (revisit)
  {
    const bool closes_ring = step.head == target && entering == rrg_.coupler_of(source);
    if (!closes_ring)
      return false;
  }
  return rrg_.usable(step.arc, net_, prefix_mode);
}

}  // namespace hexroute
