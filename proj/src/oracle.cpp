#include "hexroute/oracle.hpp"

#include <algorithm>

#include "hexroute/heuristic.hpp"

namespace hexroute {

std::vector<Length> FeasibleLengthSet::lengths() const
{
  std::vector<Length> out;
  for (const auto& [length, count] : counts)
    out.push_back(length);
  return out;
}

namespace {

class Enumerator
{
public:
  Enumerator(const RoutingResourceGraph& rrg, NodeId source, NodeId target, const OracleLimits& limits)
      : rrg_(rrg),
        exact_(rrg.mesh()),
        target_(target),
        target_coupler_(rrg.coupler_of(target)),
        source_coupler_(rrg.coupler_of(source)),
        limits_(limits),
        visited_(rrg.mesh().couplers().size(), false),
        used_(rrg.arc_count(), false)
  {
    set_.source = source;
    set_.target = target;
    set_.bound = limits.max_length;
  }

  FeasibleLengthSet run()
  {
    if (set_.source == target_)
      record(0);
    visited_[source_coupler_] = true;
    descend(set_.source, 0);
    return std::move(set_);
  }

private:
  void record(Length g)
  {
    ++set_.counts[g];
    set_.witnesses.try_emplace(g, path_);
  }

  void descend(NodeId node, Length g)
  {
    if (++steps_ > limits_.node_budget)
      throw OracleBudgetExceeded("oracle node budget of " + std::to_string(limits_.node_budget) + " exceeded");

    for (ArcId id : rrg_.out_arcs(node))
    {
      const Arc& a = rrg_.arc(id);
      if (rrg_.status(id) != ArcStatus::Free)
        continue;
      if (a.kind == ArcKind::Inter && used_[a.opposite])
        continue;
      const Length next_g = g + a.length;
      const CouplerId c = rrg_.coupler_of(a.head);
      if (next_g + exact_.at(c, target_coupler_) > limits_.max_length)
        continue;

      const bool enters = a.kind == ArcKind::Inter;
      if (enters && visited_[c])
      {
        // Only a ring closing on the source coupler at the target may
        // come back.
        if (c == source_coupler_ && a.head == target_)
        {
          path_.push_back(id);
          record(next_g);
          path_.pop_back();
        }
        continue;
      }

      path_.push_back(id);
      used_[id] = true;
      if (enters)
        visited_[c] = true;
      if (a.head == target_)
        record(next_g);
      else
        descend(a.head, next_g);
      if (enters)
        visited_[c] = false;
      used_[id] = false;
      path_.pop_back();
    }
  }

  const RoutingResourceGraph& rrg_;
  CouplerDistances exact_;
  NodeId target_;
  CouplerId target_coupler_;
  CouplerId source_coupler_;
  OracleLimits limits_;
  std::vector<bool> visited_;
  std::vector<bool> used_;
  std::vector<ArcId> path_;
  FeasibleLengthSet set_;
  std::uint64_t steps_ = 0;
};

}  // namespace

FeasibleLengthSet enumerate_paths(const RoutingResourceGraph& rrg,
                                  NodeId source,
                                  NodeId target,
                                  const OracleLimits& limits)
{
  if (source >= rrg.node_count() || target >= rrg.node_count())
    throw std::out_of_range("oracle endpoints must be graph nodes");
  return Enumerator(rrg, source, target, limits).run();
}

QuantizationVerdict check_quantization(const std::vector<Length>& lengths)
{
  if (lengths.empty())
    throw std::invalid_argument("quantization check needs at least one length");
  QuantizationVerdict v;
  v.minimum = *std::min_element(lengths.begin(), lengths.end());
  for (Length l : lengths)
    if ((l - v.minimum) % 2 != 0)
      v.counterexamples.push_back(l);
  std::sort(v.counterexamples.begin(), v.counterexamples.end());
  v.quantized = v.counterexamples.empty();
  return v;
}

QuantizationVerdict check_quantization(const FeasibleLengthSet& set) { return check_quantization(set.lengths()); }

}  // namespace hexroute
