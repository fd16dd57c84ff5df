#include "hexroute/heuristic.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace hexroute {

std::string to_string(HeuristicBackend backend)
{
  switch (backend)
  {
    case HeuristicBackend::HexFormula:
      return "hex";
    case HeuristicBackend::ExactBFS:
      return "exact";
    case HeuristicBackend::Zero:
      return "zero";
    case HeuristicBackend::Manhattan:
      return "manhattan";
  }
  return "unknown";
}

std::optional<HeuristicBackend> parse_backend(const std::string& name)
{
  if (name == "hex")
    return HeuristicBackend::HexFormula;
  if (name == "exact")
    return HeuristicBackend::ExactBFS;
  if (name == "zero")
    return HeuristicBackend::Zero;
  if (name == "manhattan")
    return HeuristicBackend::Manhattan;
  return std::nullopt;
}

Length hex_heuristic(const AxialCoords& from, const AxialCoords& to)
{
  if (from == to)
    return 0;
  Length spread = 0;
  bool blocked_line = false;
  for (std::size_t axis = 0; axis < 3; ++axis)
  {
    spread = std::max(spread, static_cast<Length>(std::abs(from[axis] - to[axis])));
    if (from[axis] == to[axis] && from[axis] % 2 == 0)
      blocked_line = true;
  }
  return blocked_line ? spread + 1 : spread;
}

CouplerDistances::CouplerDistances(const HexMesh& mesh) : count_(mesh.couplers().size())
{
  std::vector<std::vector<CouplerId>> adj(count_);
  for (const auto& seg : mesh.segments())
  {
    adj[seg.a.coupler].push_back(seg.b.coupler);
    adj[seg.b.coupler].push_back(seg.a.coupler);
  }

  table_.assign(count_ * count_, kUnreachable);
  std::deque<CouplerId> queue;
  for (CouplerId src = 0; src < count_; ++src)
  {
    Length* row = &table_[src * count_];
    row[src] = 0;
    queue.assign(1, src);
    while (!queue.empty())
    {
      const CouplerId u = queue.front();
      queue.pop_front();
      for (CouplerId v : adj[u])
        if (row[v] == kUnreachable)
        {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
    }
  }
}

std::vector<FormulaCounterexample> check_hex_formula(const HexMesh& mesh)
{
  const CouplerDistances exact(mesh);
  const auto couplers = mesh.couplers();
  std::vector<FormulaCounterexample> out;
  for (const auto& a : couplers)
    for (const auto& t : couplers)
    {
      const Length h = hex_heuristic(a.coords, t.coords);
      if (h > exact.at(a.id, t.id))
        out.push_back({a.id, t.id, std::nullopt, h, exact.at(a.id, t.id)});
    }
  for (const auto& seg : mesh.segments())
    for (const auto& t : couplers)
      for (const auto& [u, v] : {std::pair{seg.a.coupler, seg.b.coupler}, std::pair{seg.b.coupler, seg.a.coupler}})
      {
        const Length hu = hex_heuristic(couplers[u].coords, t.coords);
        const Length hv = hex_heuristic(couplers[v].coords, t.coords);
        if (hu > 1 + hv)
          out.push_back({u, t.id, v, hu, 1 + hv});
      }
  return out;
}

MeshEstimator::MeshEstimator(const RoutingResourceGraph& rrg, HeuristicBackend backend)
    : mesh_(rrg.shared_mesh()), backend_(backend)
{
  if (backend_ == HeuristicBackend::Manhattan)
    throw std::invalid_argument("the Manhattan estimator only applies to grid fixtures");
  if (backend_ == HeuristicBackend::ExactBFS)
    exact_ = std::make_shared<const CouplerDistances>(*mesh_);
}

Length MeshEstimator::estimate(NodeId from, NodeId to) const
{
  const CouplerId a = from / RoutingResourceGraph::kNodesPerCoupler;
  const CouplerId b = to / RoutingResourceGraph::kNodesPerCoupler;
  switch (backend_)
  {
    case HeuristicBackend::HexFormula:
      return hex_heuristic(mesh_->coupler(a).coords, mesh_->coupler(b).coords);
    case HeuristicBackend::ExactBFS:
      return exact_->at(a, b);
    case HeuristicBackend::Zero:
    case HeuristicBackend::Manhattan:
      return 0;
  }
  return 0;
}

VerificationReport verify_heuristic(const RoutingResourceGraph& rrg, const Estimator& estimator, std::size_t max_listed)
{
  const CouplerDistances exact(rrg.mesh());
  VerificationReport report;
  const auto nodes = static_cast<NodeId>(rrg.node_count());

  auto record = [&](HeuristicCounterexample ce) {
    if (report.counterexamples.size() < max_listed)
      report.counterexamples.push_back(ce);
  };

  for (NodeId n = 0; n < nodes; ++n)
    for (NodeId t = 0; t < nodes; ++t)
    {
      ++report.pairs_checked;
      const Length h = estimator.estimate(n, t);
      const Length bound = exact.at(rrg.coupler_of(n), rrg.coupler_of(t));
      if (h > bound)
      {
        ++report.admissibility_failures;
        record({HeuristicCounterexample::Kind::Admissibility, n, t, kNoArc, h, bound});
      }
    }

  for (ArcId id = 0; id < rrg.arc_count(); ++id)
  {
    const auto& a = rrg.arc(id);
    for (NodeId t = 0; t < nodes; ++t)
    {
      ++report.arc_target_checks;
      const Length h = estimator.estimate(a.tail, t);
      const Length bound = a.length + estimator.estimate(a.head, t);
      if (h > bound)
      {
        ++report.consistency_failures;
        record({HeuristicCounterexample::Kind::Consistency, a.tail, t, id, h, bound});
      }
    }
  }
  return report;
}

VerificationReport verify_heuristic(const RoutingResourceGraph& rrg, HeuristicBackend backend)
{
  const MeshEstimator estimator(rrg, backend);
  return verify_heuristic(rrg, estimator);
}

}  // namespace hexroute
