#pragma once

#include <memory>

#include "hexroute/heuristic.hpp"
#include "hexroute/mesh_search.hpp"
#include "hexroute/rrg.hpp"
#include "hexroute/search.hpp"

namespace hexroute::testing {

/// Mesh, graph, search view and estimator for one radius.
struct Bench
{
  explicit Bench(int radius, HeuristicBackend backend = HeuristicBackend::HexFormula)
      : rrg(build_rrg(std::make_shared<const HexMesh>(build_mesh(radius)))),
        space(rrg),
        estimator(rrg, backend),
        exact(rrg.mesh())
  {
  }

  SearchProblem problem(NodeId s, NodeId t, Length length) const
  {
    return SearchProblem{.space = space, .source = s, .target = t, .length = length, .estimator = estimator};
  }

  /// Directed shortest distance under the current occupancy.
  Length distance(NodeId s, NodeId t) const
  {
    const auto out = shortest_path(problem(s, t, 0));
    return out.found() ? out.length : kUnreachable;
  }

  RoutingResourceGraph rrg;
  MeshSearchSpace space;
  MeshEstimator estimator;
  CouplerDistances exact;
};

}  // namespace hexroute::testing
