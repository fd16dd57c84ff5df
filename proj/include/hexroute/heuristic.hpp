#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hexroute/estimator.hpp"
#include "hexroute/mesh.hpp"
#include "hexroute/rrg.hpp"

namespace hexroute {

enum class HeuristicBackend : std::uint8_t
{
  HexFormula,
  ExactBFS,
  Zero,
  Manhattan
};

std::string to_string(HeuristicBackend backend);
/// Accepts "hex", "exact", "zero", "manhattan".
std::optional<HeuristicBackend> parse_backend(const std::string& name);

/// Look-ahead distance between two couplers of a hexagonal mesh.
///
/// Largest per-axis difference, plus one detour when the two couplers share
/// an even axis value: the straight line between them then runs through
/// hexagon centres, which carry no coupler. Identical coordinates give 0.
Length hex_heuristic(const AxialCoords& from, const AxialCoords& to);

/// All-pairs shortest segment counts over the undirected coupler graph
/// (couplers adjacent when a segment joins them).
class CouplerDistances
{
public:
  explicit CouplerDistances(const HexMesh& mesh);

  Length at(CouplerId from, CouplerId to) const { return table_[from * count_ + to]; }
  std::size_t size() const { return count_; }

private:
  std::size_t count_ = 0;
  std::vector<Length> table_;
};

struct FormulaCounterexample
{
  CouplerId from = 0;
  CouplerId to = 0;
  /// For consistency failures, the neighbour the triangle inequality broke on.
  std::optional<CouplerId> via;
  Length estimate = 0;
  Length bound = 0;
};

/// Coupler-level admissibility and consistency of hex_heuristic against
/// CouplerDistances. Empty means sound on this mesh.
std::vector<FormulaCounterexample> check_hex_formula(const HexMesh& mesh);

/// Estimator over RRG nodes; nodes inherit the coordinates of their coupler.
class MeshEstimator final : public Estimator
{
public:
  MeshEstimator(const RoutingResourceGraph& rrg, HeuristicBackend backend);

  Length estimate(NodeId from, NodeId to) const override;
  HeuristicBackend backend() const { return backend_; }

private:
  std::shared_ptr<const HexMesh> mesh_;
  HeuristicBackend backend_;
  std::shared_ptr<const CouplerDistances> exact_;
};

struct HeuristicCounterexample
{
  enum class Kind : std::uint8_t
  {
    Admissibility,
    Consistency
  };
  Kind kind = Kind::Admissibility;
  NodeId from = kNoNode;
  NodeId target = kNoNode;
  /// Consistency failures only: the arc (from -> arc head).
  ArcId arc = kNoArc;
  Length estimate = 0;
  Length bound = 0;
};

struct VerificationReport
{
  std::size_t pairs_checked = 0;
  std::size_t arc_target_checks = 0;
  std::size_t admissibility_failures = 0;
  std::size_t consistency_failures = 0;
  /// At most `max_listed` entries; the failure counts are exact.
  std::vector<HeuristicCounterexample> counterexamples;

  bool admissible() const { return admissibility_failures == 0; }
  bool consistent() const { return consistency_failures == 0; }
};

/// Exhaustive check over every node pair (admissibility against exact coupler
/// distances) and every arc/target combination (triangle inequality).
VerificationReport verify_heuristic(const RoutingResourceGraph& rrg,
                                    const Estimator& estimator,
                                    std::size_t max_listed = static_cast<std::size_t>(-1));
VerificationReport verify_heuristic(const RoutingResourceGraph& rrg, HeuristicBackend backend);

}  // namespace hexroute
