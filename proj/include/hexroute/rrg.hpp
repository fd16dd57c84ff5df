#pragma once

#include <memory>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexroute/mesh.hpp"
#include "hexroute/types.hpp"

namespace hexroute {

enum class PortDir : std::uint8_t
{
  In = 0,
  Out = 1
};

struct RrgNode
{
  CouplerId coupler = 0;
  int port = 0;
  PortDir dir = PortDir::In;
};

/// A routing endpoint. Resolves to exactly one RRG node.
struct Pin
{
  CouplerId coupler = 0;
  int port = 0;
  PortDir dir = PortDir::In;

  auto operator<=>(const Pin&) const = default;
};

enum class ArcKind : std::uint8_t
{
  Inter,
  Intra
};

enum class ArcStatus : std::uint8_t
{
  Free,
  Active,
  Forbidden
};

std::string to_string(ArcStatus status);

struct Arc
{
  NodeId tail = kNoNode;
  NodeId head = kNoNode;
  ArcKind kind = ArcKind::Inter;
  /// Segments: 1 for waveguides between couplers, 0 inside a coupler.
  Length length = 0;
  /// Reverse twin over the same physical segment; inter arcs only.
  ArcId opposite = kNoArc;
};

/// Mutable routing state. Statuses and coupler states are derived from the
/// owners, so two graphs with equal owners compare equal.
struct Occupancy
{
  std::vector<std::optional<NetId>> owner;
  std::vector<ArcStatus> status;
  std::vector<CouplerState> coupler_state;

  bool operator==(const Occupancy&) const = default;
};

class CommitConflict : public std::runtime_error
{
public:
  CommitConflict(const std::string& what, std::size_t index) : std::runtime_error(what), index_(index) {}

  /// Position in the committed path of the first offending arc.
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

/// Directed port-level routing-resource graph of a hexagonal mesh.
///
/// Every coupler expands into 8 nodes (an entering and a leaving node per
/// port) and 8 intra arcs linking each entering node to both leaving nodes of
/// the opposite side. Every segment becomes a pair of opposite inter arcs.
///
/// Read-only queries may run concurrently; commit_path and rip_up need
/// exclusive access, callers serialize them.
class RoutingResourceGraph
{
public:
  static constexpr int kNodesPerCoupler = 8;
  static constexpr int kIntraArcsPerCoupler = 8;

  explicit RoutingResourceGraph(std::shared_ptr<const HexMesh> mesh);

  const HexMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const HexMesh>& shared_mesh() const { return mesh_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  const RrgNode& node(NodeId id) const { return nodes_.at(id); }
  const Arc& arc(ArcId id) const { return arcs_.at(id); }
  std::span<const Arc> arcs() const { return arcs_; }

  std::span<const ArcId> out_arcs(NodeId id) const;
  /// Intra arcs of a coupler occupy a contiguous id block.
  static auto intra_arcs(CouplerId coupler)
  {
    const ArcId first = coupler * kIntraArcsPerCoupler;
    return std::views::iota(first, first + kIntraArcsPerCoupler);
  }

  static NodeId node_id(CouplerId coupler, int port, PortDir dir)
  {
    return coupler * kNodesPerCoupler + static_cast<NodeId>(port) * 2 + static_cast<NodeId>(dir);
  }
  CouplerId coupler_of(NodeId id) const { return nodes_[id].coupler; }
  PortRef port_of(NodeId id) const { return {nodes_[id].coupler, nodes_[id].port}; }

  /// Throws std::out_of_range when the pin does not name a node of this graph.
  NodeId resolve(const Pin& pin) const;
  Pin pin_of(NodeId id) const;

  ArcStatus status(ArcId id) const { return occupancy_.status[id]; }
  std::optional<NetId> owner(ArcId id) const { return occupancy_.owner[id]; }
  CouplerState coupler_state(CouplerId id) const { return occupancy_.coupler_state[id]; }
  const Occupancy& occupancy() const { return occupancy_; }

  /// Whether `net` may route over `arc`. `prefix` says the partial path so
  /// far consists only of arcs already owned by `net` (tree sharing): owned
  /// arcs are usable only in that mode, and only there may a net branch at
  /// one of its own couplers (the coupler then turns Partial).
  bool usable(ArcId arc, std::optional<NetId> net, bool prefix) const;

  /// Marks the path Active for `net`. Throws CommitConflict, leaving the graph
  /// untouched, if any arc is not usable.
  void commit_path(std::span<const ArcId> path, NetId net);
  void rip_up(NetId net);
  std::vector<ArcId> arcs_owned_by(NetId net) const;

  /// Pins of a netlist reserve their physical port for their net.
  void reserve_port(PortRef port, NetId net);
  std::optional<NetId> reservation(PortRef port) const;
  void clear_reservations();

private:
  void refresh_status();
  bool branch_allowed(ArcId arc, NetId net) const;

  std::shared_ptr<const HexMesh> mesh_;
  std::vector<RrgNode> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offsets_;
  std::vector<ArcId> out_list_;
  Occupancy occupancy_;
  std::vector<std::optional<NetId>> reserved_;
};

/// Builds the graph and checks the hexagonal estimator against exact
/// distances on it; throws MeshError if the estimator is not admissible and
/// consistent for this mesh.
RoutingResourceGraph build_rrg(std::shared_ptr<const HexMesh> mesh);
RoutingResourceGraph build_rrg(const HexMesh& mesh);

enum class PathRule : std::uint8_t
{
  Contiguity,
  CouplerRevisit,
  OppositePair,
  Blocked,
  LengthMismatch,
  Endpoint
};

std::string to_string(PathRule rule);

struct Violation
{
  PathRule rule;
  /// Index into the path of the offending arc.
  std::size_t index = 0;
  ArcId arc = kNoArc;
  std::string detail;
};

struct PathCheck
{
  /// Net the path is routed for; owned arcs of this net are allowed as a
  /// prefix from the source.
  std::optional<NetId> net;
  std::optional<NodeId> source;
  std::optional<NodeId> target;
};

/// Empty result means the path is legal with exactly `length` segments.
///
/// A path may not enter a coupler twice. The one exception is a ring: the
/// final inter arc may land on the source coupler.
std::vector<Violation> validate_path(const RoutingResourceGraph& rrg,
                                     std::span<const ArcId> path,
                                     Length length,
                                     const PathCheck& check = {});

Length path_length(const RoutingResourceGraph& rrg, std::span<const ArcId> path);

}  // namespace hexroute
