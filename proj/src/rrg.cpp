#include "hexroute/rrg.hpp"

#include <algorithm>
#include <set>

#include "hexroute/heuristic.hpp"

namespace hexroute {

namespace {

constexpr std::array<std::pair<int, int>, 8> kIntraPairs = {{
    {0, 2},
    {0, 3},
    {1, 2},
    {1, 3},
    {2, 0},
    {2, 1},
    {3, 0},
    {3, 1},
}};

}  // namespace

std::string to_string(ArcStatus status)
{
  switch (status)
  {
    case ArcStatus::Free:
      return "free";
    case ArcStatus::Active:
      return "active";
    case ArcStatus::Forbidden:
      return "forbidden";
  }
  return "unknown";
}

std::string to_string(PathRule rule)
{
  switch (rule)
  {
    case PathRule::Contiguity:
      return "non-contiguous";
    case PathRule::CouplerRevisit:
      return "coupler-revisit";
    case PathRule::OppositePair:
      return "opposite-pair";
    case PathRule::Blocked:
      return "blocked";
    case PathRule::LengthMismatch:
      return "length-mismatch";
    case PathRule::Endpoint:
      return "endpoint";
  }
  return "unknown";
}

RoutingResourceGraph::RoutingResourceGraph(std::shared_ptr<const HexMesh> mesh) : mesh_(std::move(mesh))
{
  const auto& couplers = mesh_->couplers();
  nodes_.reserve(couplers.size() * kNodesPerCoupler);
  for (const auto& c : couplers)
    for (int port = 0; port < kPortsPerCoupler; ++port)
    {
      nodes_.push_back({c.id, port, PortDir::In});
      nodes_.push_back({c.id, port, PortDir::Out});
    }

  arcs_.reserve(couplers.size() * kIntraArcsPerCoupler + mesh_->segments().size() * 2);
  for (const auto& c : couplers)
    for (const auto& [from, to] : kIntraPairs)
      arcs_.push_back({node_id(c.id, from, PortDir::In), node_id(c.id, to, PortDir::Out), ArcKind::Intra, 0, kNoArc});

  for (const auto& seg : mesh_->segments())
  {
    const auto forward = static_cast<ArcId>(arcs_.size());
    arcs_.push_back({node_id(seg.a.coupler, seg.a.port, PortDir::Out),
                     node_id(seg.b.coupler, seg.b.port, PortDir::In),
                     ArcKind::Inter,
                     1,
                     forward + 1});
    arcs_.push_back({node_id(seg.b.coupler, seg.b.port, PortDir::Out),
                     node_id(seg.a.coupler, seg.a.port, PortDir::In),
                     ArcKind::Inter,
                     1,
                     forward});
  }

  std::vector<std::size_t> degree(nodes_.size(), 0);
  for (const auto& a : arcs_)
    ++degree[a.tail];
  out_offsets_.assign(nodes_.size() + 1, 0);
  for (std::size_t n = 0; n < nodes_.size(); ++n)
    out_offsets_[n + 1] = out_offsets_[n] + degree[n];
  out_list_.resize(arcs_.size());
  std::vector<std::size_t> fill(out_offsets_.begin(), out_offsets_.end() - 1);
  for (ArcId id = 0; id < arcs_.size(); ++id)
    out_list_[fill[arcs_[id].tail]++] = id;

  occupancy_.owner.assign(arcs_.size(), std::nullopt);
  occupancy_.status.assign(arcs_.size(), ArcStatus::Free);
  occupancy_.coupler_state.assign(couplers.size(), CouplerState::Available);
  reserved_.assign(couplers.size() * kPortsPerCoupler, std::nullopt);
}

std::span<const ArcId> RoutingResourceGraph::out_arcs(NodeId id) const
{
  return std::span<const ArcId>(out_list_).subspan(out_offsets_[id], out_offsets_[id + 1] - out_offsets_[id]);
}

NodeId RoutingResourceGraph::resolve(const Pin& pin) const
{
  if (pin.coupler >= mesh_->couplers().size() || pin.port < 0 || pin.port >= kPortsPerCoupler)
    throw std::out_of_range("pin does not name a node: coupler " + std::to_string(pin.coupler) + " port " +
                            std::to_string(pin.port));
  return node_id(pin.coupler, pin.port, pin.dir);
}

Pin RoutingResourceGraph::pin_of(NodeId id) const
{
  const auto& n = nodes_.at(id);
  return {n.coupler, n.port, n.dir};
}

bool RoutingResourceGraph::usable(ArcId id, std::optional<NetId> net, bool prefix) const
{
  const auto& a = arcs_[id];
  for (NodeId end : {a.tail, a.head})
  {
    const auto& n = nodes_[end];
    const auto& holder = reserved_[n.coupler * kPortsPerCoupler + static_cast<std::size_t>(n.port)];
    if (holder && holder != net)
      return false;
  }

  if (const auto& own = occupancy_.owner[id])
    return net && *own == *net && prefix;

  switch (occupancy_.status[id])
  {
    case ArcStatus::Free:
      return true;
    case ArcStatus::Active:
      return false;
    case ArcStatus::Forbidden:
      return net && prefix && a.kind == ArcKind::Intra && branch_allowed(id, *net);
  }
  return false;
}

bool RoutingResourceGraph::branch_allowed(ArcId id, NetId net) const
{
  // A net may split its own signal: the entering node already feeds one
  // output of this coupler for the same net, nothing else uses the coupler,
  // and the other output is still dark.
  const auto& a = arcs_[id];
  const CouplerId c = nodes_[a.tail].coupler;
  bool feeds = false;
  for (ArcId other : intra_arcs(c))
  {
    const auto& own = occupancy_.owner[other];
    if (!own)
      continue;
    if (*own != net || arcs_[other].tail != a.tail || arcs_[other].head == a.head)
      return false;
    feeds = true;
  }
  return feeds;
}

void RoutingResourceGraph::refresh_status()
{
  auto& occ = occupancy_;
  for (const auto& c : mesh_->couplers())
  {
    bool any = false;
    bool bar = false;
    bool cross = false;
    std::array<bool, kPortsPerCoupler> used_in{};
    std::array<bool, kPortsPerCoupler> used_out{};
    for (ArcId id : intra_arcs(c.id))
    {
      if (!occ.owner[id])
        continue;
      const auto& a = arcs_[id];
      const int from = nodes_[a.tail].port;
      const int to = nodes_[a.head].port;
      any = true;
      (is_bar_pair(from, to) ? bar : cross) = true;
      used_in[static_cast<std::size_t>(from)] = true;
      used_out[static_cast<std::size_t>(to)] = true;
    }
    CouplerState state = CouplerState::Available;
    if (any)
      state = (bar && cross) ? CouplerState::Partial : (bar ? CouplerState::Bar : CouplerState::Cross);
    occ.coupler_state[c.id] = state;

    for (ArcId id : intra_arcs(c.id))
    {
      if (occ.owner[id])
      {
        occ.status[id] = ArcStatus::Active;
        continue;
      }
      const auto& a = arcs_[id];
      const int from = nodes_[a.tail].port;
      const int to = nodes_[a.head].port;
      const bool pair_bar = is_bar_pair(from, to);
      bool excluded = state == CouplerState::Partial || (state == CouplerState::Bar && !pair_bar) ||
                      (state == CouplerState::Cross && pair_bar);
      // Light may not run both ways through one port.
      excluded = excluded || used_out[static_cast<std::size_t>(from)] || used_in[static_cast<std::size_t>(to)];
      occ.status[id] = excluded ? ArcStatus::Forbidden : ArcStatus::Free;
    }
  }

  for (ArcId id = 0; id < arcs_.size(); ++id)
  {
    const auto& a = arcs_[id];
    if (a.kind != ArcKind::Inter)
      continue;
    if (occ.owner[id])
      occ.status[id] = ArcStatus::Active;
    else
      occ.status[id] = occ.owner[a.opposite] ? ArcStatus::Forbidden : ArcStatus::Free;
  }
}

void RoutingResourceGraph::commit_path(std::span<const ArcId> path, NetId net)
{
  bool prefix = true;
  for (std::size_t i = 0; i < path.size(); ++i)
  {
    const ArcId id = path[i];
    if (id >= arcs_.size())
      throw CommitConflict("arc id out of range", i);
    if (!usable(id, net, prefix))
      throw CommitConflict("arc " + std::to_string(id) + " is not available to net " + std::to_string(net), i);
    prefix = prefix && occupancy_.owner[id] == net;
  }
  for (ArcId id : path)
    occupancy_.owner[id] = net;
  refresh_status();
}

void RoutingResourceGraph::rip_up(NetId net)
{
  for (auto& own : occupancy_.owner)
    if (own == net)
      own.reset();
  refresh_status();
}

std::vector<ArcId> RoutingResourceGraph::arcs_owned_by(NetId net) const
{
  std::vector<ArcId> out;
  for (ArcId id = 0; id < arcs_.size(); ++id)
    if (occupancy_.owner[id] == net)
      out.push_back(id);
  return out;
}

void RoutingResourceGraph::reserve_port(PortRef port, NetId net)
{
  reserved_.at(port.coupler * kPortsPerCoupler + static_cast<std::size_t>(port.port)) = net;
}

std::optional<NetId> RoutingResourceGraph::reservation(PortRef port) const
{
  return reserved_.at(port.coupler * kPortsPerCoupler + static_cast<std::size_t>(port.port));
}

void RoutingResourceGraph::clear_reservations() { std::fill(reserved_.begin(), reserved_.end(), std::nullopt); }

RoutingResourceGraph build_rrg(std::shared_ptr<const HexMesh> mesh)
{
  RoutingResourceGraph rrg(std::move(mesh));
  const auto problems = check_hex_formula(rrg.mesh());
  if (!problems.empty())
    throw MeshError("hexagonal estimator is not admissible/consistent on radius " +
                    std::to_string(rrg.mesh().radius()) + " mesh (" + std::to_string(problems.size()) +
                    " counterexamples)");
  return rrg;
}

RoutingResourceGraph build_rrg(const HexMesh& mesh) { return build_rrg(std::make_shared<const HexMesh>(mesh)); }

Length path_length(const RoutingResourceGraph& rrg, std::span<const ArcId> path)
{
  Length total = 0;
  for (ArcId id : path)
    total += rrg.arc(id).length;
  return total;
}

std::vector<Violation> validate_path(const RoutingResourceGraph& rrg,
                                     std::span<const ArcId> path,
                                     Length length,
                                     const PathCheck& check)
{
  std::vector<Violation> out;
  for (std::size_t i = 0; i < path.size(); ++i)
    if (path[i] >= rrg.arc_count())
    {
      out.push_back({PathRule::Contiguity, i, path[i], "unknown arc id"});
      return out;
    }

  if (path.empty())
  {
    if (length != 0)
      out.push_back({PathRule::LengthMismatch, 0, kNoArc, "empty path, expected " + std::to_string(length)});
    if (check.source && check.target && *check.source != *check.target)
      out.push_back({PathRule::Endpoint, 0, kNoArc, "empty path between distinct endpoints"});
    return out;
  }

  for (std::size_t i = 1; i < path.size(); ++i)
    if (rrg.arc(path[i - 1]).head != rrg.arc(path[i]).tail)
      out.push_back({PathRule::Contiguity, i, path[i], "tail does not meet previous head"});

  // Couplers in entry order; consecutive nodes of one coupler form one visit.
  const CouplerId first = rrg.coupler_of(rrg.arc(path.front()).tail);
  std::set<CouplerId> seen{first};
  CouplerId current = first;
  for (std::size_t i = 0; i < path.size(); ++i)
  {
    const CouplerId next = rrg.coupler_of(rrg.arc(path[i]).head);
    if (next == current)
      continue;
    current = next;
    if (!seen.insert(next).second)
    {
      const bool closes_ring = next == first && i + 1 == path.size();
      if (!closes_ring)
        out.push_back({PathRule::CouplerRevisit, i, path[i], "coupler " + std::to_string(next) + " entered twice"});
    }
  }

  std::set<ArcId> used;
  for (std::size_t i = 0; i < path.size(); ++i)
  {
    const auto& a = rrg.arc(path[i]);
    if (a.kind == ArcKind::Inter && used.contains(a.opposite))
      out.push_back({PathRule::OppositePair, i, path[i], "arc and its opposite both used"});
    used.insert(path[i]);
  }

  bool prefix = true;
  for (std::size_t i = 0; i < path.size(); ++i)
  {
    const ArcId id = path[i];
    if (!rrg.usable(id, check.net, prefix))
      out.push_back({PathRule::Blocked, i, id, "arc is " + to_string(rrg.status(id))});
    prefix = prefix && check.net && rrg.owner(id) == check.net;
  }

  if (const Length got = path_length(rrg, path); got != length)
    out.push_back({PathRule::LengthMismatch,
                   path.size() - 1,
                   path.back(),
                   "length " + std::to_string(got) + ", expected " + std::to_string(length)});

  if (check.source && rrg.arc(path.front()).tail != *check.source)
    out.push_back({PathRule::Endpoint, 0, path.front(), "does not start at the source"});
  if (check.target && rrg.arc(path.back()).head != *check.target)
    out.push_back({PathRule::Endpoint, path.size() - 1, path.back(), "does not end at the target"});
  return out;
}

}  // namespace hexroute
