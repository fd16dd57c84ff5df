#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hexroute/heuristic.hpp"
#include "hexroute/rrg.hpp"
#include "hexroute/search.hpp"

namespace hexroute {

struct Sink
{
  Pin pin;
  /// Required exact length in segments.
  Length length = 0;
};

struct Net
{
  NetId id = 0;
  std::string name;
  Pin source;
  std::vector<Sink> sinks;
};

struct Netlist
{
  int radius = 0;
  std::vector<Net> nets;
  /// Route every net on its own copy of the empty mesh instead of one shared
  /// mesh. Nets may then share pins.
  bool independent = false;
};

class NetlistError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Throws NetlistError when a net has no sink, a negative length, a sink on
/// its own source, a pin outside the graph, or (shared mode) a pin used by
/// two nets.
void check_netlist(const RoutingResourceGraph& rrg, const Netlist& netlist);

enum class Policy : std::uint8_t
{
  Greedy,
  HLM,
  DSLM,
  Lemar,
  /// H-LM first; on any failure the net is ripped up and rerouted with DS-LM.
  Auto
};

std::string to_string(Policy policy);
std::optional<Policy> parse_policy(const std::string& name);

enum class NetOrder : std::uint8_t
{
  Submission,
  /// Ascending sum of sink detour margins, ties in submission order.
  Margin
};

struct RouteConfig
{
  HeuristicBackend backend = HeuristicBackend::HexFormula;
  std::uint64_t push_budget = kDefaultPushBudget;
  std::uint64_t seed = 0;
  NetOrder net_order = NetOrder::Submission;
  /// Receives the events of every sink search, in routing order.
  TraceSink* trace = nullptr;
};

struct DetourMargin
{
  /// L_exp minus the current shortest length; meaningless when unreachable.
  Length value = 0;
  bool reachable = true;
};

/// Slack of one sink on the current occupancy, seen by net `net`.
DetourMargin detour_margin(const RoutingResourceGraph& rrg,
                           NodeId source,
                           NodeId sink,
                           Length length,
                           const Estimator& estimator,
                           std::optional<NetId> net = std::nullopt);

/// Ascending margin, ties in submission order, unreachable sinks last.
std::vector<std::size_t> order_by_margin(std::span<const DetourMargin> margins);
std::vector<std::size_t> order_sinks(const RoutingResourceGraph& rrg, const Net& net, const Estimator& estimator);

enum class FailReason : std::uint8_t
{
  Infeasible,
  Exhausted,
  Blocked
};

std::string to_string(FailReason reason);

struct SinkRoute
{
  std::size_t index = 0;
  Length required = 0;
  bool routed = false;
  std::vector<ArcId> path;
  Length length = 0;
  SearchStats stats;
  /// DS-LM had to fall back to a fresh H-LM pass.
  bool fallback = false;
};

struct RouteResult
{
  NetId net = 0;
  bool routed = false;
  /// Failed runs only.
  std::optional<std::size_t> failed_sink;
  std::optional<FailReason> reason;
  std::string detail;
  /// Strategy of the final attempt; "dslm-fallback" when Auto switched.
  std::string strategy_used;
  std::vector<std::size_t> order;
  /// Indexed like Net::sinks; unrouted sinks keep routed = false.
  std::vector<SinkRoute> sinks;
  /// Sorted union of the sink paths.
  std::vector<ArcId> tree;
  Length twl = 0;
  /// Sum over every attempt, including a ripped-up H-LM attempt.
  SearchStats stats;
};

/// Segment count of the union of several paths, shared arcs counted once.
Length total_wire_length(const RoutingResourceGraph& rrg, std::span<const std::vector<ArcId>> paths);

/// Routes the sinks one by one in margin order and commits each path. A
/// failed net is ripped up again, so the graph is left as it was found.
RouteResult route_net(RoutingResourceGraph& rrg,
                      const Net& net,
                      Policy policy,
                      const Estimator& estimator,
                      const RouteConfig& config = {});
RouteResult route_net(RoutingResourceGraph& rrg, const Net& net, Policy policy, const RouteConfig& config = {});

struct NetlistResult
{
  std::vector<RouteResult> nets;
  std::size_t routed = 0;
  std::size_t failed = 0;
  SearchStats stats;
  Length twl = 0;
};

/// Reserves every pin, then routes the nets in the configured order. Failed
/// nets do not roll back earlier ones. Results come back in submission order.
NetlistResult route_netlist(RoutingResourceGraph& rrg, const Netlist& netlist, Policy policy, const RouteConfig& config = {});

/// Whether the arcs form an out-tree rooted at `root`: every node has at
/// most one incoming arc and every arc is reachable from the root.
bool is_out_tree(const RoutingResourceGraph& rrg, std::span<const ArcId> arcs, NodeId root);

}  // namespace hexroute
