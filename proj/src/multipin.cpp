#include "hexroute/multipin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hexroute/mesh_search.hpp"

namespace hexroute {

std::string to_string(Policy policy)
{
  switch (policy)
  {
    case Policy::Greedy:
      return "greedy";
    case Policy::HLM:
      return "hlm";
    case Policy::DSLM:
      return "dslm";
    case Policy::Lemar:
      return "lemar";
    case Policy::Auto:
      return "auto";
  }
  return "unknown";
}

std::optional<Policy> parse_policy(const std::string& name)
{
  for (auto p : {Policy::Greedy, Policy::HLM, Policy::DSLM, Policy::Lemar, Policy::Auto})
    if (to_string(p) == name)
      return p;
  return std::nullopt;
}

std::string to_string(FailReason reason)
{
  switch (reason)
  {
    case FailReason::Infeasible:
      return "infeasible";
    case FailReason::Exhausted:
      return "exhausted";
    case FailReason::Blocked:
      return "blocked";
  }
  return "unknown";
}

void check_netlist(const RoutingResourceGraph& rrg, const Netlist& netlist)
{
  std::set<PortRef> taken;
  std::set<NetId> ids;
  for (const auto& net : netlist.nets)
  {
    const std::string where = "net " + std::to_string(net.id);
    if (!ids.insert(net.id).second)
      throw NetlistError(where + ": duplicate net id");
    if (net.sinks.empty())
      throw NetlistError(where + ": no sinks");
    std::set<PortRef> own;
    auto claim = [&](const Pin& pin) {
      try
      {
        rrg.resolve(pin);
      }
      catch (const std::out_of_range& e)
      {
        throw NetlistError(where + ": " + e.what());
      }
      const PortRef port{pin.coupler, pin.port};
      if (!own.insert(port).second)
        throw NetlistError(where + ": pin on coupler " + std::to_string(pin.coupler) + " port " +
                           std::to_string(pin.port) + " used twice");
    };
    claim(net.source);
    for (const auto& sink : net.sinks)
    {
      if (sink.length < 0)
        throw NetlistError(where + ": negative length");
      claim(sink.pin);
    }
    if (!netlist.independent)
      for (const auto& port : own)
        if (!taken.insert(port).second)
          throw NetlistError(where + ": pin on coupler " + std::to_string(port.coupler) + " port " +
                             std::to_string(port.port) + " belongs to another net");
  }
}

DetourMargin detour_margin(const RoutingResourceGraph& rrg,
                           NodeId source,
                           NodeId sink,
                           Length length,
                           const Estimator& estimator,
                           std::optional<NetId> net)
{
  const MeshSearchSpace space(rrg, net);
  const SearchProblem problem{.space = space, .source = source, .target = sink, .length = 0, .estimator = estimator};
  const auto out = shortest_path(problem);
  if (!out.found())
    return {0, false};
  return {length - out.length, true};
}

std::vector<std::size_t> order_by_margin(std::span<const DetourMargin> margins)
{
  std::vector<std::size_t> order(margins.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (margins[a].reachable != margins[b].reachable)
      return margins[a].reachable;
    return margins[a].reachable && margins[a].value < margins[b].value;
  });
  return order;
}

namespace {

std::vector<DetourMargin> sink_margins(const RoutingResourceGraph& rrg, const Net& net, const Estimator& estimator)
{
  const NodeId source = rrg.resolve(net.source);
  std::vector<DetourMargin> margins;
  for (const auto& sink : net.sinks)
    margins.push_back(detour_margin(rrg, source, rrg.resolve(sink.pin), sink.length, estimator, net.id));
  return margins;
}

FailReason reason_for(const SearchOutcome& out, const DetourMargin& margin)
{
  switch (out.status)
  {
    case SearchStatus::Exhausted:
      return FailReason::Exhausted;
    case SearchStatus::Infeasible:
      return FailReason::Infeasible;
    default:
      return (margin.reachable && margin.value < 0) ? FailReason::Infeasible : FailReason::Blocked;
  }
}

RouteResult attempt(RoutingResourceGraph& rrg,
                    const Net& net,
                    Strategy strategy,
                    const Estimator& estimator,
                    const RouteConfig& config)
{
  RouteResult result;
  result.net = net.id;
  result.strategy_used = to_string(strategy);
  result.sinks.resize(net.sinks.size());
  for (std::size_t i = 0; i < net.sinks.size(); ++i)
  {
    result.sinks[i].index = i;
    result.sinks[i].required = net.sinks[i].length;
  }

  const auto margins = sink_margins(rrg, net, estimator);
  result.order = order_by_margin(margins);

  const NodeId source = rrg.resolve(net.source);
  MeshSearchSpace space(rrg, net.id);
  std::vector<NodeId> stops;
  for (const auto& sink : net.sinks)
    stops.push_back(rrg.resolve(sink.pin));
  space.set_stops(std::move(stops));
  for (std::size_t i : result.order)
  {
    const auto& sink = net.sinks[i];
    const SearchProblem problem{.space = space,
                                .source = source,
                                .target = rrg.resolve(sink.pin),
                                .length = sink.length,
                                .estimator = estimator,
                                .push_budget = config.push_budget,
                                .seed = config.seed,
                                .trace = config.trace};
    auto out = run_strategy(strategy, problem);
    auto& route = result.sinks[i];
    route.stats = out.stats;
    route.fallback = out.fallback;
    result.stats += out.stats;
    if (!out.found())
    {
      result.failed_sink = i;
      result.reason = reason_for(out, margins[i]);
      result.detail = "sink " + std::to_string(i) + ": " + out.reason;
      rrg.rip_up(net.id);
      return result;
    }
    route.routed = true;
    route.length = out.length;
    route.path = std::move(out.path);
    rrg.commit_path(route.path, net.id);
  }

  result.routed = true;
  std::vector<std::vector<ArcId>> paths;
  std::set<ArcId> tree;
  for (const auto& s : result.sinks)
  {
    paths.push_back(s.path);
    tree.insert(s.path.begin(), s.path.end());
  }
  result.tree.assign(tree.begin(), tree.end());
  result.twl = total_wire_length(rrg, paths);
  return result;
}

}  // namespace

std::vector<std::size_t> order_sinks(const RoutingResourceGraph& rrg, const Net& net, const Estimator& estimator)
{
  return order_by_margin(sink_margins(rrg, net, estimator));
}

Length total_wire_length(const RoutingResourceGraph& rrg, std::span<const std::vector<ArcId>> paths)
{
  std::set<ArcId> all;
  for (const auto& p : paths)
    all.insert(p.begin(), p.end());
  Length total = 0;
  for (ArcId id : all)
    total += rrg.arc(id).length;
  return total;
}

RouteResult route_net(RoutingResourceGraph& rrg,
                      const Net& net,
                      Policy policy,
                      const Estimator& estimator,
                      const RouteConfig& config)
{
  const auto start = std::chrono::steady_clock::now();
  RouteResult result;
  switch (policy)
  {
    case Policy::Greedy:
      result = attempt(rrg, net, Strategy::Greedy, estimator, config);
      break;
    case Policy::HLM:
      result = attempt(rrg, net, Strategy::HLM, estimator, config);
      break;
    case Policy::DSLM:
      result = attempt(rrg, net, Strategy::DSLM, estimator, config);
      break;
    case Policy::Lemar:
      result = attempt(rrg, net, Strategy::Lemar, estimator, config);
      break;
    case Policy::Auto:
    {
      result = attempt(rrg, net, Strategy::HLM, estimator, config);
      if (!result.routed)
      {
        const SearchStats spent = result.stats;
        result = attempt(rrg, net, Strategy::DSLM, estimator, config);
        result.stats += spent;
        result.strategy_used = "dslm-fallback";
      }
      break;
    }
  }
  result.stats.duration =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return result;
}

RouteResult route_net(RoutingResourceGraph& rrg, const Net& net, Policy policy, const RouteConfig& config)
{
  const MeshEstimator estimator(rrg, config.backend);
  return route_net(rrg, net, policy, estimator, config);
}

NetlistResult route_netlist(RoutingResourceGraph& rrg, const Netlist& netlist, Policy policy, const RouteConfig& config)
{
  check_netlist(rrg, netlist);
  const MeshEstimator estimator(rrg, config.backend);
  NetlistResult out;
  out.nets.resize(netlist.nets.size());

  auto reserve = [](RoutingResourceGraph& g, const Net& net) {
    g.reserve_port({net.source.coupler, net.source.port}, net.id);
    for (const auto& sink : net.sinks)
      g.reserve_port({sink.pin.coupler, sink.pin.port}, net.id);
  };

  std::vector<std::size_t> order(netlist.nets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (config.net_order == NetOrder::Margin)
  {
    std::vector<std::pair<bool, Length>> total(netlist.nets.size(), {true, 0});
    for (std::size_t i = 0; i < netlist.nets.size(); ++i)
      for (const auto& m : sink_margins(rrg, netlist.nets[i], estimator))
      {
        total[i].first = total[i].first && m.reachable;
        total[i].second += m.value;
      }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (total[a].first != total[b].first)
        return total[a].first;
      return total[a].second < total[b].second;
    });
  }

  if (!netlist.independent)
    for (const auto& net : netlist.nets)
      reserve(rrg, net);

  for (std::size_t i : order)
  {
    const Net& net = netlist.nets[i];
    if (netlist.independent)
    {
      RoutingResourceGraph copy = rrg;
      copy.clear_reservations();
      reserve(copy, net);
      out.nets[i] = route_net(copy, net, policy, estimator, config);
    }
    else
    {
      out.nets[i] = route_net(rrg, net, policy, estimator, config);
    }
  }

  for (const auto& r : out.nets)
  {
    (r.routed ? out.routed : out.failed) += 1;
    out.stats += r.stats;
    out.twl += r.twl;
  }
  return out;
}

bool is_out_tree(const RoutingResourceGraph& rrg, std::span<const ArcId> arcs, NodeId root)
{
  std::map<NodeId, int> indegree;
  std::map<NodeId, std::vector<NodeId>> children;
  for (ArcId id : arcs)
  {
    const auto& a = rrg.arc(id);
    if (++indegree[a.head] > 1 || a.head == root)
      return false;
    children[a.tail].push_back(a.head);
  }
  std::set<NodeId> reached{root};
  std::vector<NodeId> stack{root};
  while (!stack.empty())
  {
    const NodeId n = stack.back();
    stack.pop_back();
    for (NodeId c : children[n])
      if (reached.insert(c).second)
        stack.push_back(c);
  }
  return std::all_of(arcs.begin(), arcs.end(), [&](ArcId id) { return reached.contains(rrg.arc(id).head); });
}

}  // namespace hexroute
