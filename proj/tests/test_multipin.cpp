#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hexroute/multipin.hpp"
#include "hexroute/oracle.hpp"
#include "support.hpp"

using namespace hexroute;
using hexroute::testing::Bench;

namespace {

NodeId in(CouplerId c, int port) { return RoutingResourceGraph::node_id(c, port, PortDir::In); }
NodeId out(CouplerId c, int port) { return RoutingResourceGraph::node_id(c, port, PortDir::Out); }

// In pin of `a` and Out pin of `b` at directed distance `want`.
std::optional<std::pair<Pin, Pin>> pins_at(const Bench& b, Length want, CouplerId from = 0)
{
  const auto n = static_cast<CouplerId>(b.rrg.mesh().couplers().size());
  for (CouplerId a = from; a < n; ++a)
    for (CouplerId c = 0; c < n; ++c)
      if (b.exact.at(a, c) == want)
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q)
            if (b.distance(in(a, p), out(c, q)) == want)
              return std::pair{b.rrg.pin_of(in(a, p)), b.rrg.pin_of(out(c, q))};
  return std::nullopt;
}

// Smallest oracle-feasible length of at least `from`.
Length feasible_at_least(const Bench& b, const Pin& s, const Pin& t, Length from)
{
  const auto set = enumerate_paths(b.rrg, b.rrg.resolve(s), b.rrg.resolve(t), {.max_length = from + 6});
  for (Length l : set.lengths())
    if (l >= from)
      return l;
  return kUnreachable;
}

void check_invariants(const RoutingResourceGraph& g, const Netlist& nl, const NetlistResult& r)
{
  // Cross-net exclusivity and opposite exclusion over the final state.
  for (ArcId id = 0; id < g.arc_count(); ++id)
    if (g.arc(id).kind == ArcKind::Inter && g.owner(id))
      CHECK_FALSE(g.owner(g.arc(id).opposite).has_value());
  std::map<ArcId, NetId> claimed;
  for (std::size_t i = 0; i < r.nets.size(); ++i)
  {
    const auto& res = r.nets[i];
    const auto& net = nl.nets[i];
    if (!res.routed)
    {
      CHECK(g.arcs_owned_by(net.id).empty());
      continue;
    }
    CHECK(is_out_tree(g, res.tree, g.resolve(net.source)));
    Length sum = 0;
    for (std::size_t s = 0; s < net.sinks.size(); ++s)
    {
      const auto& sr = res.sinks[s];
      CHECK(sr.routed);
      CHECK(sr.length == net.sinks[s].length);
      CHECK(path_length(g, sr.path) == net.sinks[s].length);
      CHECK(g.arc(sr.path.back()).head == g.resolve(net.sinks[s].pin));
      sum += sr.length;
    }
    CHECK(res.twl <= sum);
    // Sink pins are leaves of the tree.
    for (ArcId id : res.tree)
      for (const auto& sink : net.sinks)
        CHECK(g.arc(id).tail != g.resolve(sink.pin));
    for (ArcId id : res.tree)
    {
      CHECK(g.owner(id) == net.id);
      CHECK(claimed.emplace(id, net.id).second);
    }
  }
}

}  // namespace

TEST_CASE("margin ordering")
{
  const std::vector<DetourMargin> m{{4, true}, {0, true}, {2, true}};
  CHECK(order_by_margin(m) == std::vector<std::size_t>{1, 2, 0});
  const std::vector<DetourMargin> same{{3, true}, {3, true}, {3, true}};
  CHECK(order_by_margin(same) == std::vector<std::size_t>{0, 1, 2});
  const std::vector<DetourMargin> blocked{{0, false}, {5, true}, {-1, true}};
  CHECK(order_by_margin(blocked) == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("detour margins")
{
  Bench b(3);
  const auto pins = pins_at(b, 8);
  REQUIRE(pins);
  const NodeId s = b.rrg.resolve(pins->first);
  const NodeId t = b.rrg.resolve(pins->second);
  CHECK(detour_margin(b.rrg, s, t, 8, b.estimator).value == 0);
  CHECK(detour_margin(b.rrg, s, t, 12, b.estimator).value == 4);
  CHECK(detour_margin(b.rrg, s, t, 12, b.estimator).reachable);

  // Block all inter arcs entering the sink coupler.
  std::vector<ArcId> blockers;
  for (ArcId id = 0; id < b.rrg.arc_count(); ++id)
  {
    const auto& a = b.rrg.arc(id);
    if (a.kind == ArcKind::Inter && b.rrg.coupler_of(a.head) == pins->second.coupler)
      blockers.push_back(a.opposite);
  }
  NetId blocker_net = 100;
  for (ArcId id : blockers)
  {
    const ArcId one[] = {id};
    b.rrg.commit_path(one, blocker_net++);
  }
  const auto m = detour_margin(b.rrg, s, t, 12, b.estimator);
  CHECK_FALSE(m.reachable);
}

TEST_CASE("wire length counts shared arcs once")
{
  const Bench b(3);
  std::vector<ArcId> inter;
  for (ArcId id = 0; id < b.rrg.arc_count(); ++id)
    if (b.rrg.arc(id).kind == ArcKind::Inter)
      inter.push_back(id);
  std::vector<ArcId> arm_a(inter.begin(), inter.begin() + 10);
  std::vector<ArcId> arm_b(inter.begin(), inter.begin() + 3);
  arm_b.insert(arm_b.end(), inter.begin() + 20, inter.begin() + 29);
  const std::vector<std::vector<ArcId>> both{arm_a, arm_b};
  CHECK(total_wire_length(b.rrg, both) == 10 + 12 - 3);
}

TEST_CASE("single-sink net at the shortest length")
{
  Bench b(2);
  const auto pins = pins_at(b, 6);
  REQUIRE(pins);
  const Net net{.id = 1, .name = "n", .source = pins->first, .sinks = {{pins->second, 6}}};
  const auto r = route_net(b.rrg, net, Policy::HLM);
  REQUIRE(r.routed);
  CHECK(r.twl == 6);
  CHECK(r.strategy_used == "hlm");
  CHECK(b.rrg.arcs_owned_by(1) == r.tree);
}

TEST_CASE("two sinks of one net share their common prefix")
{
  Bench b(3);
  // Two sinks on the same far coupler: both paths must run the same way
  // out of the source, so they share a prefix and branch.
  const auto pins = pins_at(b, 6, 40);
  REQUIRE(pins);
  const Pin other{pins->second.coupler, pins->second.port ^ 1, PortDir::Out};
  const NodeId s = b.rrg.resolve(pins->first);
  const Length d2 = b.distance(s, b.rrg.resolve(other));
  REQUIRE(d2 < kUnreachable);
  const Net net{.id = 4, .name = "pair", .source = pins->first, .sinks = {{pins->second, 10}, {other, d2 + 4}}};
  for (Policy policy : {Policy::HLM, Policy::DSLM})
  {
    Bench fresh(3);
    const auto r = route_net(fresh.rrg, net, policy);
    REQUIRE(r.routed);
    CHECK(is_out_tree(fresh.rrg, r.tree, s));
    const Length sum = r.sinks[0].length + r.sinks[1].length;
    std::set<ArcId> a(r.sinks[0].path.begin(), r.sinks[0].path.end());
    Length shared = 0;
    for (ArcId id : r.sinks[1].path)
      if (a.contains(id))
        shared += fresh.rrg.arc(id).length;
    CHECK(r.twl == sum - shared);
  }
}

TEST_CASE("auto policy keeps H-LM when it succeeds")
{
  Bench b(2);
  const auto pins = pins_at(b, 6);
  REQUIRE(pins);
  const Length l = feasible_at_least(b, pins->first, pins->second, 8);
  REQUIRE(l < kUnreachable);
  const Net net{.id = 2, .source = pins->first, .sinks = {{pins->second, l}}};
  const auto r = route_net(b.rrg, net, Policy::Auto);
  REQUIRE(r.routed);
  CHECK(r.strategy_used == "hlm");
}

TEST_CASE("failed nets are ripped up")
{
  Bench b(2);
  const auto pins = pins_at(b, 6);
  REQUIRE(pins);
  const auto before = b.rrg.occupancy();
  // Second sink asks for an odd offset on a quantized pair.
  const Net net{.id = 3, .source = pins->first, .sinks = {{pins->second, 6}}};
  const Net bad{.id = 3, .source = pins->first, .sinks = {{pins->second, 4}}};
  auto r = route_net(b.rrg, bad, Policy::Auto);
  CHECK_FALSE(r.routed);
  CHECK(r.reason == FailReason::Infeasible);
  CHECK(r.failed_sink == 0u);
  CHECK(r.strategy_used == "dslm-fallback");
  CHECK(b.rrg.occupancy() == before);

  auto small = RouteConfig{};
  small.push_budget = 3;
  const Net far{.id = 3, .source = pins->first, .sinks = {{pins->second, 20}}};
  r = route_net(b.rrg, far, Policy::HLM, small);
  CHECK_FALSE(r.routed);
  CHECK(r.reason == FailReason::Exhausted);
  CHECK(b.rrg.occupancy() == before);

  r = route_net(b.rrg, net, Policy::HLM);
  CHECK(r.routed);
}

TEST_CASE("netlist routing")
{
  SUBCASE("empty netlist")
  {
    Bench b(1);
    const auto r = route_netlist(b.rrg, Netlist{.radius = 1}, Policy::Auto);
    CHECK(r.nets.empty());
    CHECK(r.routed == 0);
  }

  SUBCASE("two far-apart nets are both routed on disjoint arcs")
  {
    Bench b(3);
    const auto& couplers = b.rrg.mesh().couplers();
    // Pick two short pairs in opposite corners of the mesh.
    auto near_pair = [&](bool low) -> Net {
      for (std::size_t k = 0; k < couplers.size(); ++k)
      {
        const CouplerId a = static_cast<CouplerId>(low ? k : couplers.size() - 1 - k);
        for (CouplerId c = 0; c < couplers.size(); ++c)
          if (b.exact.at(a, c) == 3)
            for (int p = 0; p < 4; ++p)
              for (int q = 0; q < 4; ++q)
                if (b.distance(in(a, p), out(c, q)) == 3)
                {
                  const Pin s = b.rrg.pin_of(in(a, p));
                  const Pin t = b.rrg.pin_of(out(c, q));
                  if (feasible_at_least(b, s, t, 5) == 5)
                    return Net{.id = low ? 1u : 2u, .source = s, .sinks = {{t, 5}}};
                }
      }
      return {};
    };
    const Netlist nl{.radius = 3, .nets = {near_pair(true), near_pair(false)}};
    const auto r = route_netlist(b.rrg, nl, Policy::HLM);
    CHECK(r.routed == 2);
    check_invariants(b.rrg, nl, r);
  }

  SUBCASE("nets competing for the same lane never share arcs")
  {
    Bench b(2);
    const auto pins = pins_at(b, 4);
    REQUIRE(pins);
    const Pin src2{pins->first.coupler, pins->first.port ^ 1, PortDir::In};
    const Pin dst2{pins->second.coupler, pins->second.port ^ 1, PortDir::Out};
    const Netlist nl{.radius = 2,
                     .nets = {Net{.id = 1, .source = pins->first, .sinks = {{pins->second, 4}}},
                              Net{.id = 2, .source = src2, .sinks = {{dst2, 4}}}}};
    const auto r = route_netlist(b.rrg, nl, Policy::Auto);
    CHECK(r.nets[0].routed);
    check_invariants(b.rrg, nl, r);
  }

  SUBCASE("shared pins are rejected unless nets are independent")
  {
    Bench b(2);
    const auto pins = pins_at(b, 4);
    REQUIRE(pins);
    Netlist nl{.radius = 2,
               .nets = {Net{.id = 1, .source = pins->first, .sinks = {{pins->second, 4}}},
                        Net{.id = 2, .source = pins->first, .sinks = {{pins->second, 6}}}}};
    CHECK_THROWS_AS(route_netlist(b.rrg, nl, Policy::HLM), NetlistError);
    nl.independent = true;
    const auto before = b.rrg.occupancy();
    const auto r = route_netlist(b.rrg, nl, Policy::HLM);
    CHECK(r.routed == 2);
    CHECK(b.rrg.occupancy() == before);
  }

  SUBCASE("malformed nets")
  {
    Bench b(1);
    CHECK_THROWS_AS(check_netlist(b.rrg, Netlist{.nets = {Net{.id = 1, .source = {0, 0, PortDir::In}}}}), NetlistError);
    CHECK_THROWS_AS(check_netlist(b.rrg,
                                  Netlist{.nets = {Net{.id = 1,
                                                       .source = {0, 0, PortDir::In},
                                                       .sinks = {{Pin{0, 0, PortDir::Out}, 3}}}}}),
                    NetlistError);
    CHECK_THROWS_AS(check_netlist(b.rrg,
                                  Netlist{.nets = {Net{.id = 1,
                                                       .source = {0, 0, PortDir::In},
                                                       .sinks = {{Pin{999, 0, PortDir::Out}, 3}}}}}),
                    NetlistError);
  }
}

TEST_CASE("random multi-sink netlists keep every invariant")
{
  std::mt19937 rng(3);
  for (int round = 0; round < 20; ++round)
  {
    Bench b(3);
    std::uniform_int_distribution<CouplerId> coupler(0, static_cast<CouplerId>(b.rrg.mesh().couplers().size() - 1));
    std::uniform_int_distribution<int> port(0, 3);
    std::set<PortRef> used;
    auto fresh_pin = [&](PortDir dir) {
      for (;;)
      {
        const Pin p{coupler(rng), port(rng), dir};
        if (used.insert({p.coupler, p.port}).second)
          return p;
      }
    };
    Netlist nl{.radius = 3};
    for (NetId id = 1; id <= 3; ++id)
    {
      Net net{.id = id, .source = fresh_pin(PortDir::In)};
      for (int k = 0; k < 3; ++k)
      {
        const Pin sink = fresh_pin(PortDir::Out);
        const Length d = b.distance(b.rrg.resolve(net.source), b.rrg.resolve(sink));
        net.sinks.push_back({sink, d == kUnreachable ? 6 : d + 2 * static_cast<Length>(rng() % 3)});
      }
      nl.nets.push_back(net);
    }
    for (Policy policy : {Policy::HLM, Policy::DSLM, Policy::Auto})
    {
      Bench g(3);
      auto config = RouteConfig{};
      config.push_budget = 200'000;
      const auto r = route_netlist(g.rrg, nl, policy, config);
      CHECK(r.routed + r.failed == nl.nets.size());
      check_invariants(g.rrg, nl, r);
    }
  }
}

TEST_CASE("policy names round-trip")
{
  for (Policy p : {Policy::Greedy, Policy::HLM, Policy::DSLM, Policy::Lemar, Policy::Auto})
    CHECK(parse_policy(to_string(p)) == p);
  CHECK_FALSE(parse_policy("pathfinder").has_value());
}
