#include <algorithm>
#include <set>

#include "doctest.h"
#include "hexroute/benchgen.hpp"
#include "hexroute/oracle.hpp"
#include "support.hpp"

using namespace hexroute;
using hexroute::testing::Bench;

namespace {

const Net& net_by_id(const Netlist& nl, NetId id)
{
  auto it = std::find_if(nl.nets.begin(), nl.nets.end(), [&](const Net& n) { return n.id == id; });
  REQUIRE(it != nl.nets.end());
  return *it;
}

void check_routed(const Benchmark& bench)
{
  const auto result = certify(bench);
  CHECK(result.failed == 0);
  for (std::size_t i = 0; i < result.nets.size(); ++i)
    for (std::size_t k = 0; k < bench.netlist.nets[i].sinks.size(); ++k)
      CHECK(result.nets[i].sinks[k].length == bench.netlist.nets[i].sinks[k].length);
}

}  // namespace

TEST_CASE("mzi placement")
{
  Bench b(2);
  for (Length length : {7, 8})
  {
    CAPTURE(length);
    const auto bench = gen_mzi(2, length);
    CHECK(bench.spec.family == Family::MZI);
    REQUIRE(bench.netlist.nets.size() == 4);
    const auto& upper = net_by_id(bench.netlist, 1);
    const auto& lower = net_by_id(bench.netlist, 2);
    const CouplerId splitter = upper.source.coupler;
    const CouplerId combiner = upper.sinks[0].pin.coupler;
    CHECK(lower.source.coupler == splitter);
    CHECK(lower.sinks[0].pin.coupler == combiner);
    CHECK(b.exact.at(splitter, combiner) == kMziDistance);

    // Both arms have a legal path of exactly L on the empty mesh.
    for (const Net* arm : {&upper, &lower})
    {
      CHECK(arm->sinks[0].length == length);
      const auto set =
          enumerate_paths(b.rrg, b.rrg.resolve(arm->source), b.rrg.resolve(arm->sinks[0].pin), {.max_length = length});
      CHECK(set.contains(length));
    }

    // Input and output connections are plain shortest paths.
    for (NetId id : {NetId{3}, NetId{4}})
    {
      const auto& io = net_by_id(bench.netlist, id);
      CHECK(io.sinks[0].length == b.distance(b.rrg.resolve(io.source), b.rrg.resolve(io.sinks[0].pin)));
    }
    check_routed(bench);
  }
}

TEST_CASE("mzi rejects unroutable requests")
{
  CHECK_THROWS_AS(gen_mzi(0, 8), BenchgenError);
  // No distance-3 placement carries two arms of length 3.
  CHECK_THROWS_AS(gen_mzi(2, 3), BenchgenError);
}

TEST_CASE("ring resonator")
{
  CHECK(minimal_ring_length(1) == 6);
  CHECK(minimal_ring_length(2) == 6);

  const auto bench = gen_orr(2, 10);
  REQUIRE(bench.netlist.nets.size() == 1);
  const auto& ring = bench.netlist.nets[0];
  CHECK(ring.source.coupler == ring.sinks[0].pin.coupler);
  CHECK(ring.sinks[0].length == 10);
  check_routed(bench);

  CHECK_NOTHROW(gen_orr(1, 6));
  CHECK_THROWS_AS(gen_orr(2, 4), BenchgenError);
  // Closed rings skip 8 segments.
  CHECK_THROWS_AS(gen_orr(2, 8), BenchgenError);
}

TEST_CASE("delay lines")
{
  Bench b(3);
  const auto bench = gen_ottd(3, {8, 12});
  REQUIRE(bench.netlist.nets.size() == 2);
  CHECK(bench.netlist.independent);
  for (const auto& net : bench.netlist.nets)
  {
    const NodeId s = b.rrg.resolve(net.source);
    const NodeId t = b.rrg.resolve(net.sinks[0].pin);
    CHECK(b.exact.at(net.source.coupler, net.sinks[0].pin.coupler) == kOttdDistance);
    CHECK(b.distance(s, t) == kOttdDistance);
  }
  CHECK(bench.netlist.nets[0].sinks[0].length == 8);
  check_routed(bench);

  CHECK_THROWS_AS(gen_ottd(1, {8}), BenchgenError);
  CHECK_THROWS_AS(gen_ottd(3, {}), BenchgenError);
}

TEST_CASE("length sweep")
{
  Bench b(3);
  const auto bench = gen_sweep(3, parse_lengths("8:26:2"), 3);
  CHECK(bench.spec.family == Family::Sweep);
  CHECK(bench.spec.lengths == std::vector<Length>{8, 10, 12, 14, 16, 18, 20, 22, 24, 26});
  REQUIRE(bench.netlist.nets.size() == 30);
  std::set<CouplerId> sources;
  for (const auto& net : bench.netlist.nets)
  {
    sources.insert(net.source.coupler);
    CHECK(b.distance(b.rrg.resolve(net.source), b.rrg.resolve(net.sinks[0].pin)) == kOttdDistance);
  }
  CHECK(sources.size() == 3);
  CHECK(bench.netlist.nets[11].name == "p1_L10");

  CHECK_THROWS_AS(gen_sweep(3, {}, 1), BenchgenError);
  CHECK_THROWS_AS(gen_sweep(3, {8}, 0), BenchgenError);
  CHECK_THROWS_AS(gen_sweep(1, {8}, 1), BenchgenError);
}

TEST_CASE("multicast nets")
{
  const auto first = gen_multicast(3, 6, 10, 5);
  const auto again = gen_multicast(3, 6, 10, 5);
  REQUIRE(first.size() == 10);
  Bench b(3);
  const MeshEstimator est(b.rrg, HeuristicBackend::HexFormula);
  for (std::size_t i = 0; i < first.size(); ++i)
  {
    const auto& net = first[i].netlist.nets.at(0);
    REQUIRE(net.sinks.size() == 6);
    std::set<Length> lengths;
    std::set<CouplerId> couplers;
    for (const auto& sink : net.sinks)
    {
      lengths.insert(sink.length);
      couplers.insert(sink.pin.coupler);
    }
    CHECK(lengths.size() == 6);
    CHECK(couplers.size() == 6);

    // Margin order is strictly ascending: the offsets are distinct.
    const auto order = order_sinks(b.rrg, net, est);
    const NodeId s = b.rrg.resolve(net.source);
    Length previous = -1;
    for (std::size_t k : order)
    {
      const auto m = detour_margin(b.rrg, s, b.rrg.resolve(net.sinks[k].pin), net.sinks[k].length, est, net.id);
      REQUIRE(m.reachable);
      CHECK(m.value % 2 == 0);
      CHECK(m.value > previous);
      previous = m.value;
    }

    const auto& twin = again[i].netlist.nets.at(0);
    CHECK(twin.source == net.source);
    REQUIRE(twin.sinks.size() == net.sinks.size());
    for (std::size_t k = 0; k < net.sinks.size(); ++k)
    {
      CHECK(twin.sinks[k].pin == net.sinks[k].pin);
      CHECK(twin.sinks[k].length == net.sinks[k].length);
    }
    CHECK(certify(first[i]).failed == 0);
  }
  CHECK(gen_multicast(3, 6, 1, 6).front().netlist.nets[0].source != first.front().netlist.nets[0].source);
}

TEST_CASE("suites")
{
  for (Family f : {Family::MZI, Family::ORR, Family::OTTD})
  {
    CAPTURE(to_string(f));
    const auto suite = gen_suite(f, 8, 1);
    REQUIRE(suite.size() == 8);
    std::set<std::string> names;
    for (const auto& bench : suite)
      names.insert(bench.name);
    CHECK(names.size() == 8);
  }
  CHECK_THROWS_AS(gen_suite(Family::Multicast, 4, 1), BenchgenError);
}

TEST_CASE("length lists")
{
  CHECK(parse_lengths("8:14:2") == std::vector<Length>{8, 10, 12, 14});
  CHECK(parse_lengths("12") == std::vector<Length>{12});
  CHECK(parse_lengths("8,11,9") == std::vector<Length>{8, 11, 9});
  CHECK_THROWS_AS(parse_lengths("8:x"), BenchgenError);
  CHECK_THROWS_AS(parse_lengths("8:14:0"), BenchgenError);
  CHECK_THROWS_AS(parse_lengths(""), BenchgenError);
}

TEST_CASE("family names round-trip")
{
  for (Family f : {Family::MZI, Family::ORR, Family::OTTD, Family::Multicast, Family::Sweep})
    CHECK(parse_family(to_string(f)) == f);
  CHECK_FALSE(parse_family("b5").has_value());
}
