#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hexroute/benchgen.hpp"
#include "hexroute/io.hpp"
#include "support.hpp"

using namespace hexroute;
using hexroute::testing::Bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / "hexroute_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("mesh documents rebuild the same graph")
{
  for (int r = 0; r <= 3; ++r)
  {
    const Bench b(r);
    const auto doc = mesh_to_json(b.rrg);
    CHECK(doc["format_version"] == kFormatVersion);
    CHECK(doc["kind"] == "mesh");
    CHECK(doc["couplers"].size() == expected_coupler_count(r));
    CHECK(doc["segments"].size() == expected_segment_count(r));
    const auto back = mesh_from_json(doc);
    CHECK(back.node_count() == b.rrg.node_count());
    CHECK(back.arc_count() == b.rrg.arc_count());
    CHECK(mesh_to_json(back) == doc);
  }
}

TEST_CASE("tampered mesh documents are rejected")
{
  const Bench b(1);
  auto doc = mesh_to_json(b.rrg);
  auto wrong_coords = doc;
  wrong_coords["couplers"][0]["coords"] = Json::array({9, -9, 0});
  CHECK_THROWS_AS(mesh_from_json(wrong_coords), FormatError);
  auto short_list = doc;
  short_list["segments"].erase(0);
  CHECK_THROWS_AS(mesh_from_json(short_list), FormatError);
  auto other_version = doc;
  other_version["format_version"] = kFormatVersion + 1;
  CHECK_THROWS_AS(mesh_from_json(other_version), FormatError);
  auto other_kind = doc;
  other_kind["kind"] = "netlist";
  CHECK_THROWS_AS(mesh_from_json(other_kind), FormatError);
}

TEST_CASE("netlists round-trip")
{
  const auto bench = gen_ottd(3, {8, 12});
  const auto doc = netlist_to_json(bench.netlist);
  CHECK(doc["kind"] == "netlist");
  const auto back = netlist_from_json(doc);
  CHECK(back.radius == bench.netlist.radius);
  CHECK(back.independent == bench.netlist.independent);
  REQUIRE(back.nets.size() == bench.netlist.nets.size());
  for (std::size_t i = 0; i < back.nets.size(); ++i)
  {
    CHECK(back.nets[i].id == bench.netlist.nets[i].id);
    CHECK(back.nets[i].name == bench.netlist.nets[i].name);
    CHECK(back.nets[i].source == bench.netlist.nets[i].source);
    REQUIRE(back.nets[i].sinks.size() == bench.netlist.nets[i].sinks.size());
    CHECK(back.nets[i].sinks[0].pin == bench.netlist.nets[i].sinks[0].pin);
    CHECK(back.nets[i].sinks[0].length == bench.netlist.nets[i].sinks[0].length);
  }
  CHECK(netlist_to_json(back) == doc);

  auto bad = doc;
  bad["nets"][0]["source"]["dir"] = "sideways";
  CHECK_THROWS_AS(netlist_from_json(bad), FormatError);
  bad = doc;
  bad["nets"][0].erase("sinks");
  CHECK_THROWS_AS(netlist_from_json(bad), FormatError);
}

TEST_CASE("manifests round-trip")
{
  const auto bench = gen_mzi(2, 8);
  std::vector<ManifestEntry> entries{
      {.name = bench.name, .spec = bench.spec, .nets = 4, .mesh_file = "mesh_r2.json", .netlist_file = "a.json"}};
  const auto doc = manifest_to_json(entries);
  const auto back = manifest_from_json(doc);
  REQUIRE(back.size() == 1);
  CHECK(back[0].name == bench.name);
  CHECK(back[0].spec.family == Family::MZI);
  CHECK(back[0].spec.lengths == bench.spec.lengths);
  CHECK(back[0].spec.distance == kMziDistance);
  CHECK(back[0].nets == 4);
  CHECK(manifest_to_json(back) == doc);
}

TEST_CASE("route results carry every field")
{
  const auto bench = gen_mzi(2, 7);
  Bench b(2);
  const auto result = route_netlist(b.rrg, bench.netlist, Policy::HLM);
  const auto doc = netlist_result_to_json(result, bench.netlist, Policy::HLM);
  CHECK(doc["kind"] == "route_result");
  CHECK(doc["policy"] == "hlm");
  CHECK(doc["routed"] == 4);
  REQUIRE(doc["nets"].size() == 4);
  const auto& arm = doc["nets"][0];
  CHECK(arm["status"] == "routed");
  CHECK(arm["strategy_used"] == "hlm");
  CHECK(arm["sinks"][0]["length"] == 7);
  CHECK(arm["sinks"][0]["arcs"].get<std::vector<ArcId>>() == result.nets[0].sinks[0].path);
  for (const char* key : {"pushed", "popped", "pruned", "peak_queue", "runtime_s"})
    CHECK(arm["stats"].contains(key));
}

TEST_CASE("trace lines round-trip through a file")
{
  const auto path = scratch("trace.jsonl");
  std::vector<TraceEvent> events{{TraceEvent::Kind::Push, 0, PathRecord::kRoot, 5, 7, 0},
                                 {TraceEvent::Kind::Pop, 0, PathRecord::kRoot, 5, 7, 0},
                                 {TraceEvent::Kind::Push, 1, 0, 12, 6, 1}};
  {
    std::ofstream out(path);
    JsonLinesTrace sink(out);
    for (const auto& e : events)
      sink.record(e);
  }
  const auto back = read_trace(path);
  REQUIRE(back.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i)
  {
    CHECK(back[i].kind == events[i].kind);
    CHECK(back[i].entry == events[i].entry);
    CHECK(back[i].parent == events[i].parent);
    CHECK(back[i].node == events[i].node);
    CHECK(back[i].f == events[i].f);
    CHECK(back[i].g == events[i].g);
  }

  std::ofstream(path) << "{\"event\":\"push\",\"entry\":0,\"node\":1,\"f\":0,\"g\":0}\n";
  CHECK_THROWS_AS(read_trace(path), FormatError);
}

TEST_CASE("json files need a format version")
{
  const auto path = scratch("doc.json");
  write_json_file(path, netlist_to_json(gen_orr(2, 6).netlist));
  CHECK(read_json_file(path)["kind"] == "netlist");
  std::ofstream(path) << "{\"kind\": \"netlist\"}\n";
  CHECK_THROWS_AS(read_json_file(path), FormatError);
  std::ofstream(path) << "not json";
  CHECK_THROWS_AS(read_json_file(path), FormatError);
  CHECK_THROWS_AS(read_json_file(scratch("missing.json")), FormatError);
}
