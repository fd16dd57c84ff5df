#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "hexroute/io.hpp"
#include "hexroute/oracle.hpp"

using namespace hexroute;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HEXROUTE_FIXTURE_DIR;
const fs::path kB3 = kFixtures / "b3";

fs::path workdir(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / "hexroute_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& log)
{
  const std::string cmd = std::string("\"") + HEXROUTE_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path)
{
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Json strip_runtime(Json doc)
{
  if (doc.is_object())
  {
    doc.erase("runtime_s");
    for (auto& [key, value] : doc.items())
      value = strip_runtime(value);
  }
  else if (doc.is_array())
    for (auto& value : doc)
      value = strip_runtime(value);
  return doc;
}

// Drops every CSV column whose header mentions a runtime.
std::string strip_runtime_columns(const std::string& csv)
{
  std::istringstream in(csv);
  std::string line;
  std::vector<bool> keep;
  std::string out;
  while (std::getline(in, line))
  {
    std::vector<std::string> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');)
      cells.push_back(cell);
    if (keep.empty())
      for (const auto& c : cells)
        keep.push_back(c.find("Runtime") == std::string::npos);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (i >= keep.size() || keep[i])
        out += cells[i] + ',';
    out += '\n';
  }
  return out;
}

std::string route_args(const fs::path& out, const std::string& extra = "")
{
  return "route --mesh \"" + (kB3 / "mesh_r3.json").string() + "\" --netlist \"" + (kB3 / "ottd_r3_v0.json").string() +
         "\" --out \"" + out.string() + "\" " + extra;
}

}  // namespace

TEST_CASE("gen reproduces the committed fixture byte for byte")
{
  const auto dir = workdir("golden");
  REQUIRE(run("gen --family ottd --radius 3 --lengths 8,12,16 --out \"" + dir.string() + "\"", dir / "log") == 0);
  for (const char* file : {"manifest.json", "mesh_r3.json", "ottd_r3_v0.json"})
  {
    CAPTURE(file);
    CHECK(slurp(dir / file) == slurp(kB3 / file));
  }
}

TEST_CASE("gen families and errors")
{
  const auto dir = workdir("gen");
  REQUIRE(run("gen --family ottd --radius 3 --lengths 8:26:2 --out \"" + (dir / "ottd").string() + "\"", dir / "log") ==
          0);
  const auto manifest = manifest_from_json(read_json_file(dir / "ottd" / "manifest.json"));
  REQUIRE(manifest.size() == 1);
  CHECK(manifest[0].nets == 10);
  CHECK(netlist_from_json(read_json_file(dir / "ottd" / manifest[0].netlist_file)).nets.size() == 10);

  REQUIRE(run("gen --family multicast --seed 7 --out \"" + (dir / "m1").string() + "\"", dir / "log") == 0);
  REQUIRE(run("gen --family multicast --seed 7 --out \"" + (dir / "m2").string() + "\"", dir / "log") == 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "m1"))
  {
    ++files;
    CHECK(slurp(entry.path()) == slurp(dir / "m2" / entry.path().filename()));
  }
  CHECK(files == 12);

  CHECK(run("gen --family mzi --radius 0 --out \"" + dir.string() + "\"", dir / "log") != 0);
  CHECK(slurp(dir / "log").find("error:") != std::string::npos);
  CHECK(run("gen --family b9 --out \"" + dir.string() + "\"", dir / "log") == 1);
  CHECK(run("gen --out \"" + dir.string() + "\"", dir / "log") == 1);
  CHECK(run("gen --family orr --length 8 --out \"" + dir.string() + "\"", dir / "log") == 1);
}

TEST_CASE("gen honours the output directory variable")
{
  const auto dir = workdir("env");
  const std::string cmd = "HEXROUTE_OUT_DIR=\"" + dir.string() + "\" \"" + HEXROUTE_CLI +
                          "\" gen --family orr --length 6 > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "mesh_r2.json"));
}

TEST_CASE("route: B3 fixture with H-LM")
{
  const auto dir = workdir("route");
  REQUIRE(run(route_args(dir, "--strategy hlm"), dir / "log") == 0);
  const auto doc = read_json_file(dir / "route_result.json");
  const auto rrg = mesh_from_json(read_json_file(kB3 / "mesh_r3.json"));
  const auto netlist = netlist_from_json(read_json_file(kB3 / "ottd_r3_v0.json"));
  CHECK(doc["policy"] == "hlm");
  CHECK(doc["failed"] == 0);
  REQUIRE(doc["nets"].size() == netlist.nets.size());
  for (std::size_t i = 0; i < netlist.nets.size(); ++i)
  {
    const auto& net = netlist.nets[i];
    const auto& sink = doc["nets"][i]["sinks"][0];
    const Length length = net.sinks[0].length;
    CHECK(doc["nets"][i]["status"] == "routed");
    CHECK(sink["length"] == length);
    const auto arcs = sink["arcs"].get<std::vector<ArcId>>();
    const NodeId s = rrg.resolve(net.source);
    const NodeId t = rrg.resolve(net.sinks[0].pin);
    CHECK(validate_path(rrg, arcs, length, {.net = std::nullopt, .source = s, .target = t}).empty());
    CHECK(enumerate_paths(rrg, s, t, {.max_length = length}).contains(length));
  }
  const auto table = slurp(dir / "log");
  CHECK(table.starts_with("net,name,status,strategy,Runtime (s),Push,Popped,TWL\n"));
  CHECK(table.find("1,tap_L8,routed,hlm,") != std::string::npos);
}

TEST_CASE("route: auto records the strategy it used")
{
  const auto dir = workdir("auto");
  REQUIRE(run(route_args(dir, "--strategy auto --format json"), dir / "log") == 0);
  const auto doc = read_json_file(dir / "route_result.json");
  CHECK(doc["policy"] == "auto");
  for (const auto& net : doc["nets"])
    CHECK(net["strategy_used"] == "hlm");
  CHECK(Json::parse(slurp(dir / "log")) == doc);
}

TEST_CASE("route: identical runs differ only in runtimes")
{
  const auto dir = workdir("determinism");
  for (const char* name : {"a", "b"})
    REQUIRE(run(route_args(dir, std::string("--strategy dslm --seed 3 --result \"") + (dir / name).string() +
                                    ".json\" --trace \"" + (dir / name).string() + ".jsonl\""),
                dir / "log") == 0);
  const auto a = read_json_file(dir / "a.json");
  const auto b = read_json_file(dir / "b.json");
  CHECK(strip_runtime(a) == strip_runtime(b));
  CHECK(slurp(dir / "a.jsonl") == slurp(dir / "b.jsonl"));
  CHECK(read_trace(dir / "a.jsonl").size() > 0);
}

TEST_CASE("route exit codes")
{
  const auto dir = workdir("codes");
  CHECK(run(route_args(dir, "--strategy hlm --budget 50"), dir / "log") == 3);
  CHECK(slurp(dir / "log").find("exhausted") != std::string::npos);

  // Length 9 between pins 8 apart: every path length has the parity of 8.
  auto netlist = read_json_file(kB3 / "ottd_r3_v0.json");
  netlist["nets"][0]["sinks"][0]["length_segments"] = 9;
  write_json_file(dir / "odd.json", netlist);
  CHECK(run("route --mesh \"" + (kB3 / "mesh_r3.json").string() + "\" --netlist \"" + (dir / "odd.json").string() +
                "\" --out \"" + dir.string() + "\"",
            dir / "log") == 2);
  CHECK(slurp(dir / "log").find("failed: net 1") != std::string::npos);
  CHECK(read_json_file(dir / "route_result.json")["failed"] == 1);

  CHECK(run(route_args(dir, "--strategy astar"), dir / "log") == 1);
  CHECK(run(route_args(dir, "--backend euclid"), dir / "log") == 1);
  CHECK(run("route --mesh missing.json --netlist missing.json", dir / "log") == 1);
  CHECK(run("route --mesh \"" + (kB3 / "mesh_r3.json").string() + "\"", dir / "log") == 1);
}

TEST_CASE("bench: tables and determinism")
{
  const auto dir = workdir("bench");
  const std::string manifest = "\"" + (kB3 / "manifest.json").string() + "\"";
  REQUIRE(run("bench --manifest " + manifest + " --out \"" + (dir / "a").string() + "\"", dir / "log") == 0);
  REQUIRE(run("bench --manifest " + manifest + " --jobs 3 --out \"" + (dir / "b").string() + "\"", dir / "log") == 0);
  for (const char* file : {"bench_rows.csv", "bench_table.csv", "sweep_series.csv"})
  {
    CAPTURE(file);
    const auto a = slurp(dir / "a" / file);
    REQUIRE_FALSE(a.empty());
    CHECK(strip_runtime_columns(a) == strip_runtime_columns(slurp(dir / "b" / file)));
  }

  const auto rows = slurp(dir / "a" / "bench_rows.csv");
  CHECK(rows.starts_with("instance,family,strategy,nets,routed,exhausted,Runtime (s),Total Push,Popped,TWL\n"));
  CHECK(rows.find("ottd_r3_v0,ottd,H-LM,3,3,0,") != std::string::npos);
  const auto table = slurp(dir / "a" / "bench_table.csv");
  for (const char* col : {"Greedy-LM Runtime (s)", "H-LM Total Push", "DS-LM TWL", "LEMAR-like Median Push"})
    CHECK(table.find(col) != std::string::npos);
  CHECK(slurp(dir / "a" / "sweep_series.csv").starts_with(
      "Expected length,Greedy-LM Avg Push,H-LM Avg Push,DS-LM Avg Push,LEMAR-like Avg Push\n8,"));

  REQUIRE(run("bench --manifest " + manifest + " --strategies hlm,dslm --out \"" + (dir / "c").string() + "\"",
              dir / "log") == 0);
  CHECK(slurp(dir / "c" / "sweep_series.csv").starts_with("Expected length,H-LM Avg Push,DS-LM Avg Push\n"));
  CHECK(run("bench --manifest missing.json", dir / "log") == 1);
}

TEST_CASE("verify")
{
  const auto dir = workdir("verify");
  CHECK(run("verify --max-radius 2 --pairs 10 --pair-radius 1 --max-length 10 --out \"" + dir.string() + "\"",
            dir / "log") == 0);
  const auto report = read_json_file(dir / "verify_report.json");
  CHECK(report["pass"] == true);
  CHECK(report["heuristic"].size() == 3);
  CHECK(report["agreement"]["disagreements"] == 0);
  CHECK(report["agreement"]["searches"] == 10 * 11 * 2);

  CHECK(run("verify --max-radius 0 --backend zero --pairs 0 --out \"" + dir.string() + "\"", dir / "log") == 0);
  CHECK(run("verify --max-radius 2 --inflate 1 --pairs 0 --out \"" + dir.string() + "\"", dir / "log") == 2);
  CHECK(slurp(dir / "log").find("FAIL") != std::string::npos);
  CHECK(read_json_file(dir / "verify_report.json")["heuristic"][1]["admissibility_failures"] > 0);
  CHECK(run("verify --max-radius 4", dir / "log") == 1);
}

TEST_CASE("render")
{
  const auto dir = workdir("render");
  REQUIRE(run(route_args(dir, "--trace \"" + (dir / "t.jsonl").string() + "\""), dir / "log") == 0);
  REQUIRE(run("render --mesh \"" + (kB3 / "mesh_r3.json").string() + "\" --result \"" +
                  (dir / "route_result.json").string() + "\" --trace \"" + (dir / "t.jsonl").string() + "\" --svg \"" +
                  (dir / "b3.svg").string() + "\"",
              dir / "log") == 0);
  const auto svg = slurp(dir / "b3.svg");
  CHECK(svg.find("tap_L12 sink 0: L=12") != std::string::npos);
  CHECK(svg.find("id=\"search\"") != std::string::npos);

  REQUIRE(run("render --mesh \"" + (kB3 / "mesh_r3.json").string() + "\" --out \"" + dir.string() + "\"",
              dir / "log") == 0);
  CHECK(slurp(dir / "render.svg").find("<polyline") == std::string::npos);
  CHECK(run("render --mesh \"" + (dir / "none.json").string() + "\"", dir / "log") == 1);
}
