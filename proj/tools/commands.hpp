#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hexroute::cli {

enum ExitCode : int
{
  kOk = 0,
  kUsage = 1,
  kRoutingFailure = 2,
  kBudgetExhausted = 3
};

struct GenConfig
{
  std::string family;
  std::optional<int> radius;
  std::optional<int> length;
  std::optional<std::string> lengths;
  int variant = 0;
  std::uint64_t seed = 1;
  std::optional<int> count;
  int sinks = 6;
  int placements = 8;
  std::filesystem::path out;
};

struct RouteConfigCli
{
  std::filesystem::path mesh;
  std::filesystem::path netlist;
  std::string strategy = "auto";
  std::string backend = "hex";
  std::uint64_t budget = 5'000'000;
  std::uint64_t seed = 0;
  std::string net_order = "submission";
  std::optional<std::filesystem::path> trace;
  std::optional<std::filesystem::path> result;
  std::string format = "csv";
  std::filesystem::path out;
};

struct BenchConfig
{
  std::filesystem::path manifest;
  std::vector<std::string> strategies;
  std::string backend = "hex";
  std::uint64_t budget = 5'000'000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::filesystem::path out;
};

struct VerifyConfig
{
  int max_radius = 3;
  std::string backend = "hex";
  int inflate = 0;
  int pairs = 50;
  int pair_radius = 2;
  int max_length = 12;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> report;
  std::filesystem::path out;
};

struct RenderConfig
{
  std::filesystem::path mesh;
  std::optional<std::filesystem::path> result;
  std::optional<std::filesystem::path> trace;
  std::optional<std::filesystem::path> svg;
  bool ids = false;
  std::filesystem::path out;
};

int cmd_gen(const GenConfig& config);
int cmd_route(const RouteConfigCli& config);
int cmd_bench(const BenchConfig& config);
int cmd_verify(const VerifyConfig& config);
int cmd_render(const RenderConfig& config);

}  // namespace hexroute::cli
