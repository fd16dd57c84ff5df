#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace hexroute::cli;

namespace {

std::filesystem::path default_out()
{
  const char* env = std::getenv("HEXROUTE_OUT_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".");
}

const std::vector<std::string> kStrategies = {"greedy", "hlm", "dslm", "lemar", "auto"};
const std::vector<std::string> kBackends = {"hex", "exact", "zero", "manhattan"};

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Exact-length routing on hexagonal programmable photonic meshes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hexroute 1.0");

  const auto out = default_out();

  GenConfig gen;
  gen.out = out;
  auto* g = app.add_subcommand("gen", "Generate a benchmark: mesh, netlist(s) and manifest");
  g->add_option("--family", gen.family, "mzi | orr | ottd | multicast | sweep")->required();
  g->add_option("--radius", gen.radius, "Mesh radius");
  g->add_option("--length", gen.length, "Required length (mzi, orr, ottd)");
  g->add_option("--lengths", gen.lengths, "first:last:step or a comma list (ottd, sweep)");
  g->add_option("--variant", gen.variant, "Index of the certified placement")->capture_default_str();
  g->add_option("--seed", gen.seed, "Placement seed")->capture_default_str();
  g->add_option("--count", gen.count, "Suite size (mzi, orr, ottd) or instance count (multicast)");
  g->add_option("--sinks", gen.sinks, "Sinks per multicast net")->capture_default_str();
  g->add_option("--placements", gen.placements, "Pin pairs per sweep length")->capture_default_str();
  g->add_option("--out", gen.out, "Output directory (default $HEXROUTE_OUT_DIR or .)");

  RouteConfigCli route;
  route.out = out;
  auto* r = app.add_subcommand("route", "Route a netlist on a mesh");
  r->add_option("--mesh", route.mesh, "Mesh JSON")->required();
  r->add_option("--netlist", route.netlist, "Netlist JSON")->required();
  r->add_option("--strategy", route.strategy)->check(CLI::IsMember(kStrategies))->capture_default_str();
  r->add_option("--backend", route.backend, "Heuristic backend")->check(CLI::IsMember(kBackends))->capture_default_str();
  r->add_option("--budget", route.budget, "Push budget per connection")->capture_default_str();
  r->add_option("--seed", route.seed, "Successor order seed (0 keeps arc order)")->capture_default_str();
  r->add_option("--net-order", route.net_order, "submission | margin")->capture_default_str();
  r->add_option("--trace", route.trace, "Write search events as JSON lines");
  r->add_option("--result", route.result, "Result JSON (default <out>/route_result.json)");
  r->add_option("--format", route.format, "Stdout report: csv | json")->capture_default_str();
  r->add_option("--out", route.out, "Output directory");

  BenchConfig bench;
  bench.out = out;
  auto* b = app.add_subcommand("bench", "Run every strategy over a manifest and tabulate");
  b->add_option("--manifest", bench.manifest, "Manifest JSON")->required();
  b->add_option("--strategies", bench.strategies, "Strategies to compare (default: all four)")
      ->check(CLI::IsMember(kStrategies))
      ->delimiter(',');
  b->add_option("--backend", bench.backend)->check(CLI::IsMember(kBackends))->capture_default_str();
  b->add_option("--budget", bench.budget)->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--jobs", bench.jobs, "Worker threads")->capture_default_str();
  b->add_option("--out", bench.out, "Output directory");

  VerifyConfig verify;
  verify.out = out;
  auto* v = app.add_subcommand("verify", "Check heuristics, oracle agreement and length quantization");
  v->add_option("--max-radius", verify.max_radius)->capture_default_str();
  v->add_option("--backend", verify.backend)->check(CLI::IsMember(kBackends))->capture_default_str();
  v->add_option("--inflate", verify.inflate, "Add a constant to the heuristic")->capture_default_str();
  v->add_option("--pairs", verify.pairs, "Sampled node pairs for the oracle checks")->capture_default_str();
  v->add_option("--pair-radius", verify.pair_radius)->capture_default_str();
  v->add_option("--max-length", verify.max_length)->capture_default_str();
  v->add_option("--seed", verify.seed)->capture_default_str();
  v->add_option("--report", verify.report, "Report JSON (default <out>/verify_report.json)");
  v->add_option("--out", verify.out, "Output directory");

  RenderConfig render;
  render.out = out;
  auto* d = app.add_subcommand("render", "Draw a mesh, routed paths and a search trace as SVG");
  d->add_option("--mesh", render.mesh, "Mesh JSON")->required();
  d->add_option("--result", render.result, "Route result JSON");
  d->add_option("--trace", render.trace, "Trace JSON lines");
  d->add_option("--svg", render.svg, "Output file (default <out>/render.svg)");
  d->add_flag("--ids", render.ids, "Label couplers with their ids");
  d->add_option("--out", render.out, "Output directory");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (g->parsed())
    return cmd_gen(gen);
  if (r->parsed())
    return cmd_route(route);
  if (b->parsed())
    return cmd_bench(bench);
  if (v->parsed())
    return cmd_verify(verify);
  return cmd_render(render);
}
