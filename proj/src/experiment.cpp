#include "hexroute/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace hexroute {

InstanceRun run_instance(const Benchmark& bench, Policy policy, const RouteConfig& config)
{
  auto rrg = build_rrg(std::make_shared<const HexMesh>(build_mesh(bench.spec.radius)));
  InstanceRun run;
  run.instance = bench.name;
  run.family = bench.spec.family;
  run.policy = policy;
  run.nets = bench.netlist.nets.size();
  run.result = route_netlist(rrg, bench.netlist, policy, config);
  run.routed = run.result.routed;
  run.stats = run.result.stats;
  run.twl = run.result.twl;
  run.exhausted = std::any_of(run.result.nets.begin(), run.result.nets.end(),
                              [](const RouteResult& r) { return r.reason == FailReason::Exhausted; });
  return run;
}

std::vector<SweepPoint> sweep_series(const Benchmark& bench, std::span<const InstanceRun> runs)
{
  std::map<Length, SweepPoint> points;
  for (std::size_t k = 0; k < runs.size(); ++k)
  {
    const auto& run = runs[k];
    for (std::size_t i = 0; i < bench.netlist.nets.size(); ++i)
    {
      const auto& net = bench.netlist.nets[i];
      if (net.sinks.size() != 1)
        throw std::invalid_argument("sweep nets must have exactly one sink; net '" + net.name + "' has " +
                                    std::to_string(net.sinks.size()));
      auto& p = points[net.sinks[0].length];
      p.length = net.sinks[0].length;
      p.mean_pushed.resize(runs.size(), 0.0);
      p.routed.resize(runs.size(), 0);
      if (k == 0)
        ++p.samples;
      p.mean_pushed[k] += static_cast<double>(run.result.nets.at(i).stats.pushed);
      p.routed[k] += run.result.nets.at(i).routed ? 1 : 0;
    }
  }
  std::vector<SweepPoint> out;
  for (auto& [length, p] : points)
  {
    for (double& v : p.mean_pushed)
      v /= static_cast<double>(p.samples);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SweepPoint> sweep_series(const Benchmark& bench, std::span<const Policy> policies, const RouteConfig& config)
{
  std::vector<InstanceRun> runs;
  for (Policy p : policies)
    runs.push_back(run_instance(bench, p, config));
  return sweep_series(bench, runs);
}

double median(std::vector<double> values)
{
  if (values.empty())
    return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace hexroute
