#pragma once

#include <span>
#include <string>
#include <vector>

#include "hexroute/benchgen.hpp"
#include "hexroute/multipin.hpp"

namespace hexroute {

/// One benchmark routed with one policy on a fresh mesh.
struct InstanceRun
{
  std::string instance;
  Family family = Family::MZI;
  Policy policy = Policy::HLM;
  std::size_t nets = 0;
  std::size_t routed = 0;
  /// Some net ran out of push budget.
  bool exhausted = false;
  SearchStats stats;
  Length twl = 0;
  NetlistResult result;
};

InstanceRun run_instance(const Benchmark& bench, Policy policy, const RouteConfig& config = {});

/// Mean pushed count per required length, averaged over the nets that ask
/// for that length. Nets must have a single sink.
struct SweepPoint
{
  Length length = 0;
  std::size_t samples = 0;
  /// Indexed like the policy list passed in.
  std::vector<double> mean_pushed;
  std::vector<std::size_t> routed;
};

std::vector<SweepPoint> sweep_series(const Benchmark& bench,
                                     std::span<const Policy> policies,
                                     const RouteConfig& config = {});
/// Same, from runs already made on `bench`, one per series.
std::vector<SweepPoint> sweep_series(const Benchmark& bench, std::span<const InstanceRun> runs);

/// Middle value, or the mean of the two middle values. NaN when empty.
double median(std::vector<double> values);

}  // namespace hexroute
