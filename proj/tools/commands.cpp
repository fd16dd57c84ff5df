#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "hexroute/benchgen.hpp"
#include "hexroute/experiment.hpp"
#include "hexroute/heuristic.hpp"
#include "hexroute/io.hpp"
#include "hexroute/mesh_search.hpp"
#include "hexroute/oracle.hpp"
#include "hexroute/render.hpp"

namespace hexroute::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

std::string seconds(std::chrono::nanoseconds d)
{
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << std::chrono::duration<double>(d).count();
  return s.str();
}

std::string number(double v)
{
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

std::string display_name(Policy p)
{
  switch (p)
  {
    case Policy::Greedy:
      return "Greedy-LM";
    case Policy::HLM:
      return "H-LM";
    case Policy::DSLM:
      return "DS-LM";
    case Policy::Lemar:
      return "LEMAR-like";
    case Policy::Auto:
      return "Auto";
  }
  return to_string(p);
}

Policy policy_arg(const std::string& name)
{
  const auto p = parse_policy(name);
  if (!p)
    throw UsageError("unknown strategy '" + name + "' (expected greedy, hlm, dslm, lemar or auto)");
  return *p;
}

HeuristicBackend backend_arg(const std::string& name)
{
  const auto b = parse_backend(name);
  if (!b)
    throw UsageError("unknown heuristic backend '" + name + "' (expected hex, exact, zero or manhattan)");
  return *b;
}

NetOrder order_arg(const std::string& name)
{
  if (name == "submission")
    return NetOrder::Submission;
  if (name == "margin")
    return NetOrder::Margin;
  throw UsageError("unknown net order '" + name + "' (expected submission or margin)");
}

void require_file(const fs::path& path, const char* what)
{
  if (!fs::is_regular_file(path))
    throw UsageError(std::string(what) + " not found: " + path.string());
}

std::string mesh_file_name(int radius) { return "mesh_r" + std::to_string(radius) + ".json"; }

RoutingResourceGraph load_mesh(const fs::path& path)
{
  require_file(path, "mesh file");
  return mesh_from_json(read_json_file(path));
}

Netlist load_netlist(const fs::path& path)
{
  require_file(path, "netlist file");
  return netlist_from_json(read_json_file(path));
}

int report(const std::exception& e, int code)
{
  std::cerr << "error: " << e.what() << '\n';
  return code;
}

std::ofstream open_output(const fs::path& path)
{
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  return out;
}

// ---- gen

std::vector<Benchmark> generate(const GenConfig& c)
{
  const auto family = parse_family(c.family);
  if (!family)
    throw UsageError("unknown family '" + c.family + "' (expected mzi, orr, ottd, multicast or sweep)");
  if (c.count && *c.count < 1)
    throw UsageError("--count must be positive");
  const auto lengths = [&](const char* fallback) { return parse_lengths(c.lengths.value_or(fallback)); };

  if (c.count && *family != Family::Multicast)
  {
    if (c.radius || c.length || c.lengths)
      throw UsageError("--count generates a fixed suite and takes no --radius, --length or --lengths");
    return gen_suite(*family, *c.count, c.seed);
  }
  switch (*family)
  {
    case Family::MZI:
      return {gen_mzi(c.radius.value_or(kDefaultMziRadius), c.length.value_or(8), c.variant, c.seed)};
    case Family::ORR:
      return {gen_orr(c.radius.value_or(kDefaultOrrRadius), c.length.value_or(10), c.variant, c.seed)};
    case Family::OTTD:
      return {gen_ottd(c.radius.value_or(kDefaultOttdRadius), c.length ? std::vector<Length>{*c.length} : lengths("8:26:2"),
                       c.variant)};
    case Family::Sweep:
      return {gen_sweep(c.radius.value_or(kDefaultOttdRadius), lengths("8:26:2"), c.placements, c.seed)};
    case Family::Multicast:
      return gen_multicast(c.radius.value_or(kDefaultMulticastRadius), c.sinks, c.count.value_or(10), c.seed);
  }
  throw UsageError("unsupported family");
}

// ---- bench

std::vector<Benchmark> load_manifest(const fs::path& path)
{
  require_file(path, "manifest");
  const auto entries = manifest_from_json(read_json_file(path));
  const fs::path dir = path.parent_path();
  std::vector<Benchmark> out;
  for (const auto& e : entries)
  {
    const auto rrg = load_mesh(dir / e.mesh_file);
    Benchmark b{.name = e.name, .spec = e.spec, .netlist = load_netlist(dir / e.netlist_file)};
    if (rrg.mesh().radius() != b.netlist.radius || b.spec.radius != b.netlist.radius)
      throw FormatError("instance '" + e.name + "': mesh, spec and netlist radii differ");
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<InstanceRun> run_all(const std::vector<Benchmark>& benches,
                                 const std::vector<Policy>& policies,
                                 const RouteConfig& config,
                                 unsigned jobs)
{
  const std::size_t total = benches.size() * policies.size();
  std::vector<InstanceRun> runs(total);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++)
    {
      const auto& bench = benches[k / policies.size()];
      const Policy policy = policies[k % policies.size()];
      try
      {
        runs[k] = run_instance(bench, policy, config);
      }
      catch (const std::exception& e)
      {
        runs[k].instance = bench.name;
        runs[k].family = bench.spec.family;
        runs[k].policy = policy;
        runs[k].nets = bench.netlist.nets.size();
        errors[k] = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();
  for (std::size_t k = 0; k < total; ++k)
    if (!errors[k].empty())
      std::cerr << "warning: " << runs[k].instance << " / " << to_string(runs[k].policy) << ": " << errors[k] << '\n';
  return runs;
}

bool sweepable(const Benchmark& b)
{
  if (b.spec.family != Family::Sweep && b.spec.family != Family::OTTD)
    return false;
  return std::all_of(b.netlist.nets.begin(), b.netlist.nets.end(), [](const Net& n) { return n.sinks.size() == 1; });
}

// ---- verify

struct AgreementStats
{
  std::size_t pairs = 0;
  std::size_t checks = 0;
  std::size_t disagreements = 0;
  std::size_t invalid_paths = 0;
  std::size_t quantized = 0;
  Json counterexamples = Json::array();
  Json mismatches = Json::array();
};

}  // namespace

int cmd_gen(const GenConfig& config)
{
  try
  {
    const auto benches = generate(config);
    std::set<int> radii;
    std::vector<ManifestEntry> entries;
    for (const auto& b : benches)
    {
      radii.insert(b.spec.radius);
      const std::string file = b.name + ".json";
      write_json_file(config.out / file, netlist_to_json(b.netlist));
      entries.push_back({.name = b.name,
                         .spec = b.spec,
                         .nets = b.netlist.nets.size(),
                         .mesh_file = mesh_file_name(b.spec.radius),
                         .netlist_file = file});
    }
    for (int r : radii)
      write_json_file(config.out / mesh_file_name(r),
                      mesh_to_json(build_rrg(std::make_shared<const HexMesh>(build_mesh(r)))));
    write_json_file(config.out / "manifest.json", manifest_to_json(entries));
    std::size_t nets = 0;
    for (const auto& e : entries)
      nets += e.nets;
    std::cout << "generated " << entries.size() << " instance(s), " << nets << " net(s) in " << config.out.string()
              << '\n';
    return kOk;
  }
  catch (const std::exception& e)
  {
    return report(e, kUsage);
  }
}

int cmd_route(const RouteConfigCli& config)
{
  RouteConfig rc;
  Policy policy{};
  std::optional<RoutingResourceGraph> loaded;
  try
  {
    policy = policy_arg(config.strategy);
    rc.backend = backend_arg(config.backend);
    rc.net_order = order_arg(config.net_order);
    if (config.format != "csv" && config.format != "json")
      throw UsageError("unknown format '" + config.format + "' (expected csv or json)");
    loaded.emplace(load_mesh(config.mesh));
  }
  catch (const std::exception& e)
  {
    return report(e, kUsage);
  }
  auto& rrg = *loaded;
  rc.push_budget = config.budget;
  rc.seed = config.seed;

  try
  {
    const auto netlist = load_netlist(config.netlist);
    if (netlist.radius != rrg.mesh().radius())
      throw UsageError("netlist radius " + std::to_string(netlist.radius) + " does not match mesh radius " +
                       std::to_string(rrg.mesh().radius()));

    std::ofstream trace_file;
    std::unique_ptr<JsonLinesTrace> trace;
    if (config.trace)
    {
      trace_file = open_output(*config.trace);
      trace = std::make_unique<JsonLinesTrace>(trace_file);
      rc.trace = trace.get();
    }

    const auto result = route_netlist(rrg, netlist, policy, rc);
    const auto doc = netlist_result_to_json(result, netlist, policy);
    write_json_file(config.result.value_or(config.out / "route_result.json"), doc);

    if (config.format == "json")
      std::cout << doc.dump(2) << '\n';
    else
    {
      std::cout << "net,name,status,strategy,Runtime (s),Push,Popped,TWL\n";
      for (std::size_t i = 0; i < result.nets.size(); ++i)
      {
        const auto& r = result.nets[i];
        std::cout << r.net << ',' << netlist.nets[i].name << ',' << (r.routed ? "routed" : "failed") << ','
                  << r.strategy_used << ',' << seconds(r.stats.duration) << ',' << r.stats.pushed << ','
                  << r.stats.popped << ',' << r.twl << '\n';
      }
    }

    bool exhausted = false;
    for (std::size_t i = 0; i < result.nets.size(); ++i)
    {
      const auto& r = result.nets[i];
      if (r.routed)
        continue;
      exhausted = exhausted || r.reason == FailReason::Exhausted;
      std::cerr << "failed: net " << r.net << " (" << netlist.nets[i].name << ")";
      if (r.reason)
        std::cerr << ' ' << to_string(*r.reason);
      if (!r.detail.empty())
        std::cerr << ": " << r.detail;
      std::cerr << '\n';
    }
    if (result.failed == 0)
      return kOk;
    return exhausted ? kBudgetExhausted : kRoutingFailure;
  }
  catch (const UsageError& e)
  {
    return report(e, kUsage);
  }
  catch (const FormatError& e)
  {
    return report(e, kUsage);
  }
  catch (const NetlistError& e)
  {
    return report(e, kUsage);
  }
  catch (const std::exception& e)
  {
    return report(e, kRoutingFailure);
  }
}

int cmd_bench(const BenchConfig& config)
{
  std::vector<Policy> policies;
  RouteConfig rc;
  std::vector<Benchmark> benches;
  try
  {
    for (const auto& s : config.strategies)
      policies.push_back(policy_arg(s));
    if (policies.empty())
      policies = {Policy::Greedy, Policy::HLM, Policy::DSLM, Policy::Lemar};
    rc.backend = backend_arg(config.backend);
    rc.push_budget = config.budget;
    rc.seed = config.seed;
    benches = load_manifest(config.manifest);
  }
  catch (const std::exception& e)
  {
    return report(e, kUsage);
  }

  const auto runs = run_all(benches, policies, rc, std::max(1u, config.jobs));
  const auto at = [&](std::size_t b, std::size_t p) -> const InstanceRun& { return runs[b * policies.size() + p]; };

  try
  {
    {
      auto out = open_output(config.out / "bench_rows.csv");
      out << "instance,family,strategy,nets,routed,exhausted,Runtime (s),Total Push,Popped,TWL\n";
      for (const auto& r : runs)
        out << r.instance << ',' << to_string(r.family) << ',' << display_name(r.policy) << ',' << r.nets << ','
            << r.routed << ',' << (r.exhausted ? 1 : 0) << ',' << seconds(r.stats.duration) << ',' << r.stats.pushed
            << ',' << r.stats.popped << ',' << r.twl << '\n';
    }

    {
      std::vector<Family> families;
      for (const auto& b : benches)
        if (std::find(families.begin(), families.end(), b.spec.family) == families.end())
          families.push_back(b.spec.family);

      std::ostringstream table;
      table << "family,instances";
      for (Policy p : policies)
        for (const char* col : {"Runtime (s)", "Total Push", "Median Push", "TWL", "Routed"})
          table << ',' << display_name(p) << ' ' << col;
      table << '\n';
      for (Family f : families)
      {
        std::size_t count = 0;
        for (const auto& b : benches)
          count += b.spec.family == f ? 1 : 0;
        table << to_string(f) << ',' << count;
        for (std::size_t p = 0; p < policies.size(); ++p)
        {
          std::chrono::nanoseconds runtime{0};
          std::vector<double> pushes;
          double twl = 0.0;
          std::size_t complete = 0;
          std::size_t routed = 0;
          std::size_t nets = 0;
          for (std::size_t b = 0; b < benches.size(); ++b)
          {
            if (benches[b].spec.family != f)
              continue;
            const auto& r = at(b, p);
            runtime += r.stats.duration;
            pushes.push_back(static_cast<double>(r.stats.pushed));
            routed += r.routed;
            nets += r.nets;
            if (r.routed == r.nets && r.nets > 0)
            {
              twl += static_cast<double>(r.twl);
              ++complete;
            }
          }
          double total = 0.0;
          for (double v : pushes)
            total += v;
          const auto n = static_cast<double>(std::max<std::size_t>(count, 1));
          table << ',' << seconds(runtime / static_cast<long>(std::max<std::size_t>(count, 1))) << ','
                << number(total / n) << ',' << number(median(pushes)) << ','
                << (complete ? number(twl / static_cast<double>(complete)) : std::string("")) << ',' << routed << '/'
                << nets;
        }
        table << '\n';
      }
      auto out = open_output(config.out / "bench_table.csv");
      out << table.str();
      std::cout << table.str();
    }

    std::map<Length, std::vector<std::pair<double, std::size_t>>> series;
    for (std::size_t b = 0; b < benches.size(); ++b)
    {
      if (!sweepable(benches[b]))
        continue;
      std::vector<InstanceRun> mine;
      for (std::size_t p = 0; p < policies.size(); ++p)
        mine.push_back(at(b, p));
      if (std::any_of(mine.begin(), mine.end(), [](const InstanceRun& r) { return r.result.nets.size() != r.nets; }))
        continue;
      for (const auto& point : sweep_series(benches[b], mine))
      {
        auto& acc = series[point.length];
        acc.resize(policies.size());
        for (std::size_t p = 0; p < policies.size(); ++p)
        {
          acc[p].first += point.mean_pushed[p] * static_cast<double>(point.samples);
          acc[p].second += point.samples;
        }
      }
    }
    if (!series.empty())
    {
      auto out = open_output(config.out / "sweep_series.csv");
      out << "Expected length";
      for (Policy p : policies)
        out << ',' << display_name(p) << " Avg Push";
      out << '\n';
      for (const auto& [length, acc] : series)
      {
        out << length;
        for (const auto& [sum, n] : acc)
          out << ',' << number(sum / static_cast<double>(n));
        out << '\n';
      }
    }
  }
  catch (const std::exception& e)
  {
    return report(e, kUsage);
  }
  return kOk;
}

int cmd_verify(const VerifyConfig& config)
{
  HeuristicBackend backend{};
  try
  {
    backend = backend_arg(config.backend);
    if (config.max_radius < 0 || config.max_radius > 3)
      throw UsageError("--max-radius must be between 0 and 3 for exhaustive checks");
    if (config.pair_radius < 0 || config.pair_radius > 3)
      throw UsageError("--pair-radius must be between 0 and 3");
    if (config.inflate < 0 || config.pairs < 0 || config.max_length < 0)
      throw UsageError("--inflate, --pairs and --max-length must not be negative");
  }
  catch (const std::exception& e)
  {
    return report(e, kUsage);
  }

  bool ok = true;
  Json doc{{"format_version", kFormatVersion}, {"kind", "verify_report"}, {"backend", to_string(backend)},
           {"inflate", config.inflate}};

  Json heuristics = Json::array();
  for (int r = 0; r <= config.max_radius; ++r)
  {
    const auto rrg = build_rrg(std::make_shared<const HexMesh>(build_mesh(r)));
    const MeshEstimator base(rrg, backend);
    const InflatedEstimator inflated(base, config.inflate);
    const Estimator& est = config.inflate > 0 ? static_cast<const Estimator&>(inflated) : base;
    const auto v = verify_heuristic(rrg, est, 20);
    const bool pass = v.admissible() && v.consistent();
    ok = ok && pass;
    std::cout << "heuristic r" << r << ": " << (pass ? "PASS" : "FAIL") << " (" << v.pairs_checked << " pairs, "
              << v.admissibility_failures << " admissibility, " << v.consistency_failures << " consistency failures)\n";
    heuristics.push_back(verification_to_json(v, rrg));
  }
  doc["heuristic"] = std::move(heuristics);

  AgreementStats agree;
  Json quantization = Json::array();
  if (config.pairs > 0)
  {
    const auto rrg = build_rrg(std::make_shared<const HexMesh>(build_mesh(config.pair_radius)));
    const MeshSearchSpace space(rrg);
    const MeshEstimator est(rrg, backend);
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(rrg.node_count() - 1));
    for (int i = 0; i < config.pairs; ++i)
    {
      const NodeId s = pick(rng);
      const NodeId t = pick(rng);
      const auto set = enumerate_paths(rrg, s, t, {.max_length = config.max_length});
      ++agree.pairs;
      for (Length l = 0; l <= config.max_length; ++l)
        for (Strategy strategy : {Strategy::HLM, Strategy::DSLM})
        {
          const auto o = run_strategy(strategy, {.space = space, .source = s, .target = t, .length = l, .estimator = est});
          ++agree.checks;
          if (o.found() != set.contains(l))
          {
            ++agree.disagreements;
            if (agree.mismatches.size() < 20)
              agree.mismatches.push_back({{"source", s},
                                          {"target", t},
                                          {"length", l},
                                          {"strategy", to_string(strategy)},
                                          {"oracle", set.contains(l)},
                                          {"search", to_string(o.status)}});
          }
          if (o.found() && !validate_path(rrg, o.path, l, {.net = std::nullopt, .source = s, .target = t}).empty())
            ++agree.invalid_paths;
        }
      if (set.counts.empty())
        continue;
      const auto verdict = check_quantization(set);
      agree.quantized += verdict.quantized ? 1 : 0;
      quantization.push_back(quantization_to_json(set, verdict));
    }
    const bool pass = agree.disagreements == 0 && agree.invalid_paths == 0;
    ok = ok && pass;
    std::cout << "oracle agreement r" << config.pair_radius << ": " << (pass ? "PASS" : "FAIL") << " (" << agree.pairs
              << " pairs, " << agree.checks << " searches, " << agree.disagreements << " disagreements, "
              << agree.invalid_paths << " invalid paths)\n";
    std::cout << "quantization: " << agree.quantized << " of " << quantization.size()
              << " reachable pairs have single-parity length sets\n";
  }
  doc["agreement"] = {{"radius", config.pair_radius},
                      {"pairs", agree.pairs},
                      {"max_length", config.max_length},
                      {"seed", config.seed},
                      {"searches", agree.checks},
                      {"disagreements", agree.disagreements},
                      {"invalid_paths", agree.invalid_paths},
                      {"mismatches", agree.mismatches}};
  doc["quantization"] = std::move(quantization);
  doc["pass"] = ok;

  try
  {
    write_json_file(config.report.value_or(config.out / "verify_report.json"), doc);
  }
  catch (const std::exception& e)
  {
    return report(e, kUsage);
  }
  std::cout << (ok ? "verify: PASS" : "verify: FAIL") << '\n';
  return ok ? kOk : kRoutingFailure;
}

int cmd_render(const RenderConfig& config)
{
  try
  {
    const auto rrg = load_mesh(config.mesh);
    std::vector<DrawnPath> paths;
    if (config.result)
    {
      require_file(*config.result, "route result");
      const auto doc = read_json_file(*config.result);
      if (doc.value("kind", "") != "route_result")
        throw FormatError("expected a route_result document");
      if (doc.value("radius", -1) != rrg.mesh().radius())
        throw FormatError("route result radius does not match the mesh");
      for (const auto& net : doc.at("nets"))
        for (const auto& sink : net.at("sinks"))
        {
          if (!sink.value("routed", false))
            continue;
          DrawnPath p;
          p.label = net.value("name", "net " + std::to_string(net.value("net", 0))) + " sink " +
                    std::to_string(sink.value("index", 0)) + ": L=" + std::to_string(sink.value("length", 0));
          p.arcs = sink.at("arcs").get<std::vector<ArcId>>();
          for (ArcId a : p.arcs)
            if (a >= rrg.arc_count())
              throw FormatError("route result names arc " + std::to_string(a) + " outside the mesh");
          paths.push_back(std::move(p));
        }
    }
    std::vector<TraceEvent> trace;
    if (config.trace)
    {
      require_file(*config.trace, "trace file");
      trace = read_trace(*config.trace);
    }
    const fs::path svg = config.svg.value_or(config.out / "render.svg");
    auto out = open_output(svg);
    out << render_svg(rrg, paths, trace, {.coupler_ids = config.ids});
    std::cout << "wrote " << svg.string() << " (" << paths.size() << " path(s))\n";
    return kOk;
  }
  catch (const std::exception& e)
  {
    return report(e, kUsage);
  }
}

}  // namespace hexroute::cli
