#include "hexroute/io.hpp"

#include <fstream>
#include <memory>

namespace hexroute {

namespace {

Json header(const char* kind)
{
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  return doc;
}

void expect(const Json& doc, const char* kind)
{
  if (!doc.is_object())
    throw FormatError(std::string(kind) + ": expected a JSON object");
  if (!doc.contains("format_version") || doc["format_version"] != kFormatVersion)
    throw FormatError(std::string(kind) + ": unsupported or missing format_version");
  if (doc.contains("kind") && doc["kind"] != kind)
    throw FormatError(std::string("expected a ") + kind + " document, got " + doc["kind"].dump());
}

template <typename T>
T field(const Json& doc, const char* key)
{
  if (!doc.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  try
  {
    return doc.at(key).get<T>();
  }
  catch (const nlohmann::json::exception& e)
  {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

const char* dir_name(PortDir dir) { return dir == PortDir::In ? "in" : "out"; }

Json cell_json(const CellCoord& c) { return Json::array({c.q, c.r}); }

Json port_json(const PortRef& p) { return {{"coupler", p.coupler}, {"port", p.port}}; }

}  // namespace

Json mesh_to_json(const RoutingResourceGraph& rrg)
{
  const auto& mesh = rrg.mesh();
  Json doc = header("mesh");
  doc["radius"] = mesh.radius();
  Json couplers = Json::array();
  for (const auto& c : mesh.couplers())
    couplers.push_back({{"id", c.id},
                        {"coords", Json::array({c.coords.x, c.coords.y, c.coords.z})},
                        {"cells", Json::array({cell_json(c.cells[0]), cell_json(c.cells[1])})},
                        {"state", to_string(rrg.coupler_state(c.id))}});
  doc["couplers"] = std::move(couplers);
  Json segments = Json::array();
  for (const auto& s : mesh.segments())
    segments.push_back(Json::array({port_json(s.a), port_json(s.b)}));
  doc["segments"] = std::move(segments);
  return doc;
}

RoutingResourceGraph mesh_from_json(const Json& doc)
{
  expect(doc, "mesh");
  const int radius = field<int>(doc, "radius");
  RoutingResourceGraph rrg = build_rrg(build_mesh(radius));
  const auto& mesh = rrg.mesh();
  if (doc.contains("couplers"))
  {
    const auto& list = doc["couplers"];
    if (!list.is_array() || list.size() != mesh.couplers().size())
      throw FormatError("mesh: coupler list does not match a radius " + std::to_string(radius) + " mesh");
    for (const auto& c : list)
    {
      const auto id = field<CouplerId>(c, "id");
      const auto xyz = field<std::array<int, 3>>(c, "coords");
      if (id >= mesh.couplers().size() || mesh.coupler(id).coords != AxialCoords{xyz[0], xyz[1], xyz[2]})
        throw FormatError("mesh: coupler " + std::to_string(id) + " has unexpected coordinates");
    }
  }
  if (doc.contains("segments") && doc["segments"].size() != mesh.segments().size())
    throw FormatError("mesh: segment count does not match a radius " + std::to_string(radius) + " mesh");
  return rrg;
}

Json pin_to_json(const Pin& pin) { return {{"coupler", pin.coupler}, {"port", pin.port}, {"dir", dir_name(pin.dir)}}; }

Pin pin_from_json(const Json& doc)
{
  Pin pin;
  pin.coupler = field<CouplerId>(doc, "coupler");
  pin.port = field<int>(doc, "port");
  const auto dir = field<std::string>(doc, "dir");
  if (dir != "in" && dir != "out")
    throw FormatError("pin direction must be \"in\" or \"out\", got \"" + dir + "\"");
  pin.dir = dir == "in" ? PortDir::In : PortDir::Out;
  return pin;
}

Json netlist_to_json(const Netlist& netlist)
{
  Json doc = header("netlist");
  doc["radius"] = netlist.radius;
  doc["independent"] = netlist.independent;
  Json nets = Json::array();
  for (const auto& net : netlist.nets)
  {
    Json sinks = Json::array();
    for (const auto& s : net.sinks)
      sinks.push_back({{"pin", pin_to_json(s.pin)}, {"length_segments", s.length}});
    nets.push_back({{"id", net.id}, {"name", net.name}, {"source", pin_to_json(net.source)}, {"sinks", sinks}});
  }
  doc["nets"] = std::move(nets);
  return doc;
}

Netlist netlist_from_json(const Json& doc)
{
  expect(doc, "netlist");
  Netlist nl;
  nl.radius = field<int>(doc, "radius");
  nl.independent = doc.value("independent", false);
  for (const auto& n : field<Json>(doc, "nets"))
  {
    Net net;
    net.id = field<NetId>(n, "id");
    net.name = n.value("name", "");
    net.source = pin_from_json(field<Json>(n, "source"));
    for (const auto& s : field<Json>(n, "sinks"))
      net.sinks.push_back({pin_from_json(field<Json>(s, "pin")), field<Length>(s, "length_segments")});
    nl.nets.push_back(std::move(net));
  }
  return nl;
}

Json stats_to_json(const SearchStats& stats)
{
  return {{"pushed", stats.pushed},
          {"popped", stats.popped},
          {"pruned", stats.pruned},
          {"peak_queue", stats.peak_queue},
          {"runtime_s", std::chrono::duration<double>(stats.duration).count()}};
}

Json route_result_to_json(const RouteResult& r, const Net& net)
{
  Json doc;
  doc["net"] = r.net;
  doc["name"] = net.name;
  doc["status"] = r.routed ? "routed" : "failed";
  doc["strategy_used"] = r.strategy_used;
  if (!r.routed)
  {
    doc["failed_sink"] = r.failed_sink ? Json(*r.failed_sink) : Json(nullptr);
    doc["reason"] = r.reason ? to_string(*r.reason) : "";
    doc["detail"] = r.detail;
  }
  doc["order"] = r.order;
  Json sinks = Json::array();
  for (const auto& s : r.sinks)
  {
    Json sd{{"index", s.index},
            {"pin", pin_to_json(net.sinks.at(s.index).pin)},
            {"length_segments", s.required},
            {"routed", s.routed}};
    if (s.routed)
    {
      sd["length"] = s.length;
      sd["arcs"] = s.path;
    }
    sd["fallback"] = s.fallback;
    sd["stats"] = stats_to_json(s.stats);
    sinks.push_back(std::move(sd));
  }
  doc["sinks"] = std::move(sinks);
  doc["tree"] = r.tree;
  doc["twl"] = r.twl;
  doc["stats"] = stats_to_json(r.stats);
  return doc;
}

Json netlist_result_to_json(const NetlistResult& result, const Netlist& netlist, Policy policy)
{
  Json doc = header("route_result");
  doc["policy"] = to_string(policy);
  doc["radius"] = netlist.radius;
  doc["routed"] = result.routed;
  doc["failed"] = result.failed;
  doc["twl"] = result.twl;
  doc["stats"] = stats_to_json(result.stats);
  Json nets = Json::array();
  for (std::size_t i = 0; i < result.nets.size(); ++i)
    nets.push_back(route_result_to_json(result.nets[i], netlist.nets.at(i)));
  doc["nets"] = std::move(nets);
  return doc;
}

Json spec_to_json(const BenchmarkSpec& spec)
{
  return {{"family", to_string(spec.family)},
          {"radius", spec.radius},
          {"seed", spec.seed},
          {"variant", spec.variant},
          {"lengths", spec.lengths},
          {"distance", spec.distance},
          {"sink_count", spec.sink_count},
          {"placements", spec.placements}};
}

BenchmarkSpec spec_from_json(const Json& doc)
{
  BenchmarkSpec spec;
  const auto family = parse_family(field<std::string>(doc, "family"));
  if (!family)
    throw FormatError("unknown benchmark family " + doc["family"].dump());
  spec.family = *family;
  spec.radius = field<int>(doc, "radius");
  spec.seed = doc.value("seed", std::uint64_t{0});
  spec.variant = doc.value("variant", 0);
  spec.lengths = doc.value("lengths", std::vector<Length>{});
  spec.distance = doc.value("distance", Length{0});
  spec.sink_count = doc.value("sink_count", 0);
  spec.placements = doc.value("placements", 0);
  return spec;
}

Json manifest_to_json(const std::vector<ManifestEntry>& entries)
{
  Json doc = header("manifest");
  Json list = Json::array();
  for (const auto& e : entries)
    list.push_back({{"name", e.name},
                    {"spec", spec_to_json(e.spec)},
                    {"nets", e.nets},
                    {"mesh", e.mesh_file},
                    {"netlist", e.netlist_file}});
  doc["instances"] = std::move(list);
  return doc;
}

std::vector<ManifestEntry> manifest_from_json(const Json& doc)
{
  expect(doc, "manifest");
  std::vector<ManifestEntry> out;
  for (const auto& e : field<Json>(doc, "instances"))
    out.push_back({.name = field<std::string>(e, "name"),
                   .spec = spec_from_json(field<Json>(e, "spec")),
                   .nets = e.value("nets", std::size_t{0}),
                   .mesh_file = field<std::string>(e, "mesh"),
                   .netlist_file = field<std::string>(e, "netlist")});
  return out;
}

Json verification_to_json(const VerificationReport& report, const RoutingResourceGraph& rrg)
{
  Json doc;
  doc["radius"] = rrg.mesh().radius();
  doc["pairs_checked"] = report.pairs_checked;
  doc["arc_target_checks"] = report.arc_target_checks;
  doc["admissibility_failures"] = report.admissibility_failures;
  doc["consistency_failures"] = report.consistency_failures;
  Json list = Json::array();
  for (const auto& c : report.counterexamples)
  {
    Json item{{"kind", c.kind == HeuristicCounterexample::Kind::Admissibility ? "admissibility" : "consistency"},
              {"from", c.from},
              {"target", c.target},
              {"estimate", c.estimate},
              {"bound", c.bound}};
    if (c.arc != kNoArc)
      item["arc"] = c.arc;
    list.push_back(std::move(item));
  }
  doc["counterexamples"] = std::move(list);
  return doc;
}

Json quantization_to_json(const FeasibleLengthSet& set, const QuantizationVerdict& verdict)
{
  Json counts = Json::object();
  for (const auto& [length, n] : set.counts)
    counts[std::to_string(length)] = n;
  return {{"source", set.source},
          {"target", set.target},
          {"bound", set.bound},
          {"lengths", set.lengths()},
          {"path_counts", counts},
          {"verdict", verdict.quantized ? "quantized" : "counterexample"},
          {"minimum", verdict.minimum},
          {"counterexamples", verdict.counterexamples}};
}

Json trace_event_to_json(const TraceEvent& e)
{
  return {{"event", e.kind == TraceEvent::Kind::Push ? "push" : "pop"},
          {"entry", e.entry},
          {"parent", e.parent == PathRecord::kRoot ? Json(nullptr) : Json(e.parent)},
          {"node", e.node},
          {"f", e.f},
          {"g", e.g}};
}

TraceEvent trace_event_from_json(const Json& doc)
{
  TraceEvent e;
  const auto kind = field<std::string>(doc, "event");
  if (kind != "push" && kind != "pop")
    throw FormatError("trace event must be push or pop, got \"" + kind + "\"");
  e.kind = kind == "push" ? TraceEvent::Kind::Push : TraceEvent::Kind::Pop;
  e.entry = field<std::uint32_t>(doc, "entry");
  e.parent = doc.contains("parent") && !doc["parent"].is_null() ? doc["parent"].get<std::uint32_t>() : PathRecord::kRoot;
  e.node = field<NodeId>(doc, "node");
  e.f = field<Length>(doc, "f");
  e.g = field<Length>(doc, "g");
  return e;
}

JsonLinesTrace::JsonLinesTrace(std::ostream& out) : out_(out) { out_ << header("trace").dump() << '\n'; }

void JsonLinesTrace::record(const TraceEvent& event) { out_ << trace_event_to_json(event).dump() << '\n'; }

std::vector<TraceEvent> read_trace(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open trace " + path.string());
  std::vector<TraceEvent> events;
  std::string line;
  bool headed = false;
  for (std::size_t number = 1; std::getline(in, line); ++number)
  {
    if (line.empty())
      continue;
    try
    {
      const auto doc = Json::parse(line);
      if (!headed)
      {
        expect(doc, "trace");
        headed = true;
        continue;
      }
      events.push_back(trace_event_from_json(doc));
    }
    catch (const nlohmann::json::exception& e)
    {
      throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
    catch (const FormatError& e)
    {
      throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  if (!headed)
    throw FormatError(path.string() + ": empty trace, no header line");
  return events;
}

Json read_json_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open " + path.string());
  Json doc;
  try
  {
    doc = Json::parse(in);
  }
  catch (const nlohmann::json::exception& e)
  {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") || doc["format_version"] != kFormatVersion)
    throw FormatError(path.string() + ": unsupported or missing format_version");
  return doc;
}

void write_json_file(const std::filesystem::path& path, const Json& doc)
{
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace hexroute
