#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "hexroute/benchgen.hpp"
#include "hexroute/heuristic.hpp"
#include "hexroute/multipin.hpp"
#include "hexroute/oracle.hpp"
#include "hexroute/rrg.hpp"
#include "hexroute/search.hpp"

namespace hexroute {

using Json = nlohmann::ordered_json;

/// Every document written by this library carries this `format_version`.
inline constexpr int kFormatVersion = 1;

class FormatError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Radius, couplers (id, coordinates, cells, state) and segments.
Json mesh_to_json(const RoutingResourceGraph& rrg);
/// Rebuilds the mesh from its radius and checks the document against it.
RoutingResourceGraph mesh_from_json(const Json& doc);

Json pin_to_json(const Pin& pin);
Pin pin_from_json(const Json& doc);

Json netlist_to_json(const Netlist& netlist);
Netlist netlist_from_json(const Json& doc);

/// Runtime is the only field that differs between identical runs; it is
/// always written under the key "runtime_s".
Json stats_to_json(const SearchStats& stats);

Json route_result_to_json(const RouteResult& result, const Net& net);
/// Full routing report: policy, per-net results, totals.
Json netlist_result_to_json(const NetlistResult& result, const Netlist& netlist, Policy policy);

Json spec_to_json(const BenchmarkSpec& spec);
BenchmarkSpec spec_from_json(const Json& doc);

struct ManifestEntry
{
  std::string name;
  BenchmarkSpec spec;
  std::size_t nets = 0;
  /// Paths relative to the manifest.
  std::string mesh_file;
  std::string netlist_file;
};

Json manifest_to_json(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> manifest_from_json(const Json& doc);

Json verification_to_json(const VerificationReport& report, const RoutingResourceGraph& rrg);
Json quantization_to_json(const FeasibleLengthSet& set, const QuantizationVerdict& verdict);

Json trace_event_to_json(const TraceEvent& event);
TraceEvent trace_event_from_json(const Json& doc);

/// Writes one JSON object per line, after a header line carrying
/// `format_version` and kind "trace".
class JsonLinesTrace final : public TraceSink
{
public:
  explicit JsonLinesTrace(std::ostream& out);
  void record(const TraceEvent& event) override;

private:
  std::ostream& out_;
};

/// Throws FormatError on a missing header or a malformed line.
std::vector<TraceEvent> read_trace(const std::filesystem::path& path);

/// Throws FormatError when the file is missing, unparsable or of another
/// format version.
Json read_json_file(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);

}  // namespace hexroute
