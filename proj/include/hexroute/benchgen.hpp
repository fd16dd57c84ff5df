#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexroute/multipin.hpp"

namespace hexroute {

enum class Family : std::uint8_t
{
  MZI,
  ORR,
  OTTD,
  Multicast,
  Sweep
};

std::string to_string(Family family);
std::optional<Family> parse_family(const std::string& name);

struct BenchmarkSpec
{
  Family family = Family::MZI;
  int radius = 0;
  std::uint64_t seed = 0;
  /// Index of the certified placement, in candidate order.
  int variant = 0;
  std::vector<Length> lengths;
  /// Coupler distance between the main pins (MZI 3, OTTD 8).
  Length distance = 0;
  int sink_count = 0;
  /// Sweep only: number of pin pairs the lengths are repeated over.
  int placements = 0;
};

struct Benchmark
{
  std::string name;
  BenchmarkSpec spec;
  Netlist netlist;
};

class BenchgenError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultMziRadius = 2;
inline constexpr int kDefaultOrrRadius = 2;
inline constexpr int kDefaultOttdRadius = 3;
inline constexpr int kDefaultMulticastRadius = 3;
inline constexpr Length kMziDistance = 3;
inline constexpr Length kOttdDistance = 8;

/// Two arm nets of length L from the splitter's side-B outputs to the
/// combiner's side-A inputs (couplers 3 segments apart), then a shortest
/// input net into the splitter and a shortest output net from the combiner.
Benchmark gen_mzi(int radius, Length length, int variant = 0);
/// Non-zero seeds shuffle the placement candidates.
Benchmark gen_mzi(int radius, Length length, int variant, std::uint64_t seed);

/// One net leaving a coupler on side B and returning into it on side A.
Benchmark gen_orr(int radius, Length length, int variant = 0);
Benchmark gen_orr(int radius, Length length, int variant, std::uint64_t seed);

/// Shortest closed ring through a coupler, over every ring placement.
Length minimal_ring_length(int radius);

/// One net per length between pins 8 segments apart. The nets share their
/// pins and are routed independently.
Benchmark gen_ottd(int radius, const std::vector<Length>& lengths, int variant = 0);

/// `instances` nets of one source and `sink_count` sinks on distinct couplers,
/// 3 to 8 segments away. Each sink gets a distinct even offset over its
/// shortest distance, and the resulting lengths are distinct as well.
std::vector<Benchmark> gen_multicast(int radius, int sink_count, int instances, std::uint64_t seed);

inline constexpr int kDefaultSweepPlacements = 8;

/// Every length repeated over `placements` distance-8 pin pairs, one per
/// source coupler in seeded order. Net names are "p<placement>_L<length>";
/// the nets are routed independently.
Benchmark gen_sweep(int radius,
                    const std::vector<Length>& lengths,
                    int placements = kDefaultSweepPlacements,
                    std::uint64_t seed = 1);

/// Instances for the comparison tables: B1 (MZI), B2 (ORR) or B3 (OTTD).
std::vector<Benchmark> gen_suite(Family family, int count, std::uint64_t seed);

/// Parses "first:last:step" or a comma separated list.
std::vector<Length> parse_lengths(const std::string& text);

/// Routes the benchmark and returns the result; a certified benchmark is
/// fully routed with the automatic policy.
NetlistResult certify(const Benchmark& bench);

}  // namespace hexroute
