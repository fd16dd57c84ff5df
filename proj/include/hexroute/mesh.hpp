#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexroute/types.hpp"

namespace hexroute {

/// Three-axis hexagonal coordinates of a coupler.
///
/// Couplers sit on hexagon borders. A coupler between cells `a` and `b`
/// (cube coordinates) gets `a + b`, i.e. twice its midpoint. The three values
/// sum to zero and exactly one of them is even; couplers one segment apart
/// differ by at most one on every axis.
struct AxialCoords
{
  int x = 0;
  int y = 0;
  int z = 0;

  auto operator<=>(const AxialCoords&) const = default;

  int operator[](std::size_t axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
};

/// Cube coordinate of a hexagonal cell (s = -q - r).
struct CellCoord
{
  int q = 0;
  int r = 0;

  int s() const { return -q - r; }
  auto operator<=>(const CellCoord&) const = default;
};

enum class CouplerState : std::uint8_t
{
  Available,
  Bar,
  Cross,
  Partial
};

std::string to_string(CouplerState state);

/// Ports 0/1 form side A, ports 2/3 side B. Even ports run along the coupler's
/// first cell, odd ports along the second one, so bar pairs are (0,2), (1,3)
/// and cross pairs are (0,3), (1,2).
inline constexpr int kPortsPerCoupler = 4;

inline constexpr int port_side(int port) { return port / 2; }
inline constexpr bool is_bar_pair(int a, int b) { return (a % 2) == (b % 2) && port_side(a) != port_side(b); }

struct PortRef
{
  CouplerId coupler = 0;
  int port = 0;

  auto operator<=>(const PortRef&) const = default;
};

struct Coupler
{
  CouplerId id = 0;
  AxialCoords coords;
  /// The two cells the coupler separates, ordered.
  std::array<CellCoord, 2> cells;
  /// Third cell of the hexagon corner at side A and side B.
  std::array<CellCoord, 2> corners;
  /// Segment partner of each port, absent on the mesh boundary.
  std::array<std::optional<PortRef>, kPortsPerCoupler> links;
};

/// A physical waveguide segment joining two coupler ports at a hexagon corner.
struct Segment
{
  PortRef a;
  PortRef b;
};

/// 2D drawing position (unit hexagon side).
struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

class MeshError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable hexagonal mesh of tunable 2x2 couplers.
class HexMesh
{
public:
  static constexpr int kMaxRadius = 12;

  HexMesh() = default;

  int radius() const { return radius_; }
  std::span<const CellCoord> cells() const { return cells_; }
  std::span<const Coupler> couplers() const { return couplers_; }
  std::span<const Segment> segments() const { return segments_; }

  const Coupler& coupler(CouplerId id) const { return couplers_.at(id); }
  std::optional<CouplerId> find_coupler(const AxialCoords& coords) const;

  /// Port at the other end of the segment attached to `port`, if any.
  std::optional<PortRef> linked_port(PortRef port) const;
  bool is_boundary_port(PortRef port) const { return !linked_port(port).has_value(); }

  Point2 cell_center(const CellCoord& cell) const;
  Point2 coupler_center(CouplerId id) const;
  Point2 port_position(PortRef port) const;

private:
  friend HexMesh build_mesh(int radius);

  int radius_ = 0;
  std::vector<CellCoord> cells_;
  std::vector<Coupler> couplers_;
  std::vector<Segment> segments_;
  std::map<AxialCoords, CouplerId> by_coords_;
};

/// Deterministic construction; throws MeshError when radius is negative or
/// exceeds HexMesh::kMaxRadius.
HexMesh build_mesh(int radius);

/// Closed-form counts, used for quick sanity checks.
std::size_t expected_coupler_count(int radius);
std::size_t expected_segment_count(int radius);

}  // namespace hexroute
