#include "hexroute/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hexroute {

namespace {

// Consecutive entries are adjacent to each other, so a cell and two
// consecutive neighbours meet at one hexagon corner.
constexpr std::array<CellCoord, 6> kCellDirs = {{
    {1, -1},
    {1, 0},
    {0, 1},
    {-1, 1},
    {-1, 0},
    {0, -1},
}};

CellCoord add(const CellCoord& a, const CellCoord& b) { return {a.q + b.q, a.r + b.r}; }

bool adjacent(const CellCoord& a, const CellCoord& b)
{
  const int dq = a.q - b.q;
  const int dr = a.r - b.r;
  const int ds = a.s() - b.s();
  return std::max({std::abs(dq), std::abs(dr), std::abs(ds)}) == 1;
}

AxialCoords midpoint2(const CellCoord& a, const CellCoord& b) { return {a.q + b.q, a.r + b.r, a.s() + b.s()}; }

AxialCoords corner3(const CellCoord& a, const CellCoord& b, const CellCoord& c)
{
  return {a.q + b.q + c.q, a.r + b.r + c.r, a.s() + b.s() + c.s()};
}

using CellPair = std::pair<CellCoord, CellCoord>;

CellPair ordered(const CellCoord& a, const CellCoord& b) { return a < b ? CellPair{a, b} : CellPair{b, a}; }

}  // namespace

std::string to_string(CouplerState state)
{
  switch (state)
  {
    case CouplerState::Available:
      return "available";
    case CouplerState::Bar:
      return "bar";
    case CouplerState::Cross:
      return "cross";
    case CouplerState::Partial:
      return "partial";
  }
  return "unknown";
}

std::size_t expected_coupler_count(int radius)
{
  const auto r = static_cast<std::size_t>(radius);
  return 9 * r * r + 15 * r + 6;
}

std::size_t expected_segment_count(int radius)
{
  const auto r = static_cast<std::size_t>(radius);
  return 18 * r * r + 24 * r + 6;
}

HexMesh build_mesh(int radius)
{
  if (radius < 0 || radius > HexMesh::kMaxRadius)
    throw MeshError("mesh radius must be in [0, " + std::to_string(HexMesh::kMaxRadius) + "], got " +
                    std::to_string(radius));

  HexMesh mesh;
  mesh.radius_ = radius;

  for (int q = -radius; q <= radius; ++q)
    for (int r = -radius; r <= radius; ++r)
      if (std::abs(q + r) <= radius)
        mesh.cells_.push_back({q, r});

  // Every border of an inside cell carries one coupler, boundary borders
  // included.
  std::set<CellPair> edges;
  for (const auto& cell : mesh.cells_)
    for (const auto& dir : kCellDirs)
      edges.insert(ordered(cell, add(cell, dir)));

  std::vector<CellPair> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end(), [](const CellPair& a, const CellPair& b) {
    return midpoint2(a.first, a.second) < midpoint2(b.first, b.second);
  });

  std::map<CellPair, CouplerId> edge_id;
  for (const auto& pair : sorted)
  {
    Coupler c;
    c.id = static_cast<CouplerId>(mesh.couplers_.size());
    c.coords = midpoint2(pair.first, pair.second);
    c.cells = {pair.first, pair.second};

    std::vector<CellCoord> common;
    for (const auto& dir : kCellDirs)
    {
      const auto cand = add(pair.first, dir);
      if (adjacent(cand, pair.second))
        common.push_back(cand);
    }
    std::sort(common.begin(), common.end(), [&](const CellCoord& a, const CellCoord& b) {
      return corner3(pair.first, pair.second, a) < corner3(pair.first, pair.second, b);
    });
    c.corners = {common.at(0), common.at(1)};

    edge_id.emplace(pair, c.id);
    mesh.by_coords_.emplace(c.coords, c.id);
    mesh.couplers_.push_back(c);
  }

  for (auto& c : mesh.couplers_)
  {
    for (int side = 0; side < 2; ++side)
    {
      const auto& corner = c.corners[side];
      for (int along = 0; along < 2; ++along)
      {
        const auto& cell = c.cells[along];
        const auto key = ordered(cell, corner);
        auto it = edge_id.find(key);
        if (it == edge_id.end())
          continue;
        const Coupler& peer = mesh.couplers_[it->second];
        const CellCoord peer_corner = c.cells[1 - along];
        const int peer_side = (peer.corners[0] == peer_corner) ? 0 : 1;
        // Both ends of a segment run along the cell the two borders share.
        const int peer_along = (peer.cells[0] == cell) ? 0 : 1;
        c.links[side * 2 + along] = PortRef{peer.id, peer_side * 2 + peer_along};
      }
    }
  }

  for (const auto& c : mesh.couplers_)
    for (int p = 0; p < kPortsPerCoupler; ++p)
      if (const auto& link = c.links[p]; link && PortRef{c.id, p} < *link)
        mesh.segments_.push_back({PortRef{c.id, p}, *link});

  return mesh;
}

std::optional<CouplerId> HexMesh::find_coupler(const AxialCoords& coords) const
{
  auto it = by_coords_.find(coords);
  if (it == by_coords_.end())
    return std::nullopt;
  return it->second;
}

std::optional<PortRef> HexMesh::linked_port(PortRef port) const
{
  return couplers_.at(port.coupler).links.at(static_cast<std::size_t>(port.port));
}

Point2 HexMesh::cell_center(const CellCoord& cell) const
{
  return {std::sqrt(3.0) * (cell.q + cell.r / 2.0), 1.5 * cell.r};
}

Point2 HexMesh::coupler_center(CouplerId id) const
{
  const auto& c = coupler(id);
  const auto a = cell_center(c.cells[0]);
  const auto b = cell_center(c.cells[1]);
  return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
}

Point2 HexMesh::port_position(PortRef port) const
{
  const auto& c = coupler(port.coupler);
  const auto mid = coupler_center(port.coupler);
  const auto a = cell_center(c.cells[0]);
  const auto b = cell_center(c.cells[1]);
  const auto k = cell_center(c.corners[static_cast<std::size_t>(port_side(port.port))]);
  const Point2 corner{(a.x + b.x + k.x) / 3.0, (a.y + b.y + k.y) / 3.0};
  const auto& along = (port.port % 2 == 0) ? a : b;
  return {mid.x + 0.30 * (corner.x - mid.x) + 0.10 * (along.x - mid.x),
          mid.y + 0.30 * (corner.y - mid.y) + 0.10 * (along.y - mid.y)};
}

}  // namespace hexroute
