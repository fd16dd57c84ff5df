#include "hexroute/grid.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hexroute {

GridSpace::GridSpace(int width, int height)
    : width_(width), height_(height), blocked_(static_cast<std::size_t>(width * height), false)
{
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("grid dimensions must be positive");
}

void GridSpace::block(int x, int y) { blocked_.at(node(x, y)) = true; }

void GridSpace::successors(NodeId n, std::vector<Step>& out) const
{
  static constexpr int kDx[] = {1, 0, -1, 0};
  static constexpr int kDy[] = {0, 1, 0, -1};
  const int x = x_of(n);
  const int y = y_of(n);
  for (int d = 0; d < 4; ++d)
  {
    const int nx = x + kDx[d];
    const int ny = y + kDy[d];
    if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_ || blocked_[node(nx, ny)])
      continue;
    out.push_back({node(nx, ny), n * 4 + static_cast<ArcId>(d), 1});
  }
}

bool GridSpace::admits(const PartialPath& prefix, const Step& step, NodeId) const
{
  for (PartialPath p = prefix;; p = p.parent())
  {
    if (p.node() == step.head)
      return false;
    if (p.is_root())
      return true;
  }
}

Length ManhattanEstimator::estimate(NodeId from, NodeId to) const
{
  return std::abs(grid_.x_of(from) - grid_.x_of(to)) + std::abs(grid_.y_of(from) - grid_.y_of(to));
}

}  // namespace hexroute
