#pragma once

#include "hexroute/estimator.hpp"
#include "hexroute/search.hpp"

namespace hexroute {

/// Rectangular 4-connected maze used as a small fixture for the search
/// engines. Paths may not visit a cell twice.
class GridSpace final : public SearchSpace
{
public:
  GridSpace(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  NodeId node(int x, int y) const { return static_cast<NodeId>(y * width_ + x); }
  int x_of(NodeId n) const { return static_cast<int>(n) % width_; }
  int y_of(NodeId n) const { return static_cast<int>(n) / width_; }

  void block(int x, int y);

  void successors(NodeId node, std::vector<Step>& out) const override;
  bool admits(const PartialPath& prefix, const Step& step, NodeId target) const override;

private:
  int width_;
  int height_;
  std::vector<bool> blocked_;
};

/// |dx| + |dy|.
class ManhattanEstimator final : public Estimator
{
public:
  explicit ManhattanEstimator(const GridSpace& grid) : grid_(grid) {}
  Length estimate(NodeId from, NodeId to) const override;

private:
  const GridSpace& grid_;
};

}  // namespace hexroute
