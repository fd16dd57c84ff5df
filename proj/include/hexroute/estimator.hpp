#pragma once

#include "hexroute/types.hpp"

namespace hexroute {

/// Lower bound on the remaining segment count from one node to another.
class Estimator
{
public:
  virtual ~Estimator() = default;
  virtual Length estimate(NodeId from, NodeId to) const = 0;
};

class ZeroEstimator final : public Estimator
{
public:
  Length estimate(NodeId, NodeId) const override { return 0; }
};

/// Adds a constant to another estimator. Only useful to exercise the
/// verification code with a deliberately overestimating heuristic.
class InflatedEstimator final : public Estimator
{
public:
  InflatedEstimator(const Estimator& base, Length extra) : base_(base), extra_(extra) {}
  Length estimate(NodeId from, NodeId to) const override { return base_.estimate(from, to) + extra_; }

private:
  const Estimator& base_;
  Length extra_;
};

}  // namespace hexroute
