#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hexroute/estimator.hpp"
#include "hexroute/types.hpp"

namespace hexroute {

/// One outgoing arc offered by a search space.
struct Step
{
  NodeId head = kNoNode;
  ArcId arc = kNoArc;
  Length length = 0;
};

/// Parent-pointer record of a partial path. Records are immutable once
/// created; a queue entry refers to exactly one record.
struct PathRecord
{
  static constexpr std::uint32_t kRoot = 0xffffffffu;

  NodeId node = kNoNode;
  ArcId arc = kNoArc;
  std::uint32_t parent = kRoot;
  Length g = 0;
};

/// Read-only view of a partial path, walked from its last node back to the
/// source.
class PartialPath
{
public:
  PartialPath(std::span<const PathRecord> arena, std::uint32_t index) : arena_(arena), index_(index) {}

  NodeId node() const { return arena_[index_].node; }
  Length g() const { return arena_[index_].g; }
  bool is_root() const { return arena_[index_].parent == PathRecord::kRoot; }
  /// Arc that reached node(); kNoArc at the root.
  ArcId arc() const { return arena_[index_].arc; }
  PartialPath parent() const { return {arena_, arena_[index_].parent}; }

private:
  std::span<const PathRecord> arena_;
  std::uint32_t index_;
};

/// Graph view the engines search over. Legality may depend on the whole
/// partial path (coupler revisits, opposite arcs, tree sharing).
class SearchSpace
{
public:
  virtual ~SearchSpace() = default;

  virtual void successors(NodeId node, std::vector<Step>& out) const = 0;
  virtual bool admits(const PartialPath& prefix, const Step& step, NodeId target) const = 0;
};

struct TraceEvent
{
  enum class Kind : std::uint8_t
  {
    Push,
    Pop
  };

  Kind kind = Kind::Push;
  std::uint32_t entry = 0;
  /// PathRecord::kRoot for the source entry.
  std::uint32_t parent = PathRecord::kRoot;
  NodeId node = kNoNode;
  Length f = 0;
  Length g = 0;
};

class TraceSink
{
public:
  virtual ~TraceSink() = default;
  virtual void record(const TraceEvent& event) = 0;
};

/// Collects events in memory.
class TraceBuffer final : public TraceSink
{
public:
  void record(const TraceEvent& event) override { events.push_back(event); }
  std::vector<TraceEvent> events;
};

inline constexpr std::uint64_t kDefaultPushBudget = 5'000'000;

struct SearchProblem
{
  const SearchSpace& space;
  NodeId source = kNoNode;
  NodeId target = kNoNode;
  /// Required exact length in segments.
  Length length = 0;
  const Estimator& estimator;
  /// Maximum number of queue insertions.
  std::uint64_t push_budget = kDefaultPushBudget;
  /// Non-zero seeds permute successor order deterministically.
  std::uint64_t seed = 0;
  TraceSink* trace = nullptr;
};

struct SearchStats
{
  std::uint64_t pushed = 0;
  std::uint64_t popped = 0;
  /// Successors rejected by legality or by the length bound.
  std::uint64_t pruned = 0;
  std::size_t peak_queue = 0;
  std::chrono::nanoseconds duration{0};

  SearchStats& operator+=(const SearchStats& other);
};

enum class SearchStatus : std::uint8_t
{
  Found,
  NotFound,
  Infeasible,
  Exhausted
};

std::string to_string(SearchStatus status);

struct SearchOutcome
{
  SearchStatus status = SearchStatus::NotFound;
  std::vector<ArcId> path;
  Length length = 0;
  SearchStats stats;
  std::string reason;
  /// DS-LM only: the fresh H-LM pass had to run.
  bool fallback = false;

  bool found() const { return status == SearchStatus::Found; }
};

enum class Strategy : std::uint8_t
{
  Greedy,
  HLM,
  DSLM,
  Lemar,
  Shortest
};

std::string to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(const std::string& name);

/// A* on g + h with a per-node dominance map; ignores problem.length.
SearchOutcome shortest_path(const SearchProblem& problem);

/// Key L - g: deepest partial path first, pruned only at g > L.
SearchOutcome greedy_lm(const SearchProblem& problem);

/// Key L - g - h, successors with a negative key are pruned. Nodes may be
/// revisited through different partial paths.
SearchOutcome h_lm(const SearchProblem& problem);

/// Shortest-path stage, then the surviving queue is re-keyed with L - g - h
/// and searched for detours. Falls back to a fresh h_lm pass if the detour
/// stage runs dry.
SearchOutcome ds_lm(const SearchProblem& problem);

/// Key g + h with neither length pruning nor a visited map.
SearchOutcome lemar_like(const SearchProblem& problem);

SearchOutcome run_strategy(Strategy strategy, const SearchProblem& problem);

}  // namespace hexroute
