#include "hexroute/search.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace hexroute {

SearchStats& SearchStats::operator+=(const SearchStats& other)
{
  pushed += other.pushed;
  popped += other.popped;
  pruned += other.pruned;
  peak_queue = std::max(peak_queue, other.peak_queue);
  duration += other.duration;
  return *this;
}

std::string to_string(SearchStatus status)
{
  switch (status)
  {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::NotFound:
      return "not_found";
    case SearchStatus::Infeasible:
      return "infeasible";
    case SearchStatus::Exhausted:
      return "exhausted";
  }
  return "unknown";
}

std::string to_string(Strategy strategy)
{
  switch (strategy)
  {
    case Strategy::Greedy:
      return "greedy";
    case Strategy::HLM:
      return "hlm";
    case Strategy::DSLM:
      return "dslm";
    case Strategy::Lemar:
      return "lemar";
    case Strategy::Shortest:
      return "shortest";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(const std::string& name)
{
  for (auto s : {Strategy::Greedy, Strategy::HLM, Strategy::DSLM, Strategy::Lemar, Strategy::Shortest})
    if (to_string(s) == name)
      return s;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t mix(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Entry
{
  Length f = 0;
  Length g = 0;
  std::uint64_t seq = 0;
  std::uint32_t record = 0;
};

// Smallest f first, then larger g (deeper), then insertion order.
struct Lower
{
  bool operator()(const Entry& a, const Entry& b) const
  {
    if (a.f != b.f)
      return a.f > b.f;
    if (a.g != b.g)
      return a.g < b.g;
    return a.seq > b.seq;
  }
};

enum class Key : std::uint8_t
{
  Remaining,           // L - g
  RemainingEstimate,   // L - g - h
  Estimate,            // g + h
};

struct BudgetExceeded
{
};

class Engine
{
public:
  explicit Engine(const SearchProblem& problem) : p_(problem) {}

  SearchStats& stats() { return stats_; }
  bool empty() const { return queue_.empty(); }

  Length key(Key kind, NodeId node, Length g) const
  {
    switch (kind)
    {
      case Key::Remaining:
        return p_.length - g;
      case Key::RemainingEstimate:
        return p_.length - g - p_.estimator.estimate(node, p_.target);
      case Key::Estimate:
        return g + p_.estimator.estimate(node, p_.target);
    }
    return 0;
  }

  void push_source(Key kind)
  {
    arena_.push_back({p_.source, kNoArc, PathRecord::kRoot, 0});
    push_entry(key(kind, p_.source, 0), 0, 0, PathRecord::kRoot);
  }

  Entry pop()
  {
    Entry e = queue_.top();
    queue_.pop();
    ++stats_.popped;
    if (p_.trace)
      p_.trace->record({TraceEvent::Kind::Pop, e.record, arena_[e.record].parent, arena_[e.record].node, e.f, e.g});
    return e;
  }

  const PathRecord& record(std::uint32_t index) const { return arena_[index]; }

  bool is_target(const Entry& e) const { return arena_[e.record].node == p_.target; }

  /// Paths that reached the target are never extended: any extension would
  /// have to enter the target coupler a second time.
  bool terminal(const Entry& e) const
  {
    return is_target(e) && arena_[e.record].parent != PathRecord::kRoot;
  }

  /// Pushes the admissible successors of `e`. With `prune`, successors whose
  /// key is negative are dropped.
  void expand(const Entry& e, Key kind, bool prune, bool drop_over_length)
  {
    const NodeId node = arena_[e.record].node;
    steps_.clear();
    p_.space.successors(node, steps_);
    if (p_.seed != 0)
      std::stable_sort(steps_.begin(), steps_.end(), [&](const Step& a, const Step& b) {
        return mix(p_.seed ^ a.arc) < mix(p_.seed ^ b.arc);
      });

    for (const Step& step : steps_)
    {
      // The arena grows below, so the view is rebuilt per step.
      if (!p_.space.admits(PartialPath(arena_, e.record), step, p_.target))
      {
        ++stats_.pruned;
        continue;
      }
      const Length g = e.g + step.length;
      if (drop_over_length && g > p_.length)
      {
        ++stats_.pruned;
        continue;
      }
      const Length f = key(kind, step.head, g);
      if (prune && f < 0)
      {
        ++stats_.pruned;
        continue;
      }
      const auto index = static_cast<std::uint32_t>(arena_.size());
      arena_.push_back({step.head, step.arc, e.record, g});
      push_entry(f, g, index, e.record);
    }
  }

  /// Re-keys every queued entry, dropping negative keys when pruning.
  void rekey(Key kind, bool prune)
  {
    std::vector<Entry> entries;
    entries.reserve(queue_.size());
    while (!queue_.empty())
    {
      entries.push_back(queue_.top());
      queue_.pop();
    }
    for (Entry& e : entries)
    {
      e.f = key(kind, arena_[e.record].node, e.g);
      if (prune && e.f < 0)
      {
        ++stats_.pruned;
        continue;
      }
      queue_.push(e);
    }
  }

  std::vector<ArcId> path_to(std::uint32_t index) const
  {
    std::vector<ArcId> path;
    for (std::uint32_t i = index; arena_[i].parent != PathRecord::kRoot; i = arena_[i].parent)
      path.push_back(arena_[i].arc);
    std::reverse(path.begin(), path.end());
    return path;
  }

private:
  void push_entry(Length f, Length g, std::uint32_t index, std::uint32_t parent)
  {
    if (stats_.pushed >= p_.push_budget)
      throw BudgetExceeded{};
    queue_.push({f, g, seq_++, index});
    ++stats_.pushed;
    stats_.peak_queue = std::max(stats_.peak_queue, queue_.size());
    if (p_.trace)
      p_.trace->record({TraceEvent::Kind::Push, index, parent, arena_[index].node, f, g});
  }

  const SearchProblem& p_;
  std::vector<PathRecord> arena_;
  std::priority_queue<Entry, std::vector<Entry>, Lower> queue_;
  std::vector<Step> steps_;
  SearchStats stats_;
  std::uint64_t seq_ = 0;
};

SearchOutcome finish(SearchOutcome out, Clock::time_point start)
{
  out.stats.duration = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return out;
}

SearchOutcome found(Engine& engine, const Entry& e)
{
  SearchOutcome out;
  out.status = SearchStatus::Found;
  out.path = engine.path_to(e.record);
  out.length = e.g;
  out.stats = engine.stats();
  return out;
}

SearchOutcome exhausted(const SearchProblem& problem, const SearchStats& stats)
{
  SearchOutcome out;
  out.status = SearchStatus::Exhausted;
  out.stats = stats;
  out.reason = "push budget of " + std::to_string(problem.push_budget) + " exceeded";
  return out;
}

SearchOutcome not_found(const SearchStats& stats, std::string reason)
{
  SearchOutcome out;
  out.status = SearchStatus::NotFound;
  out.stats = stats;
  out.reason = std::move(reason);
  return out;
}

struct LmMode
{
  Key key;
  bool prune;
  bool drop_over_length;
};

// Pops until an exact-length target entry appears or the queue drains.
SearchOutcome drain_lm(Engine& engine, const LmMode& mode, const SearchProblem& problem)
{
  while (!engine.empty())
  {
    const Entry e = engine.pop();
    if (engine.is_target(e) && e.g == problem.length)
      return found(engine, e);
    if (engine.terminal(e))
      continue;
    engine.expand(e, mode.key, mode.prune, mode.drop_over_length);
  }
  return not_found(engine.stats(), "no path of length " + std::to_string(problem.length));
}

SearchOutcome run_lm(const SearchProblem& problem, const LmMode& mode)
{
  const auto start = Clock::now();
  Engine engine(problem);
  try
  {
    engine.push_source(mode.key);
    return finish(drain_lm(engine, mode, problem), start);
  }
  catch (const BudgetExceeded&)
  {
    return finish(exhausted(problem, engine.stats()), start);
  }
}

constexpr LmMode kGreedy{Key::Remaining, true, true};
constexpr LmMode kHeuristic{Key::RemainingEstimate, true, false};
constexpr LmMode kLemar{Key::Estimate, false, false};

// Stage 1 of DS-LM and plain shortest path search. Leaves the engine queue
// intact for a following detour stage. Returns the target entry, if popped.
std::optional<Entry> shortest_stage(Engine& engine, const SearchProblem& problem)
{
  std::unordered_map<NodeId, Length> best;
  engine.push_source(Key::Estimate);
  while (!engine.empty())
  {
    const Entry e = engine.pop();
    const NodeId node = engine.record(e.record).node;
    if (auto it = best.find(node); it != best.end() && it->second <= e.g)
      continue;
    best[node] = e.g;
    if (node == problem.target)
      return e;
    engine.expand(e, Key::Estimate, false, false);
  }
  return std::nullopt;
}

}  // namespace

SearchOutcome shortest_path(const SearchProblem& problem)
{
  const auto start = Clock::now();
  Engine engine(problem);
  try
  {
    if (auto hit = shortest_stage(engine, problem))
      return finish(found(engine, *hit), start);
    return finish(not_found(engine.stats(), "target unreachable"), start);
  }
  catch (const BudgetExceeded&)
  {
    return finish(exhausted(problem, engine.stats()), start);
  }
}

SearchOutcome greedy_lm(const SearchProblem& problem) { return run_lm(problem, kGreedy); }

SearchOutcome h_lm(const SearchProblem& problem) { return run_lm(problem, kHeuristic); }

SearchOutcome lemar_like(const SearchProblem& problem) { return run_lm(problem, kLemar); }

SearchOutcome ds_lm(const SearchProblem& problem)
{
  const auto start = Clock::now();
  Engine engine(problem);
  SearchStats spent;
  try
  {
    const auto hit = shortest_stage(engine, problem);
    if (hit)
    {
      if (hit->g == problem.length)
        return finish(found(engine, *hit), start);
      if (hit->g > problem.length)
      {
        SearchOutcome out;
        out.status = SearchStatus::Infeasible;
        out.stats = engine.stats();
        out.reason = "shortest path (" + std::to_string(hit->g) + ") exceeds required length " +
                     std::to_string(problem.length);
        return finish(std::move(out), start);
      }
      engine.rekey(Key::RemainingEstimate, true);
      auto detour = drain_lm(engine, kHeuristic, problem);
      if (detour.found())
        return finish(std::move(detour), start);
    }
    spent = engine.stats();
  }
  catch (const BudgetExceeded&)
  {
    return finish(exhausted(problem, engine.stats()), start);
  }

  // Stage 1 discards dominated partial paths for good, so an empty detour
  // stage does not prove infeasibility. Search again without that loss.
  SearchProblem rest = problem;
  rest.push_budget = problem.push_budget - std::min(problem.push_budget, spent.pushed);
  auto again = h_lm(rest);
  again.fallback = true;
  spent.duration = {};
  again.stats += spent;
  again.stats.duration = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  if (again.status == SearchStatus::Exhausted)
    again.reason = "push budget of " + std::to_string(problem.push_budget) + " exceeded";
  return again;
}

SearchOutcome run_strategy(Strategy strategy, const SearchProblem& problem)
{
  switch (strategy)
  {
    case Strategy::Greedy:
      return greedy_lm(problem);
    case Strategy::HLM:
      return h_lm(problem);
    case Strategy::DSLM:
      return ds_lm(problem);
    case Strategy::Lemar:
      return lemar_like(problem);
    case Strategy::Shortest:
      return shortest_path(problem);
  }
  return {};
}

}  // namespace hexroute
