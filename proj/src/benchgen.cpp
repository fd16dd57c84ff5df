#include "hexroute/benchgen.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "hexroute/mesh_search.hpp"

namespace hexroute {

std::string to_string(Family family)
{
  switch (family)
  {
    case Family::MZI:
      return "mzi";
    case Family::ORR:
      return "orr";
    case Family::OTTD:
      return "ottd";
    case Family::Multicast:
      return "multicast";
    case Family::Sweep:
      return "sweep";
  }
  return "unknown";
}

std::optional<Family> parse_family(const std::string& name)
{
  for (auto f : {Family::MZI, Family::ORR, Family::OTTD, Family::Multicast, Family::Sweep})
    if (to_string(f) == name)
      return f;
  return std::nullopt;
}

namespace {

struct Context
{
  explicit Context(int radius)
      : rrg(build_rrg(std::make_shared<const HexMesh>(build_mesh(radius)))),
        space(rrg),
        estimator(rrg, HeuristicBackend::HexFormula),
        exact(rrg.mesh())
  {
  }

  CouplerId couplers() const { return static_cast<CouplerId>(rrg.mesh().couplers().size()); }

  Length distance(NodeId s, NodeId t) const
  {
    const SearchProblem p{.space = space, .source = s, .target = t, .length = 0, .estimator = estimator};
    const auto out = shortest_path(p);
    return out.found() ? out.length : kUnreachable;
  }

  bool linked(CouplerId c, int port) const { return !rrg.mesh().is_boundary_port({c, port}); }

  RoutingResourceGraph rrg;
  MeshSearchSpace space;
  MeshEstimator estimator;
  CouplerDistances exact;
};

NodeId in(CouplerId c, int port) { return RoutingResourceGraph::node_id(c, port, PortDir::In); }
NodeId out(CouplerId c, int port) { return RoutingResourceGraph::node_id(c, port, PortDir::Out); }

bool routes(const Context& ctx, const Netlist& netlist)
{
  RoutingResourceGraph copy = ctx.rrg;
  const auto r = route_netlist(copy, netlist, Policy::Auto);
  return r.failed == 0;
}

std::vector<CouplerId> coupler_order(const Context& ctx, std::uint64_t seed)
{
  std::vector<CouplerId> order(ctx.couplers());
  std::iota(order.begin(), order.end(), CouplerId{0});
  if (seed != 0)
  {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

void check_radius(int radius)
{
  if (radius < 0 || radius > HexMesh::kMaxRadius)
    throw BenchgenError("radius must be in [0, " + std::to_string(HexMesh::kMaxRadius) + "]");
}

std::string suffix(int radius, int variant) { return "_r" + std::to_string(radius) + "_v" + std::to_string(variant); }

// Boundary pins ordered by coupler distance to `near`, skipping `avoid`.
std::vector<PortRef> boundary_ports(const Context& ctx, CouplerId near, const std::set<CouplerId>& avoid)
{
  std::vector<PortRef> ports;
  for (CouplerId c = 0; c < ctx.couplers(); ++c)
    if (!avoid.contains(c))
      for (int p = 0; p < kPortsPerCoupler; ++p)
        if (!ctx.linked(c, p))
          ports.push_back({c, p});
  std::stable_sort(ports.begin(), ports.end(), [&](const PortRef& a, const PortRef& b) {
    return ctx.exact.at(a.coupler, near) < ctx.exact.at(b.coupler, near);
  });
  return ports;
}

}  // namespace

namespace {

// Input and output nets for a routed pair of arms, or nothing if no nearby
// boundary pins can be certified.
std::optional<Netlist> with_io(const Context& ctx, const Netlist& arms, const Pin& into, const Pin& from)
{
  constexpr std::size_t kTries = 4;
  const std::set<CouplerId> avoid{into.coupler, from.coupler};
  const auto ins = boundary_ports(ctx, into.coupler, avoid);
  const auto outs = boundary_ports(ctx, from.coupler, avoid);
  for (std::size_t i = 0; i < std::min(kTries, ins.size()); ++i)
    for (std::size_t o = 0; o < std::min(kTries, outs.size()); ++o)
    {
      if (ins[i].coupler == outs[o].coupler)
        continue;
      const Pin src{ins[i].coupler, ins[i].port, PortDir::In};
      const Pin dst{outs[o].coupler, outs[o].port, PortDir::Out};
      const Length din = ctx.distance(ctx.rrg.resolve(src), ctx.rrg.resolve(into));
      const Length dout = ctx.distance(ctx.rrg.resolve(from), ctx.rrg.resolve(dst));
      if (din == kUnreachable || dout == kUnreachable)
        continue;
      Netlist full = arms;
      full.nets.push_back(Net{.id = 3, .name = "input", .source = src, .sinks = {{into, din}}});
      full.nets.push_back(Net{.id = 4, .name = "output", .source = from, .sinks = {{dst, dout}}});
      if (routes(ctx, full))
        return full;
    }
  return std::nullopt;
}

}  // namespace

Benchmark gen_mzi(int radius, Length length, int variant, std::uint64_t seed)
{
  check_radius(radius);
  const Context ctx(radius);
  int seen = 0;
  for (CouplerId s : coupler_order(ctx, seed))
    for (CouplerId c = 0; c < ctx.couplers(); ++c)
    {
      if (ctx.exact.at(s, c) != kMziDistance)
        continue;
      // Splitter outputs on side `so`, combiner inputs on side `co`; light
      // enters the splitter and leaves the combiner on the other sides.
      for (int so = 0; so < 2; ++so)
        for (int co = 0; co < 2; ++co)
          for (int swap = 0; swap < 2; ++swap)
          {
            const int sp = 2 * so;
            const int cp = 2 * co;
            const int entry = 2 * (1 - so);
            const int exit = 2 * (1 - co);
            const Pin a1{s, sp, PortDir::Out};
            const Pin a2{s, sp + 1, PortDir::Out};
            const Pin b1{c, cp + swap, PortDir::In};
            const Pin b2{c, cp + 1 - swap, PortDir::In};
            if (ctx.distance(ctx.rrg.resolve(a1), ctx.rrg.resolve(b1)) > length ||
                ctx.distance(ctx.rrg.resolve(a2), ctx.rrg.resolve(b2)) > length)
              continue;
            const Netlist arms{.radius = radius,
                               .nets = {Net{.id = 1, .name = "arm1", .source = a1, .sinks = {{b1, length}}},
                                        Net{.id = 2, .name = "arm2", .source = a2, .sinks = {{b2, length}}}}};
            if (!routes(ctx, arms))
              continue;
            const int in_port = ctx.linked(s, entry) ? entry : entry + 1;
            const int out_port = ctx.linked(c, exit) ? exit : exit + 1;
            if (!ctx.linked(s, in_port) || !ctx.linked(c, out_port))
              continue;
            auto full = with_io(ctx, arms, Pin{s, in_port, PortDir::In}, Pin{c, out_port, PortDir::Out});
            if (!full || seen++ < variant)
              continue;
            return Benchmark{.name = "mzi" + suffix(radius, variant) + "_L" + std::to_string(length),
                             .spec = {.family = Family::MZI,
                                      .radius = radius,
                                      .seed = seed,
                                      .variant = variant,
                                      .lengths = {length},
                                      .distance = kMziDistance},
                             .netlist = std::move(*full)};
          }
    }
  throw BenchgenError("no certified MZI placement " + std::to_string(variant) + " with arm length " +
                      std::to_string(length) + " on a radius " + std::to_string(radius) + " mesh");
}

Benchmark gen_mzi(int radius, Length length, int variant) { return gen_mzi(radius, length, variant, 0); }

Length minimal_ring_length(int radius)
{
  check_radius(radius);
  const Context ctx(radius);
  Length best = kUnreachable;
  for (CouplerId c = 0; c < ctx.couplers(); ++c)
    for (int pb = 2; pb < 4; ++pb)
      for (int pa = 0; pa < 2; ++pa)
        best = std::min(best, ctx.distance(out(c, pb), in(c, pa)));
  return best;
}

Benchmark gen_orr(int radius, Length length, int variant, std::uint64_t seed)
{
  check_radius(radius);
  const Context ctx(radius);
  int seen = 0;
  Length shortest = kUnreachable;
  for (CouplerId c : coupler_order(ctx, seed))
    for (int pb = 2; pb < 4; ++pb)
      for (int pa = 0; pa < 2; ++pa)
      {
        if (!ctx.linked(c, pb) || !ctx.linked(c, pa))
          continue;
        const Length d = ctx.distance(out(c, pb), in(c, pa));
        shortest = std::min(shortest, d);
        if (d > length)
          continue;
        const Pin src{c, pb, PortDir::Out};
        const Pin dst{c, pa, PortDir::In};
        Netlist nl{.radius = radius, .nets = {Net{.id = 1, .name = "ring", .source = src, .sinks = {{dst, length}}}}};
        if (!routes(ctx, nl))
          continue;
        if (seen++ < variant)
          continue;
        return Benchmark{.name = "orr" + suffix(radius, variant) + "_L" + std::to_string(length),
                         .spec = {.family = Family::ORR, .radius = radius, .seed = seed, .variant = variant, .lengths = {length}},
                         .netlist = std::move(nl)};
      }
  if (length < shortest)
    throw BenchgenError("ring length " + std::to_string(length) + " is below the minimal ring length " +
                        std::to_string(shortest));
  throw BenchgenError("no certified ring placement " + std::to_string(variant) + " of length " + std::to_string(length) +
                      " on a radius " + std::to_string(radius) + " mesh");
}

Benchmark gen_orr(int radius, Length length, int variant) { return gen_orr(radius, length, variant, 0); }

namespace {

Benchmark ottd_like(Family family, int radius, const std::vector<Length>& lengths, int variant, std::uint64_t seed)
{
  check_radius(radius);
  if (lengths.empty())
    throw BenchgenError("at least one length is required");
  const Context ctx(radius);
  int seen = 0;
  bool any_pair = false;
  for (CouplerId a : coupler_order(ctx, seed))
    for (CouplerId b = 0; b < ctx.couplers(); ++b)
    {
      if (ctx.exact.at(a, b) != kOttdDistance)
        continue;
      any_pair = true;
      for (int p = 0; p < kPortsPerCoupler; ++p)
        for (int q = 0; q < kPortsPerCoupler; ++q)
        {
          if (ctx.distance(in(a, p), out(b, q)) != kOttdDistance)
            continue;
          const Pin src{a, p, PortDir::In};
          const Pin dst{b, q, PortDir::Out};
          Netlist nl{.radius = radius, .nets = {}, .independent = true};
          NetId id = 1;
          for (Length l : lengths)
            nl.nets.push_back(Net{.id = id++, .name = "tap_L" + std::to_string(l), .source = src, .sinks = {{dst, l}}});
          if (!routes(ctx, nl))
            continue;
          if (seen++ < variant)
            continue;
          std::string name = to_string(family) + suffix(radius, variant);
          if (lengths.size() == 1)
            name += "_L" + std::to_string(lengths.front());
          return Benchmark{.name = name,
                           .spec = {.family = family,
                                    .radius = radius,
                                    .seed = seed,
                                    .variant = variant,
                                    .lengths = lengths,
                                    .distance = kOttdDistance},
                           .netlist = std::move(nl)};
        }
    }
  if (!any_pair)
    throw BenchgenError("a radius " + std::to_string(radius) + " mesh has no couplers " +
                        std::to_string(kOttdDistance) + " segments apart");
  throw BenchgenError("no certified delay-line placement " + std::to_string(variant) + " on a radius " +
                      std::to_string(radius) + " mesh");
}

}  // namespace

Benchmark gen_ottd(int radius, const std::vector<Length>& lengths, int variant)
{
  return ottd_like(Family::OTTD, radius, lengths, variant, 0);
}

Benchmark gen_sweep(int radius, const std::vector<Length>& lengths, int placements, std::uint64_t seed)
{
  check_radius(radius);
  if (lengths.empty())
    throw BenchgenError("at least one length is required");
  if (placements < 1)
    throw BenchgenError("sweep needs at least one placement");

  // One placement per source coupler, so the pairs spread over the mesh.
  const Context ctx(radius);
  Netlist nl{.radius = radius, .nets = {}, .independent = true};
  NetId id = 1;
  int found = 0;
  for (CouplerId a : coupler_order(ctx, seed))
  {
    if (found == placements)
      break;
    bool placed = false;
    for (CouplerId b = 0; b < ctx.couplers() && !placed; ++b)
    {
      if (ctx.exact.at(a, b) != kOttdDistance)
        continue;
      for (int p = 0; p < kPortsPerCoupler && !placed; ++p)
        for (int q = 0; q < kPortsPerCoupler && !placed; ++q)
        {
          if (ctx.distance(in(a, p), out(b, q)) != kOttdDistance)
            continue;
          Netlist one{.radius = radius, .nets = {}, .independent = true};
          for (Length l : lengths)
            one.nets.push_back(Net{.id = id + static_cast<NetId>(one.nets.size()),
                                   .name = "p" + std::to_string(found) + "_L" + std::to_string(l),
                                   .source = {a, p, PortDir::In},
                                   .sinks = {{{b, q, PortDir::Out}, l}}});
          if (!routes(ctx, one))
            continue;
          id += static_cast<NetId>(one.nets.size());
          nl.nets.insert(nl.nets.end(), one.nets.begin(), one.nets.end());
          placed = true;
        }
    }
    found += placed ? 1 : 0;
  }
  if (found < placements)
    throw BenchgenError("only " + std::to_string(found) + " certified delay-line placements on a radius " +
                        std::to_string(radius) + " mesh");
  return Benchmark{.name = "sweep_r" + std::to_string(radius) + "_s" + std::to_string(seed) + "_L" +
                           std::to_string(lengths.front()) + "-" + std::to_string(lengths.back()),
                   .spec = {.family = Family::Sweep,
                            .radius = radius,
                            .seed = seed,
                            .lengths = lengths,
                            .distance = kOttdDistance,
                            .placements = placements},
                   .netlist = std::move(nl)};
}

std::vector<Benchmark> gen_multicast(int radius, int sink_count, int instances, std::uint64_t seed)
{
  check_radius(radius);
  if (sink_count < 1 || instances < 0)
    throw BenchgenError("multicast needs at least one sink");
  const Context ctx(radius);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<CouplerId> pick_coupler(0, ctx.couplers() - 1);
  std::uniform_int_distribution<int> pick_port(0, kPortsPerCoupler - 1);
  constexpr Length kNear = 3;
  constexpr Length kFar = 8;
  constexpr int kMaxDraws = 2000;

  std::vector<Benchmark> out_list;
  int draws = 0;
  while (static_cast<int>(out_list.size()) < instances)
  {
    if (++draws > kMaxDraws * std::max(1, instances))
      throw BenchgenError("could not draw certified multicast nets on a radius " + std::to_string(radius) + " mesh");
    const Pin src{pick_coupler(rng), pick_port(rng), PortDir::In};
    const NodeId s = ctx.rrg.resolve(src);

    std::vector<std::pair<Pin, Length>> candidates;
    for (CouplerId c = 0; c < ctx.couplers(); ++c)
      if (c != src.coupler)
        for (int q = 0; q < kPortsPerCoupler; ++q)
        {
          const Length d = ctx.distance(s, out(c, q));
          if (d >= kNear && d <= kFar)
            candidates.push_back({Pin{c, q, PortDir::Out}, d});
        }
    std::shuffle(candidates.begin(), candidates.end(), rng);

    Net net{.id = 1, .name = "multicast", .source = src, .sinks = {}};
    std::set<CouplerId> couplers;
    for (const auto& [pin, d] : candidates)
    {
      if (static_cast<int>(net.sinks.size()) == sink_count)
        break;
      if (couplers.insert(pin.coupler).second)
        net.sinks.push_back({pin, d});
    }
    // Distinct even offsets, drawn from one more slot than there are sinks.
    std::vector<Length> offsets(static_cast<std::size_t>(sink_count) + 1);
    std::iota(offsets.begin(), offsets.end(), Length{0});
    std::shuffle(offsets.begin(), offsets.end(), rng);
    std::set<Length> lengths;
    for (std::size_t i = 0; i < net.sinks.size(); ++i)
    {
      net.sinks[i].length += 2 * offsets[i];
      lengths.insert(net.sinks[i].length);
    }
    if (lengths.size() != net.sinks.size())
      continue;
    if (static_cast<int>(net.sinks.size()) < sink_count)
      continue;
    Netlist nl{.radius = radius, .nets = {net}};
    if (!routes(ctx, nl))
      continue;
    const int index = static_cast<int>(out_list.size());
    out_list.push_back(Benchmark{.name = "multicast_r" + std::to_string(radius) + "_s" + std::to_string(seed) + "_i" +
                                         std::to_string(index),
                                 .spec = {.family = Family::Multicast,
                                          .radius = radius,
                                          .seed = seed,
                                          .variant = index,
                                          .lengths = std::vector<Length>(lengths.begin(), lengths.end()),
                                          .sink_count = sink_count},
                                 .netlist = std::move(nl)});
  }
  return out_list;
}

std::vector<Benchmark> gen_suite(Family family, int count, std::uint64_t seed)
{
  // Four lengths per placement, placements taken in seeded order.
  std::vector<Benchmark> out_list;
  for (int i = 0; i < count; ++i)
  {
    const int variant = i / 4;
    const Length step = 2 * static_cast<Length>(i % 4);
    switch (family)
    {
      case Family::MZI:
        out_list.push_back(gen_mzi(kDefaultMziRadius, 8 + step, variant, seed));
        break;
      case Family::ORR:
      {
        // Closed rings take 6, 10, 12, ... segments; 8 is never feasible.
        constexpr Length kRing[] = {6, 10, 12, 14};
        out_list.push_back(gen_orr(kDefaultOrrRadius, kRing[i % 4], variant, seed));
        break;
      }
      case Family::OTTD:
        out_list.push_back(ottd_like(Family::OTTD, kDefaultOttdRadius, {10 + step}, variant, seed));
        break;
      default:
        throw BenchgenError("suites exist for mzi, orr and ottd only");
    }
  }
  return out_list;
}

std::vector<Length> parse_lengths(const std::string& text)
{
  std::vector<Length> out_list;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try
    {
      v = std::stoi(s, &used);
    }
    catch (const std::exception&)
    {
      throw BenchgenError("invalid length '" + s + "'");
    }
    if (used != s.size())
      throw BenchgenError("invalid length '" + s + "'");
    return static_cast<Length>(v);
  };

  if (text.find(':') != std::string::npos)
  {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');)
      parts.push_back(p);
    if (parts.size() != 3)
      throw BenchgenError("length range must be first:last:step");
    const Length first = number(parts[0]);
    const Length last = number(parts[1]);
    const Length step = number(parts[2]);
    if (step <= 0 || last < first)
      throw BenchgenError("length range needs first <= last and a positive step");
    for (Length l = first; l <= last; l += step)
      out_list.push_back(l);
    return out_list;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');)
    out_list.push_back(number(p));
  if (out_list.empty())
    throw BenchgenError("no lengths given");
  return out_list;
}

NetlistResult certify(const Benchmark& bench)
{
  auto rrg = build_rrg(std::make_shared<const HexMesh>(build_mesh(bench.spec.radius)));
  return route_netlist(rrg, bench.netlist, Policy::Auto);
}

}  // namespace hexroute
