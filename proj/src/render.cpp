#include "hexroute/render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace hexroute {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

struct Frame
{
  double scale = 1.0;
  double min_x = 0.0;
  double min_y = 0.0;

  double x(double v) const { return (v - min_x) * scale; }
  double y(double v) const { return (v - min_y) * scale; }
};

std::string fmt(double v)
{
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

std::string escape(const std::string& text)
{
  std::string out;
  for (char c : text)
    switch (c)
    {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  return out;
}

std::array<Point2, 6> hexagon(const Point2& c)
{
  std::array<Point2, 6> corners;
  for (int k = 0; k < 6; ++k)
  {
    const double a = std::numbers::pi / 180.0 * (60.0 * k - 30.0);
    corners[static_cast<std::size_t>(k)] = {c.x + std::cos(a), c.y + std::sin(a)};
  }
  return corners;
}

Point2 node_position(const RoutingResourceGraph& rrg, NodeId node)
{
  return rrg.mesh().port_position(rrg.port_of(node));
}

}  // namespace

std::string render_svg(const RoutingResourceGraph& rrg,
                       std::span<const DrawnPath> paths,
                       std::span<const TraceEvent> trace,
                       const RenderOptions& options)
{
  const auto& mesh = rrg.mesh();
  Frame frame{.scale = options.scale};
  double max_x = 0.0;
  double max_y = 0.0;
  bool first = true;
  for (const auto& cell : mesh.cells())
    for (const auto& p : hexagon(mesh.cell_center(cell)))
    {
      frame.min_x = first ? p.x : std::min(frame.min_x, p.x);
      frame.min_y = first ? p.y : std::min(frame.min_y, p.y);
      max_x = first ? p.x : std::max(max_x, p.x);
      max_y = first ? p.y : std::max(max_y, p.y);
      first = false;
    }
  const double margin = 0.3;
  frame.min_x -= margin;
  frame.min_y -= margin;
  const double legend = 22.0 * static_cast<double>(paths.size());
  const double width = (max_x - frame.min_x + margin) * frame.scale;
  const double height = (max_y - frame.min_y + margin) * frame.scale + legend;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg << "<g id=\"cells\" fill=\"#f4f4f4\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (const auto& cell : mesh.cells())
  {
    svg << "<polygon points=\"";
    for (const auto& p : hexagon(mesh.cell_center(cell)))
      svg << fmt(frame.x(p.x)) << ',' << fmt(frame.y(p.y)) << ' ';
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"segments\" stroke=\"#999999\" stroke-width=\"1.5\">\n";
  for (const auto& s : mesh.segments())
  {
    const auto a = mesh.port_position(s.a);
    const auto b = mesh.port_position(s.b);
    svg << "<line x1=\"" << fmt(frame.x(a.x)) << "\" y1=\"" << fmt(frame.y(a.y)) << "\" x2=\"" << fmt(frame.x(b.x))
        << "\" y2=\"" << fmt(frame.y(b.y)) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"couplers\">\n";
  for (const auto& c : mesh.couplers())
  {
    const auto p = mesh.coupler_center(c.id);
    const auto state = rrg.coupler_state(c.id);
    svg << "<circle cx=\"" << fmt(frame.x(p.x)) << "\" cy=\"" << fmt(frame.y(p.y)) << "\" r=\""
        << fmt(0.12 * frame.scale) << "\" fill=\"" << (state == CouplerState::Available ? "#ffffff" : "#444444")
        << "\" stroke=\"#333333\" stroke-width=\"1\"><title>coupler " << c.id << " (" << to_string(state)
        << ")</title></circle>\n";
    if (options.coupler_ids)
      svg << "<text x=\"" << fmt(frame.x(p.x)) << "\" y=\"" << fmt(frame.y(p.y) - 0.16 * frame.scale)
          << "\" font-size=\"9\" text-anchor=\"middle\" fill=\"#555555\">" << c.id << "</text>\n";
  }
  svg << "</g>\n";

  if (!trace.empty())
  {
    std::map<NodeId, Length> depth;
    Length deepest = 1;
    for (const auto& e : trace)
      if (e.kind == TraceEvent::Kind::Push && e.node < rrg.node_count())
      {
        auto [it, inserted] = depth.emplace(e.node, e.g);
        if (!inserted)
          it->second = std::max(it->second, e.g);
        deepest = std::max(deepest, e.g);
      }
    svg << "<g id=\"search\">\n";
    for (const auto& [node, g] : depth)
    {
      const auto p = node_position(rrg, node);
      const double shade = 0.15 + 0.85 * static_cast<double>(g) / static_cast<double>(deepest);
      svg << "<circle cx=\"" << fmt(frame.x(p.x)) << "\" cy=\"" << fmt(frame.y(p.y)) << "\" r=\""
          << fmt(0.07 * frame.scale) << "\" fill=\"#000000\" fill-opacity=\"" << fmt(shade) << "\"><title>node "
          << node << " g=" << g << "</title></circle>\n";
    }
    svg << "</g>\n";
  }

  svg << "<g id=\"paths\" fill=\"none\" stroke-width=\"3\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
  for (std::size_t i = 0; i < paths.size(); ++i)
  {
    const auto& path = paths[i];
    if (path.arcs.empty())
      continue;
    const char* colour = kPalette[i % std::size(kPalette)];
    svg << "<polyline stroke=\"" << colour << "\" stroke-opacity=\"0.85\" points=\"";
    const auto start = node_position(rrg, rrg.arc(path.arcs.front()).tail);
    svg << fmt(frame.x(start.x)) << ',' << fmt(frame.y(start.y));
    for (ArcId a : path.arcs)
    {
      const auto p = node_position(rrg, rrg.arc(a).head);
      svg << ' ' << fmt(frame.x(p.x)) << ',' << fmt(frame.y(p.y));
    }
    svg << "\"><title>" << escape(path.label) << "</title></polyline>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
  const double top = height - legend;
  for (std::size_t i = 0; i < paths.size(); ++i)
  {
    const double y = top + 22.0 * static_cast<double>(i) + 15.0;
    svg << "<rect x=\"10\" y=\"" << fmt(y - 10.0) << "\" width=\"14\" height=\"10\" fill=\""
        << kPalette[i % std::size(kPalette)] << "\"/>";
    svg << "<text x=\"30\" y=\"" << fmt(y) << "\">" << escape(paths[i].label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace hexroute
