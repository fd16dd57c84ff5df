#pragma once

#include <span>
#include <string>
#include <vector>

#include "hexroute/rrg.hpp"
#include "hexroute/search.hpp"

namespace hexroute {

/// One colour-keyed path with its caption.
struct DrawnPath
{
  std::string label;
  std::vector<ArcId> arcs;
};

struct RenderOptions
{
  /// Pixels per cell radius.
  double scale = 48.0;
  bool coupler_ids = false;
};

/// SVG drawing of the mesh (cells, couplers, segments), the given paths on
/// top and, when `trace` is not empty, every pushed node shaded by the
/// largest g it was pushed with.
std::string render_svg(const RoutingResourceGraph& rrg,
                       std::span<const DrawnPath> paths,
                       std::span<const TraceEvent> trace = {},
                       const RenderOptions& options = {});

}  // namespace hexroute
