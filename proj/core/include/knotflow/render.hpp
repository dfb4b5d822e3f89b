#pragma once

#include <array>
#include <string>
#include <vector>

#include "knotflow/diagram.hpp"

namespace knotflow {

struct RenderOptions {
  double spacing = 28.0;  // between neighbouring strands and between crossing rows
  double stroke = 2.5;
  bool legend = true;
};

// Braid closure drawing of a diagram that carries a braid word; strands are
// coloured by component. Throws InvalidArgument for diagrams without a braid.
std::string render_braid_svg(const PlanarDiagram& d, const RenderOptions& opt = {});

// Plain drawing of closed plane polylines (for projected space curves).
std::string render_curves_svg(const std::vector<std::vector<std::array<double, 2>>>& curves,
                              const std::vector<std::string>& labels, const RenderOptions& opt = {});

}  // namespace knotflow
