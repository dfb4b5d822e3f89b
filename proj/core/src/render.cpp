#include "knotflow/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "knotflow/error.hpp"

namespace knotflow {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string colour(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

void line(std::ostringstream& os, double x0, double y0, double x1, double y1, const std::string& c, double w) {
  os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y1 << "\" stroke=\"" << c
     << "\" stroke-width=\"" << w << "\" stroke-linecap=\"round\"/>\n";
}

}  // namespace

std::string render_braid_svg(const PlanarDiagram& d, const RenderOptions& opt) {
  if (!d.braid) throw Error(ErrorCode::InvalidArgument, "diagram has no braid form to render");
  const auto& b = *d.braid;
  const std::size_t n = b.strands, rows = b.letters.size();
  const double sp = opt.spacing, margin = sp;
  const double top = margin, bottom = top + sp * static_cast<double>(std::max<std::size_t>(rows, 1));
  const double right = margin + sp * static_cast<double>(n - 1);
  auto x_of = [&](std::size_t i) { return margin + sp * static_cast<double>(i); };

  // component of the strand at each starting position, numbered by lowest strand
  const auto perm = b.permutation();
  std::vector<std::size_t> comp(n, n);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    for (std::size_t p = s; comp[p] == n; p = perm[p]) comp[p] = next;
    ++next;
  }

  const double width = right + margin + sp * static_cast<double>(n) + (opt.legend ? 160.0 : 0.0);
  const double height = bottom + margin + sp * static_cast<double>(n) * 0.5 + margin;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::vector<std::size_t> at(n);  // component occupying each position
  for (std::size_t i = 0; i < n; ++i) at[i] = comp[i];
  const double gap = 0.22;
  for (std::size_t r = 0; r < rows; ++r) {
    const int letter = b.letters[r];
    const std::size_t j = static_cast<std::size_t>(std::abs(letter) - 1);
    const double y0 = top + sp * static_cast<double>(r), y1 = y0 + sp;
    for (std::size_t i = 0; i < n; ++i)
      if (i != j && i != j + 1) line(os, x_of(i), y0, x_of(i), y1, colour(at[i]), opt.stroke);
    // positive letters: the strand starting on the left passes over
    const bool left_over = letter > 0;
    const double ax = x_of(j), bx = x_of(j + 1);
    const auto over_c = colour(left_over ? at[j] : at[j + 1]), under_c = colour(left_over ? at[j + 1] : at[j]);
    const double ox0 = left_over ? ax : bx, ox1 = left_over ? bx : ax;
    const double ux0 = left_over ? bx : ax, ux1 = left_over ? ax : bx;
    auto lerp = [](double a, double c, double t) { return a + (c - a) * t; };
    line(os, ux0, y0, lerp(ux0, ux1, 0.5 - gap), lerp(y0, y1, 0.5 - gap), under_c, opt.stroke);
    line(os, lerp(ux0, ux1, 0.5 + gap), lerp(y0, y1, 0.5 + gap), ux1, y1, under_c, opt.stroke);
    line(os, ox0, y0, ox1, y1, over_c, opt.stroke);
    std::swap(at[j], at[j + 1]);
  }
  if (rows == 0)
    for (std::size_t i = 0; i < n; ++i) line(os, x_of(i), top, x_of(i), bottom, colour(at[i]), opt.stroke);

  // closure loops, strand 0 outermost
  for (std::size_t i = 0; i < n; ++i) {
    const double depth = sp * 0.5 * static_cast<double>(n - i);
    const double xr = right + sp * static_cast<double>(n - i);
    os << "<path d=\"M " << x_of(i) << " " << bottom << " L " << x_of(i) << " " << bottom + depth << " L " << xr << " "
       << bottom + depth << " L " << xr << " " << top - depth * 0.5 << " L " << x_of(i) << " " << top - depth * 0.5
       << " L " << x_of(i) << " " << top << "\" fill=\"none\" stroke=\"" << colour(comp[i]) << "\" stroke-width=\""
       << opt.stroke << "\" stroke-linejoin=\"round\"/>\n";
  }
  if (opt.legend) {
    const double lx = right + sp * static_cast<double>(n) + margin;
    for (std::size_t c = 0; c < d.components.size(); ++c) {
      const double ly = top + 18.0 * static_cast<double>(c);
      os << "<text x=\"" << lx << "\" y=\"" << ly << "\" font-family=\"monospace\" font-size=\"12\" fill=\""
         << colour(c) << "\">" << d.components[c].label << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_curves_svg(const std::vector<std::vector<std::array<double, 2>>>& curves,
                              const std::vector<std::string>& labels, const RenderOptions& opt) {
  double x0 = std::numeric_limits<double>::max(), y0 = x0, x1 = -x0, y1 = -x0;
  for (const auto& c : curves)
    for (const auto& p : c) {
      x0 = std::min(x0, p[0]);
      x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]);
      y1 = std::max(y1, p[1]);
    }
  if (x0 > x1) throw Error(ErrorCode::InvalidArgument, "nothing to render");
  const double size = 600.0, pad = 20.0;
  const double scale = (size - 2 * pad) / std::max({x1 - x0, y1 - y0, 1e-12});
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << " " << size << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    os << "<polygon fill=\"none\" stroke=\"" << colour(i) << "\" stroke-width=\"" << opt.stroke * 0.5
       << "\" points=\"";
    for (const auto& p : curves[i])
      os << pad + (p[0] - x0) * scale << "," << size - pad - (p[1] - y0) * scale << " ";
    os << "\"/>\n";
    if (opt.legend && i < labels.size())
      os << "<text x=\"" << pad << "\" y=\"" << pad + 14.0 * static_cast<double>(i + 1)
         << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << colour(i) << "\">" << labels[i] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace knotflow
