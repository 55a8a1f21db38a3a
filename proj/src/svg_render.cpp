#include "zetapack/svg_render.hpp"

#include <charconv>

namespace zetapack {

namespace {

void append_number(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

void append_attr(std::string& out, const char* name, double value) {
  out += ' ';
  out += name;
  out += "=\"";
  append_number(out, value);
  out += '"';
}

// SVG y grows downward; flip against the container's top edge.
void append_rect_attrs(std::string& out, const Rect& r, const Rect& container) {
  append_attr(out, "x", r.x0 - container.x0);
  append_attr(out, "y", container.y1() - r.y1());
  append_attr(out, "width", r.dx);
  append_attr(out, "height", r.dy);
}

}  // namespace

std::string render_svg(const PackingReport& report, const SvgOptions& options) {
  const Rect& c = report.container;
  std::string out;
  out.reserve(128 * (report.placements.size() + report.residuals.size()) + 2048);

  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 ";
  append_number(out, c.dx);
  out += ' ';
  append_number(out, c.dy);
  out += "\">\n";
  out += "<defs><pattern id=\"hatch\" width=\"0.02\" height=\"0.02\" "
         "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"0.02\" stroke=\"#999999\" "
         "stroke-width=\"0.004\"/></pattern></defs>\n";

  out += "<rect";
  append_attr(out, "x", 0.0);
  append_attr(out, "y", 0.0);
  append_attr(out, "width", c.dx);
  append_attr(out, "height", c.dy);
  out += " fill=\"none\" stroke=\"#000000\"";
  append_attr(out, "stroke-width", options.stroke_width * 2.0);
  out += "/>\n";

  std::size_t drawn = 0;
  for (const auto& square : report.placements) {
    if (drawn == options.max_squares_drawn) break;
    out += "<rect";
    append_rect_attrs(out, square.rect, c);
    if (options.color_by_depth) {
      out += " fill=\"hsl(";
      append_number(out, static_cast<double>((square.n * 47) % 360));
      out += ",55%,62%)\"";
    } else {
      out += " fill=\"#7a9ec2\"";
    }
    out += " stroke=\"#333333\"";
    append_attr(out, "stroke-width", options.stroke_width);
    out += "/>\n";
    ++drawn;
  }
  if (report.placements.size() > drawn) {
    out += "<!-- ";
    out += std::to_string(report.placements.size() - drawn);
    out += " smaller squares omitted -->\n";
  }

  drawn = 0;
  for (const auto& box : report.residuals) {
    if (drawn == options.max_residuals_drawn) break;
    out += "<rect";
    append_rect_attrs(out, box.rect, c);
    out += " fill=\"url(#hatch)\" stroke=\"#777777\"";
    append_attr(out, "stroke-width", options.stroke_width);
    out += "/>\n";
    ++drawn;
  }
  if (report.residuals.size() > drawn) {
    out += "<!-- ";
    out += std::to_string(report.residuals.size() - drawn);
    out += " residual boxes omitted -->\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace zetapack
