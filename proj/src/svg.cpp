#include "mirror/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mirror/format.hpp"

namespace mirror {

namespace {

constexpr double kPixels = 640.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Canvas {
  double half;  // the view is [-half, half]^2 in plane units

  double px(double x) const { return (x + half) / (2 * half) * kPixels; }
  double py(double y) const { return (half - y) / (2 * half) * kPixels; }

  std::string line(double x0, double y0, double x1, double y1, const std::string& style) const {
    return "<line x1=\"" + num(px(x0)) + "\" y1=\"" + num(py(y0)) + "\" x2=\"" + num(px(x1)) +
           "\" y2=\"" + num(py(y1)) + "\" " + style + "/>\n";
  }
};

double far_length(const Canvas& c, LatticeVector d) { return 4 * c.half / std::hypot(d.a, d.b); }

}  // namespace

std::string render_svg(const WallStructure& ws, const SvgAnnotations& notes) {
  double extent = 1.0;
  auto grow = [&](const Point& p) {
    extent = std::max({extent, std::abs(p.x.get_d()), std::abs(p.y.get_d())});
  };
  for (const auto& w : ws.walls) {
    grow(w.support.base);
    if (auto e = w.support.end()) grow(*e);
  }
  if (notes.endpoint) grow(*notes.endpoint);
  const Canvas c{extent * 1.4};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kPixels)
     << "\" height=\"" << num(kPixels) << "\" viewBox=\"0 0 " << num(kPixels) << " "
     << num(kPixels) << "\">\n";
  if (!notes.title.empty()) os << "<title>" << escape(notes.title) << "</title>\n";
  os << "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" << num(kPixels)
     << "\" height=\"" << num(kPixels) << "\"/></clipPath></defs>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << num(kPixels) << "\" height=\"" << num(kPixels)
     << "\" fill=\"white\"/>\n<g clip-path=\"url(#view)\">\n";

  os << "<g id=\"axes\">\n"
     << c.line(-c.half, 0, c.half, 0, "stroke=\"#dddddd\" stroke-width=\"0.5\"")
     << c.line(0, -c.half, 0, c.half, "stroke=\"#dddddd\" stroke-width=\"0.5\"") << "</g>\n";

  os << "<g id=\"fan\">\n";
  for (const auto& f : ws.fan) {
    const double l = far_length(c, f.dir);
    os << c.line(0, 0, f.dir.a * l, f.dir.b * l,
                 "stroke=\"#3060c0\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"");
    const double lx = f.dir.a * c.half * 0.85 / std::max(std::abs(f.dir.a), std::abs(f.dir.b));
    const double ly = f.dir.b * c.half * 0.85 / std::max(std::abs(f.dir.a), std::abs(f.dir.b));
    os << "<text x=\"" << num(c.px(lx)) << "\" y=\"" << num(c.py(ly) - 4)
       << "\" font-size=\"9\" fill=\"#3060c0\">" << escape(to_text(f.kink)) << "</text>\n";
  }
  os << "</g>\n<g id=\"walls\">\n";
  for (const auto& w : ws.walls) {
    const double bx = w.support.base.x.get_d();
    const double by = w.support.base.y.get_d();
    const double l = w.support.length ? w.support.length->get_d() : far_length(c, w.support.dir);
    const double ex = bx + w.support.dir.a * l;
    const double ey = by + w.support.dir.b * l;
    os << c.line(bx, by, ex, ey, "stroke=\"black\" stroke-width=\"1\"");
    if (notes.labels) {
      const double s = w.support.length ? l / 2 : std::min(l, 0.6 * c.half / std::hypot(w.support.dir.a, w.support.dir.b));
      os << "<text x=\"" << num(c.px(bx + w.support.dir.a * s) + 3) << "\" y=\""
         << num(c.py(by + w.support.dir.b * s) - 3) << "\" font-size=\"7\">"
         << escape(to_text(w.func)) << "</text>\n";
    }
  }
  os << "</g>\n";

  if (notes.endpoint) {
    const double x = notes.endpoint->x.get_d();
    const double y = notes.endpoint->y.get_d();
    os << "<g id=\"theta-paths\">\n";
    int label = 1;
    for (const auto& d : notes.theta_paths) {
      const double l = far_length(c, d);
      os << c.line(x + d.a * l, y + d.b * l, x, y, "stroke=\"#d02020\" stroke-width=\"1.4\"");
      const double s = 0.75 * c.half / std::max(std::abs(d.a), std::abs(d.b));
      os << "<text x=\"" << num(c.px(x + d.a * s) + 4) << "\" y=\"" << num(c.py(y + d.b * s))
         << "\" font-size=\"10\" fill=\"#d02020\">" << label++ << "</text>\n";
    }
    os << "</g>\n<circle cx=\"" << num(c.px(x)) << "\" cy=\"" << num(c.py(y))
       << "\" r=\"3\" fill=\"#d02020\"/>\n<text x=\"" << num(c.px(x) + 5) << "\" y=\""
       << num(c.py(y) + 12) << "\" font-size=\"11\" fill=\"#d02020\">P</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace mirror
