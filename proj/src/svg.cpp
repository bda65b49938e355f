#include <algorithm>
#include <sstream>

#include "levelplan/drawing.hpp"

namespace levelplan::drawing {

std::string decimal6(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(r) * 1000000;
  cpp_int den = denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;
  cpp_int scaled = (2 * num + den) / (2 * den);  // round half away from zero
  cpp_int whole = scaled / 1000000;
  cpp_int frac = scaled % 1000000;
  std::string f = frac.str();
  f.insert(0, 6 - f.size(), '0');
  std::string out = whole.str() + "." + f;
  if (negative && scaled != 0) out.insert(0, "-");
  return out;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1"};

}  // namespace

std::string emit_svg(const LevelDrawing& d, const SvgOptions& options) {
  Rational max_x = 1;
  for (const auto& [id, p] : d.coords) max_x = std::max(max_x, p.x);
  for (const auto& [id, poly] : d.regions) {
    for (const auto& p : poly) max_x = std::max(max_x, p.x);
  }
  const int levels = std::max(d.levels, 1);
  const Rational scale = options.scale;
  const Rational margin = options.margin;
  auto sx = [&](const Rational& x) { return decimal6(margin + x * scale); };
  auto sy = [&](const Rational& y) { return decimal6(margin + (Rational(levels - 1) - y) * scale); };
  const Rational width = 2 * margin + (max_x + 1) * scale;
  const Rational height = 2 * margin + Rational(levels - 1) * scale;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << decimal6(width) << "\" height=\""
      << decimal6(height) << "\">\n";
  out << "<g id=\"levels\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (int l = 0; l < d.levels; ++l) {
    out << "<line id=\"level-" << l << "\" x1=\"" << decimal6(margin / 2) << "\" y1=\"" << sy(l) << "\" x2=\""
        << decimal6(width - margin / 2) << "\" y2=\"" << sy(l) << "\"/>\n";
  }
  out << "</g>\n";

  // Outer clusters first so that nested ones paint on top.
  std::vector<std::pair<int, std::string>> order;
  for (const auto& [id, poly] : d.regions) {
    auto it = d.region_depth.find(id);
    order.push_back({it == d.region_depth.end() ? 0 : it->second, id});
  }
  std::sort(order.begin(), order.end());
  out << "<g id=\"clusters\">\n";
  for (const auto& [depth, id] : order) {
    out << "<polygon id=\"cluster-" << escape(id) << "\" fill=\"" << kPalette[depth % 7]
        << "\" fill-opacity=\"0.15\" stroke=\"" << kPalette[depth % 7] << "\" points=\"";
    const auto& poly = d.regions.at(id);
    for (std::size_t i = 0; i < poly.size(); ++i) out << (i ? " " : "") << sx(poly[i].x) << "," << sy(poly[i].y);
    out << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"edges\" stroke=\"#333333\" stroke-width=\"1.5\">\n";
  std::vector<Edge> edges;
  for (const auto& e : d.edges) edges.push_back(canonical(e));
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    auto a = d.coords.find(e.u), b = d.coords.find(e.v);
    if (a == d.coords.end() || b == d.coords.end()) continue;
    out << "<line x1=\"" << sx(a->second.x) << "\" y1=\"" << sy(a->second.y) << "\" x2=\"" << sx(b->second.x)
        << "\" y2=\"" << sy(b->second.y) << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"vertices\">\n";
  for (const auto& [id, p] : d.coords) {
    out << "<circle id=\"v-" << escape(id) << "\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"4\" fill=\"#000000\"/>\n";
    if (options.labels)
      out << "<text x=\"" << sx(p.x) << "\" y=\"" << sy(p.y) << "\" dx=\"6\" dy=\"-6\" font-size=\"10\">"
          << escape(id) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace levelplan::drawing
