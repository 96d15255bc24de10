#include "fracspace/svg.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace fracspace {

namespace {

struct Canvas {
  std::ofstream out;
  double ox, oy, scale, height;

  Canvas(const std::string& path, Vec2 lo, Vec2 hi, double px = 900.0)
      : out(path), ox(lo.x), oy(lo.y), scale(px / std::max(hi.x - lo.x, hi.y - lo.y)),
        height((hi.y - lo.y) * scale) {
    if (!out) throw std::runtime_error("cannot write svg file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (hi.x - lo.x) * scale
        << "\" height=\"" << height << "\">\n";
  }
  double X(double x) const { return (x - ox) * scale; }
  double Y(double y) const { return height - (y - oy) * scale; }
  void rect(Vec2 lo, double side, const std::string& fill, const std::string& stroke) {
    out << "<rect x=\"" << X(lo.x) << "\" y=\"" << Y(lo.y + side) << "\" width=\"" << side * scale
        << "\" height=\"" << side * scale << "\" fill=\"" << fill << "\" stroke=\"" << stroke
        << "\" stroke-width=\"0.5\"/>\n";
  }
  void polyline(const std::vector<Vec2>& pts, const std::string& stroke, bool close) {
    out << "<path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out << (i == 0 ? "M" : "L") << X(pts[i].x) << " " << Y(pts[i].y) << " ";
    if (close) out << "Z";
    out << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
  }
  void line(Vec2 a, Vec2 b, const std::string& stroke) {
    out << "<line x1=\"" << X(a.x) << "\" y1=\"" << Y(a.y) << "\" x2=\"" << X(b.x) << "\" y2=\""
        << Y(b.y) << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }
  void close() { out << "</svg>\n"; }
};

std::string level_color(int level, bool frontier) {
  if (frontier) return "#f4c7c3";
  static const char* palette[] = {"#dbe9f6", "#c3dbee", "#a8cce4", "#8db9d8",
                                  "#72a6cc", "#5892bf", "#417eb1", "#2d6aa1"};
  return palette[level % 8];
}

void draw_cover(Canvas& canvas, const WhitneyCover& cover) {
  for (int i = 0; i < cover.n_cells(); ++i)
    canvas.rect(cover.lower(i), cover.side_length(i),
                level_color(cover.cubes()[i].level, cover.is_frontier(i)), "#777777");
  std::vector<Vec2> poly = cover.domain().vertices();
  canvas.polyline(poly, "#000000", true);
}

Vec2 cover_view_lo(const WhitneyCover& cover) {
  Vec2 lo = cover.lower(0);
  Vec2 hi = lo;
  for (int i = 0; i < cover.n_cells(); ++i) {
    const Vec2 l = cover.lower(i);
    const double h = cover.side_length(i);
    lo.x = std::min(lo.x, l.x);
    lo.y = std::min(lo.y, l.y);
    hi.x = std::max(hi.x, l.x + h);
    hi.y = std::max(hi.y, l.y + h);
  }
  return lo;
}

Vec2 cover_view_hi(const WhitneyCover& cover) {
  Vec2 lo = cover.lower(0);
  Vec2 hi = lo;
  for (int i = 0; i < cover.n_cells(); ++i) {
    const Vec2 l = cover.lower(i);
    const double h = cover.side_length(i);
    lo.x = std::min(lo.x, l.x);
    lo.y = std::min(lo.y, l.y);
    hi.x = std::max(hi.x, l.x + h);
    hi.y = std::max(hi.y, l.y + h);
  }
  return hi;
}

}  // namespace

void svg_cover(const WhitneyCover& cover, const std::string& path) {
  Canvas canvas(path, cover_view_lo(cover), cover_view_hi(cover));
  draw_cover(canvas, cover);
  canvas.close();
}

void svg_chain(const WhitneyCover& cover, const Chain& chain, const std::string& path) {
  Canvas canvas(path, cover_view_lo(cover), cover_view_hi(cover));
  draw_cover(canvas, cover);
  for (std::size_t k = 0; k < chain.cubes.size(); ++k) {
    const int i = chain.cubes[k];
    std::string fill = "#ffd24d";
    if (k == 0 || k + 1 == chain.cubes.size()) fill = "#e04b3a";
    if (static_cast<int>(k) == chain.central_index) fill = "#3a6be0";
    canvas.rect(cover.lower(i), cover.side_length(i), fill, "#333333");
  }
  std::vector<Vec2> centers;
  for (int i : chain.cubes) centers.push_back(cover.center(i));
  canvas.polyline(centers, "#222222", false);
  canvas.close();
}

void svg_pairing(const ExteriorStructure& s, const std::string& path) {
  const Mesh& box = *s.box_mesh;
  Vec2 lo = box.box_lower();
  Vec2 hi = {lo.x + box.box_side(), lo.y + box.box_side()};
  Canvas canvas(path, lo, hi);
  for (int c = 0; c < box.n_cells(); ++c)
    canvas.rect(box.lower(c), box.side(c), level_color(box.cell(c).level, box.frontier(c)),
                "#999999");
  std::vector<Vec2> poly = box.domain().vertices();
  canvas.polyline(poly, "#000000", true);

  const Mesh& in = *s.interior_mesh;
  for (int e = 0; e < static_cast<int>(s.exterior_cells.size()); ++e) {
    if (!s.in_w3[e]) continue;
    const DyadicCube& c = s.exterior_cells[e];
    const double h = box.root_scale() * std::exp2(static_cast<double>(-c.level));
    const Vec2 from = {box.origin().x + h * (c.ix + 0.5), box.origin().y + h * (c.iy + 0.5)};
    canvas.line(from, in.center(s.partner[e]), s.in_w4[e] ? "#207520" : "#20a020");
  }
  canvas.close();
}

}  // namespace fracspace
