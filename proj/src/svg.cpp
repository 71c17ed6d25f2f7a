#include "nearcrit/svg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nearcrit {

namespace {

constexpr double kWidth = 1000.0;
constexpr double kMargin = 0.02;

struct Canvas {
  double x(double ux) const { return (ux + 0.5 + kMargin) * kWidth; }
  double y(double uy) const { return (std::numbers::sqrt3 / 2.0 + kMargin - uy) * kWidth; }
};

void polyline(std::ostringstream& out, const TriangleDomain& domain, const InterfacePath& path,
              const char* color) {
  if (path.steps.empty()) return;
  const Canvas c;
  out << "<polyline class=\"interface\" fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"2\" points=\"";
  auto put = [&](Point p) {
    const Point u = domain.rescale(p);
    out << c.x(u.x) << ',' << c.y(u.y) << ' ';
  };
  put(step_tail(domain, path.steps.front()));
  for (const Step& s : path.steps) put(step_head(domain, s));
  out << "\"/>\n";
}

}  // namespace

std::string render_svg(const TriangleDomain& domain, const SvgScene& scene) {
  if (domain.n() > kSvgMaxN)
    throw std::invalid_argument("rendering is limited to N <= " + std::to_string(kSvgMaxN));
  if (!scene.black || scene.black->size() != domain.size())
    throw std::invalid_argument("render needs one colour per site");
  const Canvas c;
  const double height = (std::numbers::sqrt3 / 2.0 + 2 * kMargin) * kWidth;
  const double width = (1.0 + 2 * kMargin) * kWidth;
  const double radius = 1.0 / std::numbers::sqrt3 / domain.n();

  std::ostringstream out;
  out.precision(6);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#dddddd\"/>\n<g stroke=\"#888888\" "
         "stroke-width=\"0.3\">\n";
  for (SiteIndex i = 0; i < domain.size(); ++i) {
    const Point p = domain.rescaled_center(i);
    const bool b = (*scene.black)[i] != 0;
    out << "<polygon class=\"hex\" fill=\"" << (b ? "#000000" : "#ffffff") << "\" points=\"";
    for (int k = 0; k < 6; ++k) {
      const double a = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
      out << c.x(p.x + radius * std::cos(a)) << ',' << c.y(p.y + radius * std::sin(a))
          << (k < 5 ? " " : "");
    }
    out << "\"/>\n";
  }
  out << "</g>\n";
  if (scene.second_path) polyline(out, domain, *scene.second_path, "#1f5fd0");
  if (scene.path) polyline(out, domain, *scene.path, "#d01f1f");

  for (const Region& r : scene.regions) {
    validate_region(r);
    out << "<g class=\"region\" fill=\"none\" stroke=\"#10a010\" stroke-width=\"2\">";
    if (const auto* d = std::get_if<Disc>(&r)) {
      out << "<circle cx=\"" << c.x(d->center.x) << "\" cy=\"" << c.y(d->center.y) << "\" r=\""
          << d->radius * kWidth << "\"/>";
    } else if (const auto* a = std::get_if<Annulus>(&r)) {
      for (double rr : {a->r_inner, a->r_outer})
        out << "<circle cx=\"" << c.x(a->center.x) << "\" cy=\"" << c.y(a->center.y) << "\" r=\""
            << rr * kWidth << "\"/>";
    } else if (const auto* t = std::get_if<SubTriangle>(&r)) {
      const Point p = t->corner;
      out << "<polygon points=\"" << c.x(p.x) << ',' << c.y(p.y) << ' ' << c.x(p.x + t->side) << ','
          << c.y(p.y) << ' ' << c.x(p.x + t->side / 2) << ','
          << c.y(p.y + t->side * std::numbers::sqrt3 / 2) << "\"/>";
    } else if (const auto* q = std::get_if<Rect>(&r)) {
      out << "<rect x=\"" << c.x(q->x_lo) << "\" y=\"" << c.y(q->y_hi) << "\" width=\""
          << (q->x_hi - q->x_lo) * kWidth << "\" height=\"" << (q->y_hi - q->y_lo) * kWidth
          << "\"/>";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace nearcrit
