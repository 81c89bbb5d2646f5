#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "starworlds/geom/types.hpp"

namespace starworlds::scenario {

using geom::AABB;
using geom::Ellipse;
using geom::Point2;

// Minimal deterministic SVG writer (y axis flipped to mathematical
// orientation). Elements are emitted in call order.
class SvgWriter {
  public:
    explicit SvgWriter(AABB view, double px_per_unit = 64);

    void polygon(const std::vector<Point2>& pts, const std::string& fill,
                 const std::string& stroke, double opacity = 1.0, double stroke_width = 0.02);
    void ellipse(const Ellipse& e, const std::string& fill, const std::string& stroke,
                 double opacity = 1.0, double stroke_width = 0.02);
    void circle(const Point2& c, double r, const std::string& fill);
    void polyline(const std::vector<Point2>& pts, const std::string& stroke, double width,
                  const std::string& dash = "");
    void star_marker(const Point2& c, double r, const std::string& fill);

    std::string finish() const;

    // Fixed cluster palette.
    static const char* palette(size_t i);

  private:
    AABB view_;
    double scale_;
    std::ostringstream body_;
};

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace starworlds::scenario
