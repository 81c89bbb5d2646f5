#include <cmath>
#include <cstdio>
#include <fstream>

#include "starworlds/errors.hpp"
#include "starworlds/scenario/svg.hpp"

namespace starworlds::scenario {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

SvgWriter::SvgWriter(AABB view, double px_per_unit) : view_(view), scale_(px_per_unit) {}

void SvgWriter::polygon(const std::vector<Point2>& pts, const std::string& fill,
                        const std::string& stroke, double opacity, double stroke_width) {
    body_ << "<polygon points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ << " ";
        body_ << fmt(pts[i].x) << "," << fmt(-pts[i].y);
    }
    body_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << fmt(opacity) << "\" stroke=\""
          << stroke << "\" stroke-width=\"" << fmt(stroke_width) << "\"/>\n";
}

void SvgWriter::ellipse(const Ellipse& e, const std::string& fill, const std::string& stroke,
                        double opacity, double stroke_width) {
    double deg = -e.rotation * 180.0 / M_PI;
    body_ << "<ellipse cx=\"0\" cy=\"0\" rx=\"" << fmt(e.a) << "\" ry=\"" << fmt(e.b)
          << "\" transform=\"translate(" << fmt(e.center.x) << "," << fmt(-e.center.y)
          << ") rotate(" << fmt(deg) << ")\" fill=\"" << fill << "\" fill-opacity=\""
          << fmt(opacity) << "\" stroke=\"" << stroke << "\" stroke-width=\""
          << fmt(stroke_width) << "\"/>\n";
}

void SvgWriter::circle(const Point2& c, double r, const std::string& fill) {
    body_ << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(-c.y) << "\" r=\"" << fmt(r)
          << "\" fill=\"" << fill << "\"/>\n";
}

void SvgWriter::polyline(const std::vector<Point2>& pts, const std::string& stroke, double width,
                         const std::string& dash) {
    body_ << "<polyline points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ << " ";
        body_ << fmt(pts[i].x) << "," << fmt(-pts[i].y);
    }
    body_ << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width) << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << "/>\n";
}

void SvgWriter::star_marker(const Point2& c, double r, const std::string& fill) {
    body_ << "<polygon points=\"";
    for (int i = 0; i < 10; ++i) {
        double a = M_PI / 2 + i * M_PI / 5;
        double rr = (i % 2 == 0) ? r : 0.45 * r;
        if (i) body_ << " ";
        body_ << fmt(c.x + rr * std::cos(a)) << "," << fmt(-(c.y + rr * std::sin(a)));
    }
    body_ << "\" fill=\"" << fill << "\"/>\n";
}

std::string SvgWriter::finish() const {
    double w = view_.hi.x - view_.lo.x;
    double h = view_.hi.y - view_.lo.y;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w * scale_)
       << "\" height=\"" << fmt(h * scale_) << "\" viewBox=\"" << fmt(view_.lo.x) << " "
       << fmt(-view_.hi.y) << " " << fmt(w) << " " << fmt(h) << "\">\n"
       << "<rect x=\"" << fmt(view_.lo.x) << "\" y=\"" << fmt(-view_.hi.y) << "\" width=\""
       << fmt(w) << "\" height=\"" << fmt(h) << "\" fill=\"white\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
}

const char* SvgWriter::palette(size_t i) {
    static const char* colors[] = {"#66bb6a", "#42a5f5", "#ef5350", "#ab47bc", "#ffa726",
                                   "#26c6da", "#d4e157", "#8d6e63", "#ec407a", "#78909c"};
    return colors[i % (sizeof(colors) / sizeof(colors[0]))];
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(path + ": cannot open for writing");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(path + ": cannot finalize write");
}

}  // namespace starworlds::scenario
