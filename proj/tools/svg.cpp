#include "svg.hpp"

#include <cstdio>

namespace lamespiral {
namespace svg {

namespace {
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return std::string(buf);
}
}  // namespace

Writer::Writer(std::ostream& os, int pixels) : os_(os) {
    os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << pixels
        << "\" height=\"" << pixels << "\" viewBox=\"-1.5 -1.5 3 3\">\n"
        << "<rect x=\"-1.5\" y=\"-1.5\" width=\"3\" height=\"3\" fill=\"white\"/>\n";
}

Writer::~Writer() { os_ << "</svg>\n"; }

void Writer::emit_points(const PointList& pts, char lead) {
    bool first = true;
    for (const auto& [x, y] : pts) {
        os_ << (first ? lead : 'L') << num(x) << ' ' << num(-y) << ' ';
        first = false;
    }
}

void Writer::polyline(const PointList& pts, const std::string& stroke, double width,
                      const std::string& id) {
    if (pts.empty()) return;
    os_ << "<path ";
    if (!id.empty()) os_ << "id=\"" << id << "\" ";
    os_ << "fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width)
        << "\" d=\"";
    emit_points(pts, 'M');
    os_ << "\"/>\n";
}

void Writer::filled_path(const PointList& pts, const std::string& fill, double opacity,
                         const std::string& id) {
    if (pts.empty()) return;
    os_ << "<path ";
    if (!id.empty()) os_ << "id=\"" << id << "\" ";
    os_ << "stroke=\"none\" fill=\"" << fill << "\" fill-opacity=\"" << num(opacity)
        << "\" d=\"";
    emit_points(pts, 'M');
    os_ << "Z\"/>\n";
}

void Writer::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                  double width) {
    os_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(-y1) << "\" x2=\"" << num(x2)
        << "\" y2=\"" << num(-y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
        << num(width) << "\"/>\n";
}

void Writer::dot(double x, double y, double radius, const std::string& fill) {
    os_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(-y) << "\" r=\"" << num(radius)
        << "\" fill=\"" << fill << "\"/>\n";
}

void Writer::label(double x, double y, const std::string& text) {
    os_ << "<text x=\"" << num(x) << "\" y=\"" << num(-y)
        << "\" font-size=\"0.09\" font-family=\"sans-serif\">" << text << "</text>\n";
}

void Writer::axes() {
    line(-1.45, 0.0, 1.45, 0.0, "#cccccc", 0.006);
    line(0.0, -1.45, 0.0, 1.45, "#cccccc", 0.006);
}

}  // namespace svg
}  // namespace lamespiral
