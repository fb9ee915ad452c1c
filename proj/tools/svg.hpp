#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lamespiral {
namespace svg {

using PointList = std::vector<std::pair<double, double>>;

/// Minimal hand-emitted SVG 1.1 writer. Fixed viewport [-1.5, 1.5]^2 in curve
/// coordinates; y is flipped on output so the mathematical orientation is up.
class Writer {
public:
    explicit Writer(std::ostream& os, int pixels = 640);
    ~Writer();

    void polyline(const PointList& pts, const std::string& stroke, double width,
                  const std::string& id = "");
    void filled_path(const PointList& pts, const std::string& fill, double opacity,
                     const std::string& id = "");
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width);
    void dot(double x, double y, double radius, const std::string& fill);
    void label(double x, double y, const std::string& text);
    void axes();

private:
    void emit_points(const PointList& pts, char lead);
    std::ostream& os_;
};

}  // namespace svg
}  // namespace lamespiral
