#pragma once

#include <string>
#include <utility>
#include <vector>

namespace openslice::svg {

/// Minimal hand-rolled SVG writer: fixed-format numbers, no external
/// plotting dependency, deterministic output for deterministic input.
class Document {
public:
    Document(double width, double height);

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width = 1.0, const std::string& dash = "");
    void polyline(const std::vector<std::pair<double, double>>& points,
                  const std::string& stroke, double stroke_width = 1.0);
    /// The optional title becomes a <title> child (hover tooltip); callers
    /// put their data values there so figures stay greppable views.
    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& title = "");
    void text(double x, double y, const std::string& content, double font_size = 12.0,
              const std::string& anchor = "start");

    std::string str() const;

private:
    std::string body_;
    double width_;
    double height_;
};

} // namespace openslice::svg
