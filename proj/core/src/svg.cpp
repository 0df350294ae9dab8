#include "openslice/svg.hpp"

#include "openslice/report.hpp"

namespace openslice::svg {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) { return report::format_sig(v); }

} // namespace

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                    double stroke_width, const std::string& dash) {
    body_ += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
             "\" y2=\"" + num(y2) + "\" stroke=\"" + escape(stroke) + "\" stroke-width=\"" +
             num(stroke_width) + "\"";
    if (!dash.empty()) {
        body_ += " stroke-dasharray=\"" + escape(dash) + "\"";
    }
    body_ += "/>\n";
}

void Document::polyline(const std::vector<std::pair<double, double>>& points,
                        const std::string& stroke, double stroke_width) {
    body_ += "  <polyline fill=\"none\" stroke=\"" + escape(stroke) + "\" stroke-width=\"" +
             num(stroke_width) + "\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0) body_ += ' ';
        body_ += num(points[i].first) + "," + num(points[i].second);
    }
    body_ += "\"/>\n";
}

void Document::circle(double cx, double cy, double r, const std::string& fill,
                      const std::string& title) {
    body_ += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
             "\" fill=\"" + escape(fill) + "\"";
    if (title.empty()) {
        body_ += "/>\n";
    } else {
        body_ += "><title>" + escape(title) + "</title></circle>\n";
    }
}

void Document::text(double x, double y, const std::string& content, double font_size,
                    const std::string& anchor) {
    body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(font_size) +
             "\" font-family=\"monospace\" text-anchor=\"" + escape(anchor) + "\">" +
             escape(content) + "</text>\n";
}

std::string Document::str() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
           num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" +
           "  <rect width=\"" + num(width_) + "\" height=\"" + num(height_) +
           "\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

} // namespace openslice::svg
