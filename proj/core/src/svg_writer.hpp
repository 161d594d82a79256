#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sumnorm::detail {

// Minimal SVG 1.1 emitter. Coordinates print with two decimals so output
// is byte-stable.
class SvgWriter {
public:
    SvgWriter(double width, double height) : width_(width), height_(height) {}

    static std::string num(double v) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        std::string s(buf);
        if (s == "-0.00") s = "0.00";
        return s;
    }

    static std::string escape(std::string_view text) {
        std::string out;
        for (char c : text) {
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

    void line(double x1, double y1, double x2, double y2, std::string_view stroke,
              double width = 1.0, std::string_view dash = {}) {
        body_ += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                 "\" y2=\"" + num(y2) + "\" stroke=\"" + std::string(stroke) +
                 "\" stroke-width=\"" + num(width) + "\"";
        if (!dash.empty()) body_ += " stroke-dasharray=\"" + std::string(dash) + "\"";
        body_ += "/>\n";
    }

    void rect(double x, double y, double w, double h, std::string_view fill) {
        body_ += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
                 "\" height=\"" + num(h) + "\" fill=\"" + std::string(fill) + "\"/>\n";
    }

    void polygon(const std::vector<std::pair<double, double>>& pts, std::string_view fill) {
        body_ += "  <polygon points=\"" + points(pts) + "\" fill=\"" + std::string(fill) + "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke,
                  double width = 1.5) {
        body_ += "  <polyline points=\"" + points(pts) + "\" fill=\"none\" stroke=\"" +
                 std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"/>\n";
    }

    void circle(double cx, double cy, double r, std::string_view fill) {
        body_ += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
                 "\" fill=\"" + std::string(fill) + "\"/>\n";
    }

    void text(double x, double y, std::string_view content, std::string_view anchor = "start",
              double size = 12.0, std::string_view weight = "normal") {
        body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
                 "\" text-anchor=\"" + std::string(anchor) + "\"";
        if (weight != "normal") body_ += " font-weight=\"" + std::string(weight) + "\"";
        body_ += ">" + escape(content) + "</text>\n";
    }

    [[nodiscard]] std::string str() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
               num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) +
               " " + num(height_) + "\" font-family=\"Helvetica, Arial, sans-serif\">\n" +
               "  <rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
               "\" fill=\"white\"/>\n" + body_ + "</svg>\n";
    }

private:
    static std::string points(const std::vector<std::pair<double, double>>& pts) {
        std::string s;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) s += ' ';
            s += num(pts[i].first) + ',' + num(pts[i].second);
        }
        return s;
    }

    double width_;
    double height_;
    std::string body_;
};

}  // namespace sumnorm::detail
