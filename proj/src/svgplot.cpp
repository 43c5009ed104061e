#include "svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "constants.hpp"
#include "csvio.hpp"

namespace gpb {

namespace {

const char* kTraceColors[] = {"#c22", "#22c", "#2a2", "#a2a", "#b80", "#088"};

std::string xml_escape(const std::string& s) {
    std::string out;
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

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

}  // namespace

std::string emit_polar_svg(const PolarPlotSpec& spec) {
    if (spec.traces.empty()) throw std::invalid_argument("polar plot needs at least one trace");
    for (const PolarTrace& t : spec.traces)
        if (t.samples.empty()) throw std::invalid_argument("polar trace `" + t.label + "` is empty");
    if (!(spec.db_min < spec.db_max)) throw std::invalid_argument("polar plot dB range is inverted");

    const double size = 520.0, cx = 240.0, cy = 260.0, rmax = 190.0;
    auto radius = [&](double db) {
        const double c = std::clamp(db, spec.db_min, spec.db_max);
        return rmax * (c - spec.db_min) / (spec.db_max - spec.db_min);
    };
    // 0 deg at the top, clockwise.
    auto point = [&](double angle_rad, double db) {
        const double r = radius(db);
        return std::pair<double, double>{cx + r * std::sin(angle_rad), cy - r * std::cos(angle_rad)};
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
       << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        os << "<text x=\"" << cx << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
              "font-family=\"sans-serif\">"
           << xml_escape(spec.title) << "</text>\n";

    // dB rings every quarter of the range.
    for (int i = 0; i <= 4; ++i) {
        const double db = spec.db_max - i * (spec.db_max - spec.db_min) / 4.0;
        const double r = radius(db);
        if (r > 0.0)
            os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << fmt(r)
               << "\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << cx + 4 << "\" y=\"" << fmt(cy - r - 3)
           << "\" font-size=\"10\" fill=\"#666\" font-family=\"sans-serif\">" << fmt(db)
           << " dB</text>\n";
    }
    // Angle spokes every 30 degrees with labels.
    for (int d = 0; d < 360; d += 30) {
        const double a = d * kPi / 180.0;
        auto [x, y] = point(a, spec.db_max);
        os << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << fmt(x) << "\" y2=\""
           << fmt(y) << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        const double lx = cx + (rmax + 16) * std::sin(a), ly = cy - (rmax + 16) * std::cos(a);
        os << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly + 4)
           << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << d
           << "&#176;</text>\n";
    }

    for (std::size_t ti = 0; ti < spec.traces.size(); ++ti) {
        const PolarTrace& t = spec.traces[ti];
        os << "<polyline fill=\"none\" stroke=\"" << kTraceColors[ti % 6]
           << "\" stroke-width=\"1.6\"" << (ti % 2 ? " stroke-dasharray=\"6 4\"" : "")
           << " points=\"";
        for (const auto& [a, db] : t.samples) {
            auto [x, y] = point(a, db);
            os << fmt(x) << "," << fmt(y) << " ";
        }
        os << "\"/>\n";
        // Legend entry.
        const double ly = 40.0 + 18.0 * ti;
        os << "<line x1=\"450\" y1=\"" << ly << "\" x2=\"478\" y2=\"" << ly << "\" stroke=\""
           << kTraceColors[ti % 6] << "\" stroke-width=\"1.6\""
           << (ti % 2 ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
           << "<text x=\"446\" y=\"" << ly + 4
           << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
           << xml_escape(t.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string emit_s11_svg(const std::vector<std::pair<double, double>>& data,
                         const std::string& title) {
    if (data.empty()) throw std::invalid_argument("s11 plot needs samples");
    const double w = 640.0, h = 420.0, x0 = 70.0, x1 = 610.0, y0 = 40.0, y1 = 370.0;
    double fmin = data.front().first, fmax = data.back().first;
    if (!(fmax > fmin)) fmax = fmin + 1.0;
    double smin = 0.0;
    for (const auto& [f, s] : data) smin = std::min(smin, s);
    smin = std::min(-1.0, smin);
    auto px = [&](double f) { return x0 + (x1 - x0) * (f - fmin) / (fmax - fmin); };
    auto py = [&](double s) { return y0 + (y1 - y0) * (0.0 - s) / (0.0 - smin); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
       << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\" "
          "font-family=\"sans-serif\">"
       << xml_escape(title) << "</text>\n";
    for (int i = 0; i <= 5; ++i) {
        const double s = smin * i / 5.0;
        os << "<line x1=\"" << x0 << "\" y1=\"" << fmt(py(s)) << "\" x2=\"" << x1 << "\" y2=\""
           << fmt(py(s)) << "\" stroke=\"#ddd\"/>\n"
           << "<text x=\"" << x0 - 6 << "\" y=\"" << fmt(py(s) + 4)
           << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << fmt(s)
           << "</text>\n";
        const double f = fmin + (fmax - fmin) * i / 5.0;
        os << "<text x=\"" << fmt(px(f)) << "\" y=\"" << y1 + 18
           << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">"
           << fmt(f / 1e9) << "</text>\n";
    }
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << h - 8
       << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">frequency "
          "(GHz)</text>\n";
    os << "<polyline fill=\"none\" stroke=\"#c22\" stroke-width=\"1.8\" points=\"";
    for (const auto& [f, s] : data) os << fmt(px(f)) << "," << fmt(py(std::max(s, smin))) << " ";
    os << "\"/>\n</svg>\n";
    return os.str();
}

}  // namespace gpb
