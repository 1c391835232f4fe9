#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "genvor/diagram.hpp"
#include "genvor/locate.hpp"
#include "genvor/rng.hpp"
#include "genvor/site_set.hpp"

namespace genvor {

struct SvgOptions {
    int raster = 100;  // face-colour samples per side
    bool draw_sites = true;
    std::string comment;  // written verbatim into a leading XML comment
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

inline std::string face_colour(const FaceLabel& label) {
    if (label.kind == FaceLabel::Kind::NotVisible) return "#e6e6e6";
    std::uint64_t h = splitmix64(label.hash());
    int hue = static_cast<int>(h % 360);
    int light = 72 + static_cast<int>((h >> 16) % 14);
    char buf[40];
    std::snprintf(buf, sizeof buf, "hsl(%d,55%%,%d%%)", hue, light);
    return buf;
}

} // namespace detail

/// Renders the part of the diagram inside the unit square onto a
/// 1000 x 1000 view box (y up). Circular edges use SVG arc commands.
inline void write_svg(const PlanarDiagram& d, const SiteSet& sites, std::ostream& out, const SvgOptions& opt = {}) {
    using detail::svg_num;
    constexpr double S = 1000.0;
    auto X = [&](double x) { return svg_num(S * x); };
    auto Y = [&](double y) { return svg_num(S * (1.0 - y)); };
    const Rect unit = Rect::unit();

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!opt.comment.empty()) {
        std::string c = opt.comment;
        for (std::size_t p; (p = c.find("--")) != std::string::npos;) c.replace(p, 2, "- -");
        out << "<!-- " << c << " -->\n";
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";

    // Face colours, one run of equal labels per rect.
    const int R = std::max(1, opt.raster);
    const double cell = 1.0 / R;
    EdgeLocator locator(d, unit);
    out << "<g shape-rendering=\"crispEdges\">\n";
    for (int r = 0; r < R; ++r) {
        int start = 0;
        std::string run_colour;
        for (int c = 0; c <= R; ++c) {
            std::string colour;
            if (c < R) {
                auto label = locator.locate({(c + 0.5) * cell, (r + 0.5) * cell});
                colour = label ? detail::face_colour(*label) : "#ffffff";
            }
            if (c == R || colour != run_colour) {
                if (c > 0)
                    out << "<rect x=\"" << X(start * cell) << "\" y=\"" << Y((r + 1) * cell) << "\" width=\""
                        << svg_num(S * (c - start) * cell) << "\" height=\"" << svg_num(S * cell) << "\" fill=\""
                        << run_colour << "\"/>\n";
                start = c;
                run_colour = colour;
            }
        }
    }
    out << "</g>\n";

    out << "<g fill=\"none\" stroke=\"#202020\" stroke-width=\"1.5\">\n";
    for (const Edge& e : d.edges) {
        const Curve& c = d.curves[e.curve];
        for (const ClippedSpan& sp : clip_to_rect(c, e.lo, e.hi, unit)) {
            Vec2 a = c.at(sp.lo), b = c.at(sp.hi);
            if (!c.is_circle) {
                out << "<path d=\"M" << X(a.x) << ' ' << Y(a.y) << " L" << X(b.x) << ' ' << Y(b.y) << "\"/>\n";
                continue;
            }
            // Increasing parameter runs counter-clockwise; after the y flip
            // that is the negative-angle direction, so sweep-flag is 0.
            const std::string r = svg_num(S * c.r);
            out << "<path d=\"M" << X(a.x) << ' ' << Y(a.y);
            double span = sp.hi - sp.lo;
            if (span >= 2.0 * std::numbers::pi - 1e-12) {
                Vec2 m = c.at(sp.lo + std::numbers::pi);
                out << " A" << r << ' ' << r << " 0 0 0 " << X(m.x) << ' ' << Y(m.y);
                out << " A" << r << ' ' << r << " 0 0 0 " << X(a.x) << ' ' << Y(a.y) << " Z";
            } else {
                int large = span > std::numbers::pi ? 1 : 0;
                out << " A" << r << ' ' << r << " 0 " << large << " 0 " << X(b.x) << ' ' << Y(b.y);
            }
            out << "\"/>\n";
        }
    }
    out << "</g>\n";

    if (opt.draw_sites) {
        out << "<g fill=\"#000000\">\n";
        for (int i = 0; i < sites.size(); ++i) {
            Vec2 p = sites.pos(i);
            if (!unit.contains(p)) continue;
            out << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"3\"><title>" << i
                << "</title></circle>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
}

} // namespace genvor
