#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "genvor/diagram.hpp"

namespace genvor {

/// Uniform bucket grid over a rectangle for ray shooting and proximity
/// queries against the edges of a diagram. Face labels are read off the
/// first edge hit by a ray, never from the sites.
class EdgeLocator {
public:
    EdgeLocator(const PlanarDiagram& d, const Rect& box, double pad = 1e-7) : d_(d), box_(box) {
        const int ne = static_cast<int>(d.edges.size());
        cells_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(ne))));
        buckets_.assign(static_cast<std::size_t>(cells_) * cells_, {});
        Rect padded{box.xmin - pad, box.ymin - pad, box.xmax + pad, box.ymax + pad};
        for (int e = 0; e < ne; ++e) {
            const Edge& ed = d.edges[e];
            const Curve& c = d.curves[ed.curve];
            for (const ClippedSpan& sp : clip_to_rect(c, ed.lo, ed.hi, padded)) {
                Rect bb = span_bbox(c, sp.lo, sp.hi);
                bb = {bb.xmin - pad, bb.ymin - pad, bb.xmax + pad, bb.ymax + pad};
                auto [c0, r0] = cell_of({bb.xmin, bb.ymin});
                auto [c1, r1] = cell_of({bb.xmax, bb.ymax});
                for (int r = r0; r <= r1; ++r)
                    for (int col = c0; col <= c1; ++col) {
                        auto& b = buckets_[static_cast<std::size_t>(r) * cells_ + col];
                        if (b.empty() || b.back() != e) b.push_back(e);
                    }
            }
        }
    }

    /// Distance from x to the nearest edge if it is below `limit`.
    bool near_edge(Vec2 x, double limit) const {
        if (!box_.contains(x)) return scan_near(x, limit, nullptr);
        auto [col, row] = cell_of(x);
        return scan_near(x, limit, &buckets_[static_cast<std::size_t>(row) * cells_ + col]);
    }

    /// Label of the face containing x, or nullopt if it cannot be decided.
    std::optional<FaceLabel> locate(Vec2 x) const {
        if (d_.edges.empty()) return d_.outer_label;
        static constexpr Vec2 dirs[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0.6, 0.8}, {-0.8, 0.6}};
        for (Vec2 u : dirs) {
            if (auto lab = shoot(x, u)) return lab;
        }
        if (!d_.has_unbounded_edges) return d_.outer_label;
        for (int i = 0; i < 64; ++i) {
            double a = kTwoPi * (i + 0.5) / 64.0;
            if (auto lab = shoot(x, {std::cos(a), std::sin(a)})) return lab;
        }
        return std::nullopt;
    }

private:
    std::pair<int, int> cell_of(Vec2 p) const {
        auto idx = [&](double v, double lo, double hi) {
            int i = static_cast<int>(std::floor((v - lo) / (hi - lo) * cells_));
            return std::clamp(i, 0, cells_ - 1);
        };
        return {idx(p.x, box_.xmin, box_.xmax), idx(p.y, box_.ymin, box_.ymax)};
    }

    static Rect span_bbox(const Curve& c, double lo, double hi) {
        Vec2 a = c.at(lo), b = c.at(hi);
        Rect r{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
        if (c.is_circle) {
            for (int q = -4; q <= 8; ++q) {
                double t = q * 0.5 * std::numbers::pi;
                if (t > lo && t < hi) {
                    Vec2 p = c.at(t);
                    r = {std::min(r.xmin, p.x), std::min(r.ymin, p.y), std::max(r.xmax, p.x), std::max(r.ymax, p.y)};
                }
            }
        }
        return r;
    }

    static bool in_range(const Curve& c, const Edge& e, double t) {
        if (!c.is_circle) return t >= e.lo && t <= e.hi;
        while (t < e.lo) t += kTwoPi;
        while (t >= e.lo + kTwoPi) t -= kTwoPi;
        return t <= e.hi;
    }

    static double distance_to(const Curve& c, const Edge& e, Vec2 x) {
        double t = c.param_of(x);
        if (in_range(c, e, t)) return c.is_circle ? std::abs(norm(x - c.p) - c.r) : std::abs(cross(c.d, x - c.p));
        double best = std::numeric_limits<double>::infinity();
        if (!std::isinf(e.lo)) best = std::min(best, norm(x - c.at(e.lo)));
        if (!std::isinf(e.hi)) best = std::min(best, norm(x - c.at(e.hi)));
        return best;
    }

    bool scan_near(Vec2 x, double limit, const std::vector<int>* bucket) const {
        auto test = [&](int e) {
            const Edge& ed = d_.edges[e];
            return distance_to(d_.curves[ed.curve], ed, x) < limit;
        };
        if (bucket) return std::any_of(bucket->begin(), bucket->end(), test);
        for (int e = 0; e < static_cast<int>(d_.edges.size()); ++e)
            if (test(e)) return true;
        return false;
    }

    // Ray x + s*u, s > 0: nearest crossing with edge e, or +inf.
    double hit(int e, Vec2 x, Vec2 u, bool* left) const {
        const Edge& ed = d_.edges[e];
        const Curve& c = d_.curves[ed.curve];
        double best = std::numeric_limits<double>::infinity();
        auto consider = [&](double s) {
            if (!(s > 0.0) || s >= best) return;
            Vec2 p = x + s * u;
            double t = c.param_of(p);
            if (!in_range(c, ed, t)) return;
            Vec2 tan = c.tangent(t);
            double side = cross(tan, -1.0 * u);
            if (std::abs(side) < 1e-9) return;
            best = s;
            *left = side > 0.0;
        };
        if (!c.is_circle) {
            double den = cross(u, c.d);
            if (den == 0.0) return best;
            consider(cross(c.p - x, c.d) / den);
        } else {
            Vec2 w = x - c.p;
            double b = dot(w, u);
            double q = norm2(w) - c.r * c.r;
            double disc = b * b - q;
            if (disc < 0.0) return best;
            double sq = std::sqrt(disc);
            consider(-b - sq);
            consider(-b + sq);
        }
        return best;
    }

    std::optional<FaceLabel> shoot(Vec2 x, Vec2 u) const {
        double best = std::numeric_limits<double>::infinity();
        int best_edge = -1;
        bool best_left = false;
        auto test = [&](int e) {
            bool left = false;
            double s = hit(e, x, u, &left);
            if (s < best) {
                best = s;
                best_edge = e;
                best_left = left;
            }
        };
        bool axis = (u.x == 0.0 || u.y == 0.0) && box_.contains(x);
        if (axis) {
            auto [col, row] = cell_of(x);
            int dc = u.x > 0 ? 1 : u.x < 0 ? -1 : 0;
            int dr = u.y > 0 ? 1 : u.y < 0 ? -1 : 0;
            for (; col >= 0 && col < cells_ && row >= 0 && row < cells_; col += dc, row += dr) {
                for (int e : buckets_[static_cast<std::size_t>(row) * cells_ + col]) test(e);
                if (best_edge >= 0) {
                    Vec2 p = x + best * u;
                    double cw = box_.width() / cells_, ch = box_.height() / cells_;
                    double cx0 = box_.xmin + col * cw, cy0 = box_.ymin + row * ch;
                    if (p.x >= cx0 - 1e-12 && p.x <= cx0 + cw + 1e-12 && p.y >= cy0 - 1e-12 && p.y <= cy0 + ch + 1e-12)
                        break;
                }
            }
            if (best_edge < 0 || !box_.contains(x + best * u)) {
                // crossings outside the bucketed box are not indexed
                best = std::numeric_limits<double>::infinity();
                best_edge = -1;
                for (int e = 0; e < static_cast<int>(d_.edges.size()); ++e) test(e);
            }
        } else {
            for (int e = 0; e < static_cast<int>(d_.edges.size()); ++e) test(e);
        }
        if (best_edge < 0) return std::nullopt;
        const Edge& ed = d_.edges[best_edge];
        return best_left ? ed.left : ed.right;
    }

    const PlanarDiagram& d_;
    Rect box_;
    int cells_ = 1;
    std::vector<std::vector<int>> buckets_;
};

} // namespace genvor
