#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "genvor/error.hpp"
#include "genvor/rational.hpp"

namespace genvor {

// ---------------------------------------------------------------------------
// Floating point kernel
// ---------------------------------------------------------------------------

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 unit(Vec2 a) { return (1.0 / norm(a)) * a; }

inline bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A line (p + t*d, |d| = 1, t in R) or a circle (p + r*(cos t, sin t), t
/// an angle). The left side of the curve for increasing t is the inside of a
/// circle.
struct Curve {
    bool is_circle = false;
    Vec2 p;
    Vec2 d;
    double r = 0.0;

    static Curve line(Vec2 point, Vec2 direction) { return {false, point, unit(direction), 0.0}; }
    static Curve circle(Vec2 center, double radius) { return {true, center, {}, radius}; }

    Vec2 at(double t) const {
        if (is_circle) return p + Vec2{r * std::cos(t), r * std::sin(t)};
        return p + t * d;
    }

    /// Unit tangent in the direction of increasing parameter.
    Vec2 tangent(double t) const {
        if (is_circle) return {-std::sin(t), std::cos(t)};
        return d;
    }

    /// Parameter of the closest point; circle angles land in [0, 2pi).
    double param_of(Vec2 x) const {
        if (is_circle) {
            double a = std::atan2(x.y - p.y, x.x - p.x);
            return a < 0 ? a + kTwoPi : a;
        }
        return dot(x - p, d);
    }

    /// Signed distance, positive on the left side.
    double side_distance(Vec2 x) const {
        if (is_circle) return r - norm(x - p);
        return cross(d, x - p);
    }
};

/// Up to two intersection points, sorted lexicographically by (x, y).
struct CurveHits {
    std::array<Vec2, 2> pts{};
    int count = 0;
    bool overlap = false;
};

namespace detail {

inline void sort_hits(CurveHits& h) {
    if (h.count == 2 && lex_less(h.pts[1], h.pts[0])) std::swap(h.pts[0], h.pts[1]);
}

inline CurveHits line_line(const Curve& a, const Curve& b) {
    CurveHits h;
    double den = cross(a.d, b.d);
    Vec2 w = b.p - a.p;
    if (den == 0.0) {
        h.overlap = std::abs(cross(a.d, w)) <= 1e-15 * (1.0 + norm(w));
        return h;
    }
    double t = cross(w, b.d) / den;
    h.pts[0] = a.at(t);
    h.count = 1;
    return h;
}

inline CurveHits line_circle(const Curve& line, const Curve& c) {
    CurveHits h;
    Vec2 w = line.p - c.p;
    double b = dot(w, line.d);
    double q = norm2(w) - c.r * c.r;
    double disc = b * b - q;
    if (disc < 0.0) return h;
    double s = std::sqrt(disc);
    // numerically stable roots of t^2 + 2bt + q = 0
    double t1 = -b - std::copysign(s, b);
    double t2 = t1 != 0.0 ? q / t1 : 0.0;
    h.pts[0] = line.at(t1);
    h.pts[1] = line.at(t2);
    h.count = disc == 0.0 ? 1 : 2;
    sort_hits(h);
    return h;
}

inline CurveHits circle_circle(const Curve& a, const Curve& b) {
    CurveHits h;
    Vec2 w = b.p - a.p;
    double dd = norm2(w);
    if (dd == 0.0) {
        h.overlap = a.r == b.r;
        return h;
    }
    double dist = std::sqrt(dd);
    if (dist > a.r + b.r || dist < std::abs(a.r - b.r)) return h;
    double along = (dd + a.r * a.r - b.r * b.r) / (2.0 * dist);
    double hh = a.r * a.r - along * along;
    if (hh < 0.0) hh = 0.0;
    double off = std::sqrt(hh);
    Vec2 e = (1.0 / dist) * w;
    Vec2 base = a.p + along * e;
    h.pts[0] = base + off * perp(e);
    h.pts[1] = base - off * perp(e);
    h.count = off == 0.0 ? 1 : 2;
    sort_hits(h);
    return h;
}

} // namespace detail

inline CurveHits intersect(const Curve& a, const Curve& b) {
    if (!a.is_circle && !b.is_circle) return detail::line_line(a, b);
    if (!a.is_circle) return detail::line_circle(a, b);
    if (!b.is_circle) return detail::line_circle(b, a);
    return detail::circle_circle(a, b);
}

// ---------------------------------------------------------------------------
// Exact-input domain types
// ---------------------------------------------------------------------------

struct Point2 {
    Rational x;
    Rational y;

    Vec2 approx() const { return {to_double(x), to_double(y)}; }
    friend bool operator==(const Point2&, const Point2&) = default;
};

struct WeightedSite {
    int id = 0;
    Point2 pos;
    Rational weight{1};
};

/// Which closed half-plane of the bounding line is visible. Left means the
/// side counter-clockwise from the line direction (cos a, sin a).
enum class Side : int { Right = 0, Left = 1 };

/// The bounding line always passes through the owning site; only its
/// direction and the visible side are stored.
struct VisibilityConstraint {
    Rational angle;  // radians, in [0, pi)
    Side side = Side::Left;

    Vec2 direction() const {
        double a = to_double(angle);
        return {std::cos(a), std::sin(a)};
    }

    /// The rounded direction taken as an exact rational vector; all exact
    /// predicates on the line use this representation.
    std::array<Rational, 2> exact_direction() const {
        Vec2 d = direction();
        return {exact_rational(d.x), exact_rational(d.y)};
    }
};

inline double weighted_distance(Vec2 x, Vec2 site, double weight) { return weight * norm(x - site); }

inline double weighted_distance(const Point2& x, const WeightedSite& s) {
    return weighted_distance(x.approx(), s.pos.approx(), to_double(s.weight));
}

/// Closed half-plane membership, decided exactly.
inline bool visible(const Point2& x, const WeightedSite& s, const VisibilityConstraint& v) {
    auto [dx, dy] = v.exact_direction();
    Rational c = dx * (x.y - s.pos.y) - dy * (x.x - s.pos.x);
    return v.side == Side::Left ? c >= 0 : c <= 0;
}

inline bool visible(Vec2 x, Vec2 site, Vec2 direction, Side side) {
    double c = cross(direction, x - site);
    return side == Side::Left ? c >= 0.0 : c <= 0.0;
}

// ---------------------------------------------------------------------------
// Exact bisectors
// ---------------------------------------------------------------------------

/// ax + by = c, or the circle |x - center|^2 = radius2. Lines are
/// canonicalized so the first nonzero of (a, b) equals 1.
struct BisectorCurve {
    enum class Kind { Line, Circle };
    Kind kind = Kind::Line;
    Rational a, b, c;
    Point2 center;
    Rational radius2;

    friend bool operator==(const BisectorCurve&, const BisectorCurve&) = default;

    /// Residual of the implicit equation (zero on the curve).
    double residual(Vec2 x) const {
        if (kind == Kind::Line) return to_double(a) * x.x + to_double(b) * x.y - to_double(c);
        Vec2 q = center.approx();
        return norm2(x - q) - to_double(radius2);
    }

    Curve approx() const {
        if (kind == Kind::Line) {
            double da = to_double(a), db = to_double(b), dc = to_double(c);
            Vec2 n{da, db};
            Vec2 p = (dc / norm2(n)) * n;
            return Curve::line(p, perp(n));
        }
        return Curve::circle(center.approx(), std::sqrt(to_double(radius2)));
    }
};

/// Locus where w_i d(x, s_i) = w_j d(x, s_j).
inline BisectorCurve bisector(const WeightedSite& si, const WeightedSite& sj) {
    if (si.pos == sj.pos) throw Error(ErrorCode::CoincidentSites, "bisector of coincident sites");
    BisectorCurve out;
    const Rational wi2 = si.weight * si.weight;
    const Rational wj2 = sj.weight * sj.weight;
    const Rational si2 = si.pos.x * si.pos.x + si.pos.y * si.pos.y;
    const Rational sj2 = sj.pos.x * sj.pos.x + sj.pos.y * sj.pos.y;
    if (wi2 == wj2) {
        out.kind = BisectorCurve::Kind::Line;
        Rational a = 2 * (sj.pos.x - si.pos.x);
        Rational b = 2 * (sj.pos.y - si.pos.y);
        Rational c = sj2 - si2;
        Rational lead = a != 0 ? a : b;
        out.a = a / lead;
        out.b = b / lead;
        out.c = c / lead;
        return out;
    }
    // (wi2 - wj2)|x|^2 - 2 x.(wi2 si - wj2 sj) + wi2|si|^2 - wj2|sj|^2 = 0
    const Rational A = wi2 - wj2;
    out.kind = BisectorCurve::Kind::Circle;
    out.center = {(wi2 * si.pos.x - wj2 * sj.pos.x) / A, (wi2 * si.pos.y - wj2 * sj.pos.y) / A};
    out.radius2 = out.center.x * out.center.x + out.center.y * out.center.y - (wi2 * si2 - wj2 * sj2) / A;
    return out;
}

/// An intersection point with an absolute error bound on each coordinate.
/// Line-line intersections additionally carry the exact rational point.
struct CertifiedPoint {
    Vec2 value;
    double width = 0.0;
    std::optional<Point2> exact;
};

struct BisectorIntersection {
    bool overlap = false;
    std::vector<CertifiedPoint> points;
};

namespace detail {

// Implicit form F(x) = 0 evaluated in long double together with its gradient.
struct ImplicitEval {
    long double f, gx, gy;
};

inline ImplicitEval eval_implicit(const BisectorCurve& c, long double x, long double y) {
    if (c.kind == BisectorCurve::Kind::Line) {
        long double a = c.a.convert_to<long double>(), b = c.b.convert_to<long double>();
        return {a * x + b * y - c.c.convert_to<long double>(), a, b};
    }
    long double cx = c.center.x.convert_to<long double>(), cy = c.center.y.convert_to<long double>();
    long double dx = x - cx, dy = y - cy;
    return {dx * dx + dy * dy - c.radius2.convert_to<long double>(), 2 * dx, 2 * dy};
}

// One Newton step on the 2x2 system in long double; the reported width is a
// multiple of the final correction size plus the rounding floor.
inline CertifiedPoint polish(const BisectorCurve& c1, const BisectorCurve& c2, Vec2 guess) {
    long double x = guess.x, y = guess.y;
    long double step = 0;
    for (int iter = 0; iter < 3; ++iter) {
        auto e1 = eval_implicit(c1, x, y);
        auto e2 = eval_implicit(c2, x, y);
        long double det = e1.gx * e2.gy - e1.gy * e2.gx;
        if (det == 0) break;
        long double dx = (e1.f * e2.gy - e2.f * e1.gy) / det;
        long double dy = (e1.gx * e2.f - e2.gx * e1.f) / det;
        x -= dx;
        y -= dy;
        step = std::max(std::abs(dx), std::abs(dy));
    }
    double scale = std::max({1.0, std::abs(static_cast<double>(x)), std::abs(static_cast<double>(y))});
    double width = 4.0 * static_cast<double>(step) + 8.0 * std::numeric_limits<double>::epsilon() * scale;
    return {{static_cast<double>(x), static_cast<double>(y)}, width, std::nullopt};
}

} // namespace detail

/// Points common to both curves, sorted by (x, y). Identical curves report
/// overlap with no points.
inline BisectorIntersection intersect(const BisectorCurve& c1, const BisectorCurve& c2) {
    BisectorIntersection out;
    if (c1 == c2) {
        out.overlap = true;
        return out;
    }
    using Kind = BisectorCurve::Kind;
    if (c1.kind == Kind::Line && c2.kind == Kind::Line) {
        Rational det = c1.a * c2.b - c1.b * c2.a;
        if (det == 0) return out;
        Point2 p{(c1.c * c2.b - c1.b * c2.c) / det, (c1.a * c2.c - c1.c * c2.a) / det};
        out.points.push_back({p.approx(), 0.0, p});
        return out;
    }
    CurveHits hits = intersect(c1.approx(), c2.approx());
    if (hits.overlap) {
        out.overlap = true;
        return out;
    }
    for (int i = 0; i < hits.count; ++i) out.points.push_back(detail::polish(c1, c2, hits.pts[i]));
    std::sort(out.points.begin(), out.points.end(),
              [](const CertifiedPoint& a, const CertifiedPoint& b) { return lex_less(a.value, b.value); });
    return out;
}

} // namespace genvor
