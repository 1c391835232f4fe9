#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "genvor/diagram.hpp"
#include "genvor/site_set.hpp"

namespace genvor {

struct BuildOptions {
    enum class Path { Auto, Reference, Scalable };
    Path path = Path::Auto;
    /// Diagnostic mode for semi diagrams: every site sees the whole plane.
    bool full_visibility = false;
};

inline constexpr int kReferenceCapacity = 64;
inline constexpr int kScalableCapacity = 4096;

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Floating point view of the sites as one builder sees them.
struct EngineSites {
    DiagramKind kind = DiagramKind::Standard;
    int k = 1;
    int n = 0;
    bool visibility = false;
    std::vector<Vec2> pos;
    std::vector<double> w;
    std::vector<Vec2> dir;
    std::vector<Side> side;

    double dist2(int i, Vec2 x) const { return norm2(x - pos[i]); }
    double wdist2(int i, Vec2 x) const { return w[i] * w[i] * norm2(x - pos[i]); }
    bool sees(int i, Vec2 x) const { return !visibility || visible(x, pos[i], dir[i], side[i]); }

    Curve bisector_curve(int i, int j) const {
        if (i > j) std::swap(i, j);
        if (w[i] == w[j]) return Curve::line(0.5 * (pos[i] + pos[j]), perp(pos[j] - pos[i]));
        double wi2 = w[i] * w[i], wj2 = w[j] * w[j];
        double a = wi2 - wj2;
        Vec2 center = (1.0 / a) * (wi2 * pos[i] - wj2 * pos[j]);
        double r = w[i] * w[j] * norm(pos[i] - pos[j]) / std::abs(a);
        return Curve::circle(center, r);
    }

    Curve visibility_curve(int i) const { return Curve::line(pos[i], dir[i]); }

    Curve curve(CurveId id) const {
        return id.type == CurveId::Type::Bisector ? bisector_curve(id.a, id.b) : visibility_curve(id.a);
    }

    /// Label of the face containing x, evaluated directly from the distance
    /// functions (lowest id wins ties).
    FaceLabel label_at(Vec2 x, int exclude = -1) const {
        switch (kind) {
        case DiagramKind::Standard:
        case DiagramKind::Multiplicative: {
            int best = -1;
            double bd = kInf;
            for (int i = 0; i < n; ++i) {
                double v = wdist2(i, x);
                if (v < bd) { bd = v; best = i; }
            }
            return FaceLabel::nearest(best);
        }
        case DiagramKind::Semi: {
            int best = -1;
            double bd = kInf;
            for (int i = 0; i < n; ++i) {
                if (i == exclude || !sees(i, x)) continue;
                double v = dist2(i, x);
                if (v < bd) { bd = v; best = i; }
            }
            return best < 0 ? FaceLabel::not_visible() : FaceLabel::nearest(best);
        }
        case DiagramKind::OrderKSequence: {
            std::vector<std::pair<double, int>> all(n);
            for (int i = 0; i < n; ++i) all[i] = {dist2(i, x), i};
            std::partial_sort(all.begin(), all.begin() + k, all.end());
            std::vector<int> ids(k);
            for (int i = 0; i < k; ++i) ids[i] = all[i].second;
            return FaceLabel::sequence(std::move(ids));
        }
        }
        return FaceLabel::not_visible();
    }
};

inline EngineSites engine_sites(const SiteSet& sites, DiagramKind kind, int k, const BuildOptions& opt) {
    EngineSites s;
    s.kind = kind;
    s.k = k;
    s.n = sites.size();
    s.pos = sites.approx_positions();
    s.w.assign(s.n, 1.0);
    if (kind == DiagramKind::Multiplicative)
        for (int i = 0; i < s.n; ++i) s.w[i] = sites.weight(i);
    if (kind == DiagramKind::Semi && !opt.full_visibility) {
        s.visibility = true;
        for (int i = 0; i < s.n; ++i) {
            s.dir.push_back(sites.direction(i));
            s.side.push_back(sites.side(i));
        }
    }
    return s;
}

inline std::vector<CurveId> candidate_curves(const EngineSites& s) {
    std::vector<CurveId> ids;
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j) ids.push_back(CurveId::bisector(i, j));
    if (s.visibility)
        for (int i = 0; i < s.n; ++i) ids.push_back(CurveId::visibility(i));
    return ids;
}

struct CurveEvent {
    double t;
    VertexKey key;
};

inline void finish_clip_box(PlanarDiagram& d, const EngineSites& s) {
    double xmin = kInf, ymin = kInf, xmax = -kInf, ymax = -kInf;
    auto grow = [&](Vec2 p) {
        xmin = std::min(xmin, p.x);
        ymin = std::min(ymin, p.y);
        xmax = std::max(xmax, p.x);
        ymax = std::max(ymax, p.y);
    };
    for (Vec2 p : s.pos) grow(p);
    for (const Vertex& v : d.vertices)
        if (v.kind == Vertex::Kind::Finite) grow(v.pos);
    for (const Edge& e : d.edges) {
        const Curve& c = d.curves[e.curve];
        if (d.vertices[e.v_lo].kind == Vertex::Kind::LoopAnchor) {
            grow(c.p - Vec2{c.r, c.r});
            grow(c.p + Vec2{c.r, c.r});
        }
    }
    double side = std::max({xmax - xmin, ymax - ymin, 1e-3});
    Vec2 center{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    double half = 1.5 * side;
    d.clip_box = {center.x - half, center.y - half, center.x + half, center.y + half};

    Vec2 far = center + Vec2{1e6 * (side + 1.0), 0.37e6 * (side + 1.0)};
    d.outer_label = d.edges.empty() ? s.label_at(s.n ? s.pos[0] : Vec2{}) : s.label_at(far);
}

// ---------------------------------------------------------------------------
// Reference path: full arrangement, probe relabel, merge.
// ---------------------------------------------------------------------------

inline double curve_distance(const Curve& c, Vec2 x) {
    if (c.is_circle) return std::abs(std::sqrt(norm2(x - c.p)) - c.r);
    return std::abs(cross(c.d, x - c.p));
}

inline PlanarDiagram build_reference(const EngineSites& s) {
    PlanarDiagram d;
    d.kind = s.kind;
    d.k = s.k;
    d.site_count = s.n;
    d.curve_ids = candidate_curves(s);
    const int m = static_cast<int>(d.curve_ids.size());
    d.curves.reserve(m);
    for (CurveId id : d.curve_ids) d.curves.push_back(s.curve(id));

    std::vector<std::vector<CurveEvent>> events(m);
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            CurveHits hits = intersect(d.curves[a], d.curves[b]);
            for (int h = 0; h < hits.count; ++h) {
                VertexKey key = vertex_key(d.curve_ids[a], d.curve_ids[b], h);
                events[a].push_back({d.curves[a].param_of(hits.pts[h]), key});
                events[b].push_back({d.curves[b].param_of(hits.pts[h]), key});
            }
        }
    }

    // Raw arrangement (every arc) for the Euler check, then labeled pieces.
    std::vector<Vertex> raw_vertices;
    std::vector<Edge> raw_edges;
    std::unordered_map<VertexKey, int, VertexKeyHash> raw_index;
    auto raw_vertex = [&](const VertexKey& key, Vec2 p) {
        auto [it, fresh] = raw_index.try_emplace(key, static_cast<int>(raw_vertices.size()));
        if (fresh)
            raw_vertices.push_back({p, key.type == VertexKey::Type::Infinity ? Vertex::Kind::Infinity : Vertex::Kind::Finite});
        return it->second;
    };

    std::vector<Piece> pieces;
    for (int c = 0; c < m; ++c) {
        const Curve& cv = d.curves[c];
        auto& ev = events[c];
        std::sort(ev.begin(), ev.end(), [](const CurveEvent& x, const CurveEvent& y) { return x.t < y.t; });
        {
            std::vector<CurveEvent> uniq;
            for (const CurveEvent& e : ev) {
                bool dup = false;
                for (const CurveEvent& u : uniq)
                    if (u.key == e.key) { dup = true; break; }
                if (!dup) uniq.push_back(e);
            }
            ev.swap(uniq);
        }
        struct Arc { double lo, hi; VertexKey klo, khi; bool loop; };
        std::vector<Arc> arcs;
        const int ne = static_cast<int>(ev.size());
        if (!cv.is_circle) {
            if (ne == 0) {
                arcs.push_back({-kInf, kInf, VertexKey::infinity(), VertexKey::infinity(), false});
            } else {
                arcs.push_back({-kInf, ev[0].t, VertexKey::infinity(), ev[0].key, false});
                for (int i = 0; i + 1 < ne; ++i) arcs.push_back({ev[i].t, ev[i + 1].t, ev[i].key, ev[i + 1].key, false});
                arcs.push_back({ev[ne - 1].t, kInf, ev[ne - 1].key, VertexKey::infinity(), false});
            }
        } else if (ne == 0) {
            arcs.push_back({0.0, kTwoPi, {}, {}, true});
        } else {
            for (int i = 0; i + 1 < ne; ++i) arcs.push_back({ev[i].t, ev[i + 1].t, ev[i].key, ev[i + 1].key, false});
            arcs.push_back({ev[ne - 1].t, ev[0].t + kTwoPi, ev[ne - 1].key, ev[0].key, false});
        }
        for (const Arc& a : arcs) {
            Edge raw;
            raw.curve = c;
            raw.lo = a.lo;
            raw.hi = a.hi;
            if (a.loop) {
                raw.v_lo = raw.v_hi = static_cast<int>(raw_vertices.size());
                raw_vertices.push_back({cv.at(0.0), Vertex::Kind::LoopAnchor});
            } else {
                raw.v_lo = raw_vertex(a.klo, std::isinf(a.lo) ? Vec2{} : cv.at(a.lo));
                raw.v_hi = raw_vertex(a.khi, std::isinf(a.hi) ? Vec2{} : cv.at(a.hi));
            }
            raw_edges.push_back(raw);

            double mid, length;
            if (std::isinf(a.lo) && std::isinf(a.hi)) {
                mid = 0.0;
                length = kInf;
            } else if (std::isinf(a.lo)) {
                mid = a.hi - 1.0;
                length = kInf;
            } else if (std::isinf(a.hi)) {
                mid = a.lo + 1.0;
                length = kInf;
            } else {
                mid = 0.5 * (a.lo + a.hi);
                length = (a.hi - a.lo) * (cv.is_circle ? cv.r : 1.0);
            }
            Vec2 x = cv.at(mid);
            Vec2 nrm = perp(cv.tangent(mid));
            // Far from the sites the distance comparison loses absolute
            // precision, so the offset grows with |x|.
            double delta = std::min(1e-7 * std::max(1.0, std::sqrt(norm2(x))), 0.05 * length);
            FaceLabel left = s.label_at(x + delta * nrm);
            FaceLabel right = s.label_at(x - delta * nrm);
            if (left == right) continue;
            // A kept arc's side probes must not reach another curve: nested
            // circles of heavy sites can be closer than the default offset.
            double clearance = kInf;
            for (int o = 0; o < m; ++o)
                if (o != c) clearance = std::min(clearance, curve_distance(d.curves[o], x));
            if (0.5 * clearance < delta) {
                delta = std::max(1e-13, 0.5 * clearance);
                left = s.label_at(x + delta * nrm);
                right = s.label_at(x - delta * nrm);
                if (left == right) continue;
            }
            pieces.push_back({c, a.lo, a.hi, a.klo, a.khi, a.loop, std::move(left), std::move(right)});
        }
    }
    d.raw_topology = trace_topology(raw_vertices, raw_edges, d.curves);
    assemble(d, std::move(pieces));
    finish_clip_box(d, s);
    return d;
}

// ---------------------------------------------------------------------------
// Scalable path: per-curve envelope clipping with witness-driven pruning.
// ---------------------------------------------------------------------------

struct Span {
    double lo, hi;
    VertexKey klo, khi;
};

class CurveClipper {
public:
    CurveClipper(const EngineSites& s, CurveId id) : s_(s), id_(id), curve_(s.curve(id)) {
        if (curve_.is_circle)
            spans_.push_back({0.0, kTwoPi, VertexKey::wrap(id), VertexKey::wrap(id)});
        else
            spans_.push_back({-kInf, kInf, VertexKey::infinity(), VertexKey::infinity()});
    }

    const Curve& curve() const { return curve_; }
    const std::vector<Span>& spans() const { return spans_; }
    bool empty() const { return spans_.empty(); }

    /// A point of the current retained set.
    Vec2 witness() const {
        const Span& sp = spans_.front();
        double t;
        if (std::isinf(sp.lo) && std::isinf(sp.hi))
            t = 0.0;
        else if (std::isinf(sp.lo))
            t = sp.hi - (1.0 + std::abs(sp.hi));
        else if (std::isinf(sp.hi))
            t = sp.lo + (1.0 + std::abs(sp.lo));
        else
            t = 0.5 * (sp.lo + sp.hi);
        return curve_.at(t);
    }

    /// Keeps only the part of the retained set where allowed(x) holds; the
    /// predicate may change value only where one of the boundary curves
    /// crosses this curve.
    template <class Pred>
    void restrict(std::initializer_list<CurveId> boundaries, Pred allowed) {
        events_.clear();
        for (CurveId b : boundaries) {
            CurveHits hits = intersect(curve_, s_.curve(b));
            for (int h = 0; h < hits.count; ++h)
                events_.push_back({curve_.param_of(hits.pts[h]), vertex_key(id_, b, h)});
        }
        std::sort(events_.begin(), events_.end(), [](const CurveEvent& a, const CurveEvent& b) { return a.t < b.t; });

        allowed_.clear();
        const int ne = static_cast<int>(events_.size());
        double lo0 = curve_.is_circle ? 0.0 : -kInf;
        double hi0 = curve_.is_circle ? kTwoPi : kInf;
        VertexKey end_key = curve_.is_circle ? VertexKey::wrap(id_) : VertexKey::infinity();
        for (int i = 0; i <= ne; ++i) {
            double a = i == 0 ? lo0 : events_[i - 1].t;
            double b = i == ne ? hi0 : events_[i].t;
            if (!(a < b)) continue;
            auto t = sample_in(a, b);
            if (!t || !allowed(curve_.at(*t))) continue;
            VertexKey ka = i == 0 ? end_key : events_[i - 1].key;
            VertexKey kb = i == ne ? end_key : events_[i].key;
            if (!allowed_.empty() && allowed_.back().hi == a && allowed_.back().khi == ka) {
                allowed_.back().hi = b;
                allowed_.back().khi = kb;
            } else {
                allowed_.push_back({a, b, ka, kb});
            }
        }
        intersect_with_allowed();
    }

private:
    // A parameter in (a, b) inside the retained set, chosen in the longest
    // overlap and away from its ends: near-parallel curves make the
    // predicate's sign unreliable close to their crossing.
    std::optional<double> sample_in(double a, double b) const {
        double best_lo = 0, best_hi = 0, best_len = -1;
        for (const Span& sp : spans_) {
            double lo = std::max(a, sp.lo), hi = std::min(b, sp.hi);
            if (!(lo < hi)) continue;
            double len = hi - lo;
            if (len > best_len) {
                best_len = len;
                best_lo = lo;
                best_hi = hi;
            }
        }
        if (best_len < 0) return std::nullopt;
        if (std::isinf(best_lo) && std::isinf(best_hi)) return 0.0;
        if (std::isinf(best_lo)) return best_hi - (1.0 + std::abs(best_hi));
        if (std::isinf(best_hi)) return best_lo + (1.0 + std::abs(best_lo));
        return 0.5 * (best_lo + best_hi);
    }

    void intersect_with_allowed() {
        std::vector<Span> out;
        std::size_t i = 0, j = 0;
        while (i < spans_.size() && j < allowed_.size()) {
            const Span& x = spans_[i];
            const Span& y = allowed_[j];
            double lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
            if (lo < hi) {
                VertexKey klo = x.lo >= y.lo ? x.klo : y.klo;
                VertexKey khi = x.hi <= y.hi ? x.khi : y.khi;
                out.push_back({lo, hi, klo, khi});
            }
            if (x.hi < y.hi) ++i; else ++j;
        }
        spans_.swap(out);
    }

    const EngineSites& s_;
    CurveId id_;
    Curve curve_;
    std::vector<Span> spans_;
    std::vector<Span> allowed_;
    std::vector<CurveEvent> events_;
};

/// Retained spans of one candidate curve: the points where the curve's
/// owner (site i, tied with j on a bisector) beats every other active site.
inline std::vector<Span> clip_candidate(const EngineSites& s, CurveId id, std::vector<char>& tested) {
    CurveClipper clip(s, id);
    const int i = id.a;
    const bool semi = s.kind == DiagramKind::Semi;
    const bool on_line = id.type == CurveId::Type::Visibility;
    std::fill(tested.begin(), tested.end(), 0);
    tested[i] = 1;
    if (!on_line) tested[id.b] = 1;

    if (semi && s.visibility && !on_line) {
        clip.restrict({CurveId::visibility(id.a)}, [&](Vec2 x) { return s.sees(id.a, x); });
        if (clip.empty()) return {};
        clip.restrict({CurveId::visibility(id.b)}, [&](Vec2 x) { return s.sees(id.b, x); });
        if (clip.empty()) return {};
    }

    auto score = [&](int k, Vec2 x) { return semi ? s.dist2(k, x) : s.wdist2(k, x); };
    auto apply = [&](int k) {
        tested[k] = 1;
        if (semi) {
            auto pred = [&](Vec2 x) { return !s.sees(k, x) || s.dist2(i, x) <= s.dist2(k, x); };
            if (s.visibility)
                clip.restrict({CurveId::bisector(i, k), CurveId::visibility(k)}, pred);
            else
                clip.restrict({CurveId::bisector(i, k)}, pred);
        } else {
            clip.restrict({CurveId::bisector(i, k)}, [&](Vec2 x) { return s.wdist2(i, x) <= s.wdist2(k, x); });
        }
    };

    // Witness phase: repeatedly kill a point of the retained set with the
    // untested site that beats the owner there by the widest margin.
    while (!clip.empty()) {
        Vec2 x = clip.witness();
        double own = score(i, x);
        int best = -1;
        double best_score = own;
        for (int k = 0; k < s.n; ++k) {
            if (tested[k]) continue;
            double v = score(k, x);
            if (v < best_score && s.sees(k, x)) {
                best_score = v;
                best = k;
            }
        }
        if (best < 0) break;
        apply(best);
    }
    for (int k = 0; k < s.n && !clip.empty(); ++k)
        if (!tested[k]) apply(k);
    return clip.spans();
}

inline std::pair<std::int64_t, std::int64_t> pair_codes(const VertexKey& k) { return {k.u, k.v}; }

inline CurveId decode_curve(std::int64_t code) {
    CurveId id;
    id.type = static_cast<CurveId::Type>(code >> 42);
    id.a = static_cast<int>((code >> 21) & ((1 << 21) - 1));
    id.b = static_cast<int>(code & ((1 << 21) - 1)) - 1;
    return id;
}

inline PlanarDiagram build_scalable(const EngineSites& s) {
    PlanarDiagram d;
    d.kind = s.kind;
    d.k = s.k;
    d.site_count = s.n;
    std::vector<char> tested(s.n, 0);
    std::unordered_map<std::int64_t, int> curve_index;
    struct Raw {
        int curve;
        Span span;
    };
    std::vector<Raw> raw;
    for (CurveId id : candidate_curves(s)) {
        auto spans = clip_candidate(s, id, tested);
        if (spans.empty()) continue;
        int ci = static_cast<int>(d.curves.size());
        curve_index[id.code()] = ci;
        d.curve_ids.push_back(id);
        d.curves.push_back(s.curve(id));
        for (const Span& sp : spans) raw.push_back({ci, sp});
    }

    // Split pieces at vertices created by other curves ending on them, e.g.
    // a bisector ending on a visibility line that continues through.
    std::vector<std::vector<int>> pieces_of(d.curves.size());
    for (int r = 0; r < static_cast<int>(raw.size()); ++r) pieces_of[raw[r].curve].push_back(r);
    std::vector<std::vector<CurveEvent>> splits(raw.size());
    std::unordered_map<VertexKey, char, VertexKeyHash> seen;
    for (const Raw& r : raw) {
        for (const VertexKey& key : {r.span.klo, r.span.khi}) {
            if (key.type != VertexKey::Type::Pair || !seen.emplace(key, 1).second) continue;
            for (std::int64_t code : {key.u, key.v}) {
                auto it = curve_index.find(code);
                if (it == curve_index.end() || it->second == r.curve) continue;
                int other = it->second;
                bool ends_here = false;
                for (int q : pieces_of[other])
                    if (raw[q].span.klo == key || raw[q].span.khi == key) ends_here = true;
                if (ends_here) continue;
                Vec2 p = d.curves[r.curve].at(key == r.span.klo ? r.span.lo : r.span.hi);
                double t = d.curves[other].param_of(p);
                for (int q : pieces_of[other]) {
                    if (t > raw[q].span.lo && t < raw[q].span.hi) {
                        splits[q].push_back({t, key});
                        break;
                    }
                }
            }
        }
    }

    std::vector<Piece> pieces;
    for (int r = 0; r < static_cast<int>(raw.size()); ++r) {
        const Raw& rw = raw[r];
        auto& cuts = splits[r];
        std::sort(cuts.begin(), cuts.end(), [](const CurveEvent& a, const CurveEvent& b) { return a.t < b.t; });
        double lo = rw.span.lo;
        VertexKey klo = rw.span.klo;
        for (std::size_t c = 0; c <= cuts.size(); ++c) {
            double hi = c < cuts.size() ? cuts[c].t : rw.span.hi;
            VertexKey khi = c < cuts.size() ? cuts[c].key : rw.span.khi;
            pieces.push_back({rw.curve, lo, hi, klo, khi, false, {}, {}});
            lo = hi;
            klo = khi;
        }
    }

    for (Piece& p : pieces) {
        CurveId id = d.curve_ids[p.curve];
        const Curve& c = d.curves[p.curve];
        if (id.type == CurveId::Type::Bisector) {
            int i = id.a, j = id.b;
            if (!c.is_circle) {
                p.left = FaceLabel::nearest(i);
                p.right = FaceLabel::nearest(j);
            } else {
                bool i_heavier = s.w[i] > s.w[j];
                p.left = FaceLabel::nearest(i_heavier ? i : j);
                p.right = FaceLabel::nearest(i_heavier ? j : i);
            }
        } else {
            double t = std::isinf(p.lo) && std::isinf(p.hi) ? 0.0
                       : std::isinf(p.lo)                   ? p.hi - 1.0
                       : std::isinf(p.hi)                   ? p.lo + 1.0
                                                            : 0.5 * (p.lo + p.hi);
            FaceLabel other = s.label_at(c.at(t), id.a);
            FaceLabel own = FaceLabel::nearest(id.a);
            if (s.side[id.a] == Side::Left) {
                p.left = own;
                p.right = other;
            } else {
                p.left = other;
                p.right = own;
            }
        }
    }
    assemble(d, std::move(pieces));
    finish_clip_box(d, s);
    return d;
}

inline void check_common(const SiteSet& sites) {
    if (sites.empty()) throw Error(ErrorCode::InvalidConfig, "empty site set");
    if (sites.has_duplicates()) throw Error(ErrorCode::DuplicateSites, "two sites share a position");
}

inline PlanarDiagram build(const SiteSet& sites, DiagramKind kind, int k, const BuildOptions& opt) {
    check_common(sites);
    EngineSites s = engine_sites(sites, kind, k, opt);
    bool reference = opt.path == BuildOptions::Path::Reference ||
                     (opt.path == BuildOptions::Path::Auto && kind == DiagramKind::OrderKSequence);
    if (kind == DiagramKind::OrderKSequence && !reference)
        throw Error(ErrorCode::InvalidConfig, "order-k sequence diagrams use the arrangement builder");
    int cap = reference ? kReferenceCapacity : kScalableCapacity;
    if (s.n > cap)
        throw Error(ErrorCode::BuilderCapacityExceeded,
                    std::to_string(s.n) + " sites exceed builder capacity " + std::to_string(cap));
    return reference ? build_reference(s) : build_scalable(s);
}

} // namespace detail

inline PlanarDiagram build_standard(const SiteSet& sites, const BuildOptions& opt = {}) {
    return detail::build(sites, DiagramKind::Standard, 1, opt);
}

inline PlanarDiagram build_semi(const SiteSet& sites, const BuildOptions& opt = {}) {
    if (!opt.full_visibility && !sites.has_constraints())
        throw Error(ErrorCode::MissingConstraint, "semi diagram needs a visibility constraint per site");
    return detail::build(sites, DiagramKind::Semi, 1, opt);
}

inline PlanarDiagram build_multiplicative(const SiteSet& sites, const BuildOptions& opt = {}) {
    if (!sites.all_weights_positive()) throw Error(ErrorCode::NonpositiveWeight, "weights must be positive");
    return detail::build(sites, DiagramKind::Multiplicative, 1, opt);
}

inline PlanarDiagram build_order_k_sequence(const SiteSet& sites, int k, const BuildOptions& opt = {}) {
    if (k < 1 || k > sites.size()) throw Error(ErrorCode::KOutOfRange, "k must lie in [1, n]");
    return detail::build(sites, DiagramKind::OrderKSequence, k, opt);
}

/// Adds two far-away sites whose half-planes together cover the plane, so no
/// point is left unseen.
inline SiteSet with_sentinels(const SiteSet& sites) {
    if (!sites.has_constraints()) throw Error(ErrorCode::MissingConstraint, "sentinels need a semi instance");
    Rational xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (std::size_t i = 0; i < sites.positions().size(); ++i) {
        const Point2& p = sites.positions()[i];
        if (i == 0 || p.x < xmin) xmin = p.x;
        if (i == 0 || p.x > xmax) xmax = p.x;
        if (i == 0 || p.y < ymin) ymin = p.y;
        if (i == 0 || p.y > ymax) ymax = p.y;
    }
    Rational extent = std::max(xmax - xmin, ymax - ymin) + 1;
    Rational cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
    auto pos = sites.positions();
    auto w = sites.weights();
    auto cons = *sites.constraints();
    pos.push_back({cx, cy - 100 * extent});
    pos.push_back({cx, cy + 100 * extent});
    w.push_back(1);
    w.push_back(1);
    cons.push_back({Rational(0), Side::Left});
    cons.push_back({Rational(0), Side::Right});
    return SiteSet(std::move(pos), std::move(w), std::move(cons));
}

} // namespace genvor
