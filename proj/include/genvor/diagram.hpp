#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "genvor/geometry.hpp"
#include "genvor/label.hpp"

namespace genvor {

enum class DiagramKind { Standard, Semi, Multiplicative, OrderKSequence };

inline const char* to_string(DiagramKind k) {
    switch (k) {
    case DiagramKind::Standard: return "standard";
    case DiagramKind::Semi: return "semi";
    case DiagramKind::Multiplicative: return "multiplicative";
    case DiagramKind::OrderKSequence: return "orderk";
    }
    return "?";
}

/// Identifies a candidate curve: the bisector of sites a < b, or the
/// visibility line of site a.
struct CurveId {
    enum class Type : std::uint8_t { Bisector, Visibility };
    Type type = Type::Bisector;
    int a = 0;
    int b = -1;

    static CurveId bisector(int i, int j) { return {Type::Bisector, std::min(i, j), std::max(i, j)}; }
    static CurveId visibility(int i) { return {Type::Visibility, i, -1}; }

    std::int64_t code() const {
        return (static_cast<std::int64_t>(type) << 42) | (static_cast<std::int64_t>(a) << 21) |
               static_cast<std::int64_t>(b + 1);
    }
    friend bool operator==(const CurveId&, const CurveId&) = default;
};

/// Combinatorial identity of an arrangement vertex, so that the same point
/// computed from different curve pairs is recognized without snapping.
struct VertexKey {
    enum class Type : std::uint8_t { Infinity, Wrap, Triple, Pair };
    Type type = Type::Infinity;
    std::int64_t u = 0;
    std::int64_t v = 0;
    int index = 0;

    static VertexKey infinity() { return {}; }
    static VertexKey wrap(CurveId c) { return {Type::Wrap, c.code(), 0, 0}; }

    friend bool operator==(const VertexKey&, const VertexKey&) = default;
};

struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const {
        std::uint64_t h = static_cast<std::uint64_t>(k.type) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(k.u) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(k.v) + 0x85EBCA6B27D4EB4Full + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(k.index) + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Key of the index-th (lexicographic) intersection of two curves. Three
/// bisectors through one point equidistant to three sites share a key.
inline VertexKey vertex_key(CurveId c1, CurveId c2, int index) {
    using T = CurveId::Type;
    if (c1.type == T::Bisector && c2.type == T::Bisector) {
        std::array<int, 4> s{c1.a, c1.b, c2.a, c2.b};
        std::sort(s.begin(), s.end());
        auto last = std::unique(s.begin(), s.end());
        if (last - s.begin() == 3) {
            std::int64_t packed = (static_cast<std::int64_t>(s[0]) << 42) | (static_cast<std::int64_t>(s[1]) << 21) | s[2];
            return {VertexKey::Type::Triple, packed, 0, index};
        }
    }
    std::int64_t a = c1.code(), b = c2.code();
    if (a > b) std::swap(a, b);
    return {VertexKey::Type::Pair, a, b, index};
}

struct Rect {
    double xmin = 0, ymin = 0, xmax = 1, ymax = 1;

    bool contains(Vec2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
    bool strictly_contains(Vec2 p) const { return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax; }
    bool intersects(const Rect& o) const {
        return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
    }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }

    static Rect unit() { return {0, 0, 1, 1}; }
};

/// A retained curve piece produced by a builder, before merging.
struct Piece {
    int curve = 0;
    double lo = 0, hi = 0;
    VertexKey klo, khi;
    bool loop = false;
    FaceLabel left, right;
};

struct Vertex {
    enum class Kind : std::uint8_t { Finite, Infinity, LoopAnchor };
    Vec2 pos;
    Kind kind = Kind::Finite;
};

/// A maximal curve piece separating two differently labeled faces. Loops
/// (closed circles without vertices) start and end at a LoopAnchor vertex.
struct Edge {
    int curve = 0;
    double lo = 0, hi = 0;
    int v_lo = -1, v_hi = -1;
    FaceLabel left, right;
};

/// Half-edge 2e runs along edge e in increasing parameter, 2e+1 against it.
/// Faces are traced with the face on the left.
struct HalfEdge {
    int origin = -1;
    int next = -1;
    int cycle = -1;
    int twin(int self) const { return self ^ 1; }
};

struct TopologyStats {
    int vertices = 0;
    int edges = 0;
    int cycles = 0;
    int components = 0;
    int faces = 1;
    bool euler_ok = true;
    bool labels_consistent = true;
};

struct ComplexityReport {
    long finite_vertices = 0;
    int infinity_vertex = 0;
    long edges = 0;
    long faces = 0;
    long total = 0;
    std::optional<Rect> region;

    void finish() { total = finite_vertices + infinity_vertex + edges + faces; }
};

struct PlanarDiagram {
    DiagramKind kind = DiagramKind::Standard;
    int k = 1;
    int site_count = 0;
    std::vector<CurveId> curve_ids;
    std::vector<Curve> curves;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<HalfEdge> half_edges;
    std::vector<FaceLabel> cycle_labels;
    TopologyStats topology;
    /// Euler data of the unmerged arrangement (reference builder only).
    std::optional<TopologyStats> raw_topology;
    Rect clip_box;
    /// Label of the whole plane when there are no edges, or of the single
    /// unbounded face when no edge is unbounded.
    FaceLabel outer_label;
    bool has_unbounded_edges = false;

    const FaceLabel& half_edge_label(int h) const { return (h & 1) ? edges[h >> 1].right : edges[h >> 1].left; }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Direction of a half-edge leaving its origin: (angle, tie-break). At the
// point at infinity the local chart 1/z reverses angles; parallel unbounded
// edges are then ordered by their lateral offset.
inline std::pair<double, double> outgoing_key(const Curve& c, const Edge& e, bool forward, bool at_infinity) {
    if (at_infinity) {
        Vec2 u = forward ? -1.0 * c.d : c.d;
        return {-std::atan2(u.y, u.x), -cross(u, c.p)};
    }
    Vec2 t = forward ? c.tangent(e.lo) : -1.0 * c.tangent(e.hi);
    return {std::atan2(t.y, t.x), 0.0};
}

} // namespace detail

/// Traces the half-edge structure and checks V - E + F = 2 per connected
/// component, where F counts traced boundary cycles.
inline TopologyStats trace_topology(const std::vector<Vertex>& vertices, const std::vector<Edge>& edges,
                                    const std::vector<Curve>& curves, std::vector<HalfEdge>* half_edges_out = nullptr,
                                    std::vector<int>* cycle_first = nullptr) {
    TopologyStats st;
    const int nv = static_cast<int>(vertices.size());
    const int ne = static_cast<int>(edges.size());
    st.vertices = nv;
    st.edges = ne;
    std::vector<HalfEdge> he(2 * ne);
    std::vector<std::vector<int>> out(nv);
    std::vector<std::pair<double, double>> key(2 * ne);
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = edges[e];
        const Curve& c = curves[ed.curve];
        he[2 * e].origin = ed.v_lo;
        he[2 * e + 1].origin = ed.v_hi;
        key[2 * e] = detail::outgoing_key(c, ed, true, vertices[ed.v_lo].kind == Vertex::Kind::Infinity);
        key[2 * e + 1] = detail::outgoing_key(c, ed, false, vertices[ed.v_hi].kind == Vertex::Kind::Infinity);
        out[ed.v_lo].push_back(2 * e);
        out[ed.v_hi].push_back(2 * e + 1);
    }
    std::vector<int> pos_in_ring(2 * ne);
    for (int v = 0; v < nv; ++v) {
        auto& ring = out[v];
        std::sort(ring.begin(), ring.end(), [&](int a, int b) {
            const auto& ka = key[a];
            const auto& kb = key[b];
            if (std::abs(ka.first - kb.first) > 1e-12) return ka.first < kb.first;
            if (ka.second != kb.second) return ka.second < kb.second;
            return a < b;
        });
        for (int i = 0; i < static_cast<int>(ring.size()); ++i) pos_in_ring[ring[i]] = i;
    }
    for (int h = 0; h < 2 * ne; ++h) {
        int t = h ^ 1;
        const auto& ring = out[he[t].origin];
        int deg = static_cast<int>(ring.size());
        he[h].next = ring[(pos_in_ring[t] + deg - 1) % deg];
    }
    detail::UnionFind uf(nv);
    for (const Edge& ed : edges) uf.unite(ed.v_lo, ed.v_hi);
    std::vector<int> comp_v(nv, 0), comp_e(nv, 0), comp_c(nv, 0);
    for (int v = 0; v < nv; ++v) ++comp_v[uf.find(v)];
    for (const Edge& ed : edges) ++comp_e[uf.find(ed.v_lo)];
    int cycles = 0;
    for (int h = 0; h < 2 * ne; ++h) {
        if (he[h].cycle >= 0) continue;
        if (cycle_first) cycle_first->push_back(h);
        for (int g = h; he[g].cycle < 0; g = he[g].next) he[g].cycle = cycles;
        ++comp_c[uf.find(he[h].origin)];
        ++cycles;
    }
    st.cycles = cycles;
    for (int v = 0; v < nv; ++v) {
        if (uf.find(v) != v) continue;
        ++st.components;
        if (comp_v[v] - comp_e[v] + comp_c[v] != 2) st.euler_ok = false;
    }
    st.faces = ne - nv + 1 + st.components;
    if (half_edges_out) *half_edges_out = std::move(he);
    return st;
}

/// Merges pieces that continue the same curve through a degree-two point
/// with unchanged labels, creates vertices and the half-edge structure.
inline void assemble(PlanarDiagram& d, std::vector<Piece> pieces) {
    std::unordered_map<VertexKey, int, VertexKeyHash> degree;
    for (const Piece& p : pieces) {
        if (p.loop) continue;
        ++degree[p.klo];
        ++degree[p.khi];
    }
    const int ncurves = static_cast<int>(d.curves.size());
    std::vector<std::vector<Piece>> by_curve(ncurves);
    for (Piece& p : pieces) by_curve[p.curve].push_back(std::move(p));

    auto mergeable = [&](const Piece& a, const Piece& b) {
        return !a.loop && !b.loop && a.khi == b.klo && a.khi.type != VertexKey::Type::Infinity &&
               degree[a.khi] == 2 && a.left == b.left && a.right == b.right;
    };

    std::vector<Piece> merged;
    for (int c = 0; c < ncurves; ++c) {
        auto& group = by_curve[c];
        if (group.empty()) continue;
        std::sort(group.begin(), group.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
        std::vector<Piece> run;
        for (Piece& p : group) {
            if (!run.empty() && mergeable(run.back(), p)) {
                run.back().hi = p.hi;
                run.back().khi = p.khi;
            } else {
                run.push_back(std::move(p));
            }
        }
        if (d.curves[c].is_circle) {
            if (run.size() == 1 && mergeable(run[0], run[0])) {
                run[0].loop = true;
            } else if (run.size() >= 2 && mergeable(run.back(), run.front())) {
                Piece& first = run.front();
                first.lo = run.back().lo;
                first.klo = run.back().klo;
                first.hi += kTwoPi;
                // keep lo in [0, 2pi)
                if (first.lo >= kTwoPi) {
                    first.lo -= kTwoPi;
                    first.hi -= kTwoPi;
                }
                run.pop_back();
            }
        }
        for (Piece& p : run) merged.push_back(std::move(p));
    }

    d.vertices.clear();
    d.edges.clear();
    d.has_unbounded_edges = false;
    std::unordered_map<VertexKey, int, VertexKeyHash> vertex_of;
    auto vertex_for = [&](const VertexKey& key, const Curve& c, double t) {
        auto [it, fresh] = vertex_of.try_emplace(key, static_cast<int>(d.vertices.size()));
        if (fresh) {
            if (key.type == VertexKey::Type::Infinity)
                d.vertices.push_back({{}, Vertex::Kind::Infinity});
            else
                d.vertices.push_back({c.at(t), Vertex::Kind::Finite});
        }
        return it->second;
    };
    for (Piece& p : merged) {
        const Curve& c = d.curves[p.curve];
        Edge e;
        e.curve = p.curve;
        e.lo = p.lo;
        e.hi = p.hi;
        if (p.loop) {
            e.hi = e.lo + kTwoPi;
            e.v_lo = e.v_hi = static_cast<int>(d.vertices.size());
            d.vertices.push_back({c.at(e.lo), Vertex::Kind::LoopAnchor});
        } else {
            e.v_lo = vertex_for(p.klo, c, p.lo);
            e.v_hi = vertex_for(p.khi, c, p.hi);
            if (!c.is_circle && (std::isinf(p.lo) || std::isinf(p.hi))) d.has_unbounded_edges = true;
        }
        e.left = std::move(p.left);
        e.right = std::move(p.right);
        d.edges.push_back(std::move(e));
    }

    std::vector<int> cycle_first;
    d.topology = trace_topology(d.vertices, d.edges, d.curves, &d.half_edges, &cycle_first);
    d.cycle_labels.clear();
    for (int h : cycle_first) {
        const FaceLabel& lab = d.half_edge_label(h);
        d.cycle_labels.push_back(lab);
        for (int g = d.half_edges[h].next; g != h; g = d.half_edges[g].next)
            if (!(d.half_edge_label(g) == lab)) d.topology.labels_consistent = false;
    }
}

// ---------------------------------------------------------------------------
// Clipping and complexity
// ---------------------------------------------------------------------------

/// Part of an edge inside a rectangle; flags mark ends on the rectangle
/// boundary (as opposed to the edge's own endpoints).
struct ClippedSpan {
    double lo, hi;
    bool lo_on_boundary, hi_on_boundary;
};

inline std::vector<ClippedSpan> clip_to_rect(const Curve& c, double lo, double hi, const Rect& r) {
    std::vector<ClippedSpan> out;
    if (!c.is_circle) {
        double tmin = -std::numeric_limits<double>::infinity();
        double tmax = std::numeric_limits<double>::infinity();
        auto slab = [&](double p, double dir, double a, double b) {
            if (dir == 0.0) return p >= a && p <= b;
            double t1 = (a - p) / dir, t2 = (b - p) / dir;
            if (t1 > t2) std::swap(t1, t2);
            tmin = std::max(tmin, t1);
            tmax = std::min(tmax, t2);
            return true;
        };
        if (!slab(c.p.x, c.d.x, r.xmin, r.xmax) || !slab(c.p.y, c.d.y, r.ymin, r.ymax)) return out;
        double a = std::max(lo, tmin), b = std::min(hi, tmax);
        if (a < b) out.push_back({a, b, tmin > lo, tmax < hi});
        return out;
    }
    // circle: collect boundary crossings inside (lo, hi)
    std::vector<double> cuts;
    auto add_angle = [&](double ang) {
        double t = ang;
        while (t < lo) t += kTwoPi;
        while (t >= lo + kTwoPi) t -= kTwoPi;
        if (t > lo && t < hi) cuts.push_back(t);
    };
    auto vertical = [&](double x) {
        double q = (x - c.p.x) / c.r;
        if (q < -1.0 || q > 1.0) return;
        double a = std::acos(q);
        for (double ang : {a, -a}) {
            double y = c.p.y + c.r * std::sin(ang);
            if (y >= r.ymin && y <= r.ymax) add_angle(ang);
        }
    };
    auto horizontal = [&](double y) {
        double q = (y - c.p.y) / c.r;
        if (q < -1.0 || q > 1.0) return;
        double a = std::asin(q);
        for (double ang : {a, std::numbers::pi - a}) {
            double x = c.p.x + c.r * std::cos(ang);
            if (x >= r.xmin && x <= r.xmax) add_angle(ang);
        }
    };
    vertical(r.xmin);
    vertical(r.xmax);
    horizontal(r.ymin);
    horizontal(r.ymax);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> bounds;
    bounds.push_back(lo);
    bounds.insert(bounds.end(), cuts.begin(), cuts.end());
    bounds.push_back(hi);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        double a = bounds[i], b = bounds[i + 1];
        if (!(a < b)) continue;
        if (!r.contains(c.at(0.5 * (a + b)))) continue;
        bool lo_b = i > 0, hi_b = i + 2 < bounds.size();
        if (!out.empty() && out.back().hi == a && !out.back().hi_on_boundary) {
            out.back().hi = b;
            out.back().hi_on_boundary = hi_b;
        } else {
            out.push_back({a, b, lo_b, hi_b});
        }
    }
    return out;
}

/// Counts under the fixed convention: one point at infinity collects every
/// unbounded edge end; faces are maximal same-label regions.
inline ComplexityReport complexity(const PlanarDiagram& d) {
    ComplexityReport rep;
    for (const Vertex& v : d.vertices) {
        if (v.kind == Vertex::Kind::Finite) ++rep.finite_vertices;
        if (v.kind == Vertex::Kind::Infinity) rep.infinity_vertex = 1;
    }
    rep.edges = static_cast<long>(d.edges.size());
    rep.faces = d.topology.faces;
    rep.finish();
    return rep;
}

/// Counts restricted to a rectangle: vertices strictly inside, edges meeting
/// it, and the connected pieces of (region minus edges). A face that enters
/// the region several times is counted once per piece.
inline ComplexityReport complexity(const PlanarDiagram& d, const Rect& region, const std::vector<int>* candidate_edges = nullptr) {
    ComplexityReport rep;
    rep.region = region;
    const int nv = static_cast<int>(d.vertices.size());
    std::vector<int> node(nv, -1);
    int nodes = 1;  // node 0: region boundary
    long inside_all = 0;
    auto node_of = [&](int v) {
        if (node[v] < 0) node[v] = nodes++;
        return node[v];
    };
    std::vector<std::pair<int, int>> links;
    long spans = 0, crossings = 0;
    auto handle_edge = [&](int ei) {
        const Edge& e = d.edges[ei];
        auto clipped = clip_to_rect(d.curves[e.curve], e.lo, e.hi, region);
        if (clipped.empty()) return;
        ++rep.edges;
        for (const ClippedSpan& s : clipped) {
            ++spans;
            int a = 0, b = 0;
            if (s.lo_on_boundary) ++crossings; else a = node_of(e.v_lo);
            if (s.hi_on_boundary) ++crossings; else b = node_of(e.v_hi);
            links.emplace_back(a, b);
        }
    };
    if (candidate_edges) {
        for (int ei : *candidate_edges) handle_edge(ei);
    } else {
        for (int ei = 0; ei < static_cast<int>(d.edges.size()); ++ei) handle_edge(ei);
    }
    for (int v = 0; v < nv; ++v) {
        if (node[v] < 0) continue;
        ++inside_all;
        if (d.vertices[v].kind == Vertex::Kind::Finite) ++rep.finite_vertices;
    }
    detail::UnionFind uf(nodes);
    for (auto [a, b] : links) uf.unite(a, b);
    int comps = 0;
    for (int i = 0; i < nodes; ++i)
        if (uf.find(i) == i) ++comps;
    long vc = inside_all + crossings + 4;
    long ec = spans + crossings + 4;
    rep.faces = ec - vc + comps;
    rep.finish();
    return rep;
}

} // namespace genvor
