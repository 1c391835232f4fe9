#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "genvor/label.hpp"
#include "genvor/site_set.hpp"

/// Brute-force ground truth. Every query is a plain linear scan over the
/// sites; ties go to the lowest id.
namespace genvor::oracle {

inline int nearest_site(Vec2 x, const SiteSet& sites) {
    int best = 0;
    double best_d = norm2(x - sites.pos(0));
    for (int i = 1; i < sites.size(); ++i) {
        double d = norm2(x - sites.pos(i));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

/// Sites without constraints see the whole plane.
inline std::optional<int> nearest_visible_site(Vec2 x, const SiteSet& sites) {
    std::optional<int> best;
    double best_d = 0.0;
    const bool bounded = sites.has_constraints();
    for (int i = 0; i < sites.size(); ++i) {
        if (bounded && !visible(x, sites.pos(i), sites.direction(i), sites.side(i))) continue;
        double d = norm2(x - sites.pos(i));
        if (!best || d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

inline int nearest_weighted_site(Vec2 x, const SiteSet& sites) {
    int best = 0;
    double best_d = sites.weight(0) * norm(x - sites.pos(0));
    for (int i = 1; i < sites.size(); ++i) {
        double d = sites.weight(i) * norm(x - sites.pos(i));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

inline std::vector<int> k_nearest_sequence(Vec2 x, const SiteSet& sites, int k) {
    if (k < 1 || k > sites.size()) throw Error(ErrorCode::KOutOfRange, "k must lie in [1, n]");
    std::vector<int> ids(sites.size());
    for (int i = 0; i < sites.size(); ++i) ids[i] = i;
    std::stable_sort(ids.begin(), ids.end(),
                     [&](int a, int b) { return norm2(x - sites.pos(a)) < norm2(x - sites.pos(b)); });
    ids.resize(k);
    return ids;
}

// Point2 conveniences.
inline int nearest_site(const Point2& x, const SiteSet& s) { return nearest_site(x.approx(), s); }
inline std::optional<int> nearest_visible_site(const Point2& x, const SiteSet& s) {
    return nearest_visible_site(x.approx(), s);
}
inline int nearest_weighted_site(const Point2& x, const SiteSet& s) { return nearest_weighted_site(x.approx(), s); }

} // namespace genvor::oracle
