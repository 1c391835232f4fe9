#pragma once

#include <optional>
#include <vector>

#include "genvor/diagram.hpp"
#include "genvor/locate.hpp"
#include "genvor/oracle.hpp"
#include "genvor/rng.hpp"

namespace genvor {

struct ProbeMismatch {
    Vec2 point;
    std::optional<FaceLabel> diagram_label;
    FaceLabel oracle_label;
};

struct ProbeReport {
    long probes_tested = 0;
    long excluded_near_boundary = 0;
    std::vector<ProbeMismatch> mismatches;

    bool passed() const { return mismatches.empty(); }
};

inline constexpr double kBoundaryExclusion = 1e-7;

/// Ground-truth label for the diagram's kind, straight from the oracle.
inline FaceLabel oracle_label(const PlanarDiagram& d, const SiteSet& sites, Vec2 x) {
    switch (d.kind) {
    case DiagramKind::Standard: return FaceLabel::nearest(oracle::nearest_site(x, sites));
    case DiagramKind::Multiplicative: return FaceLabel::nearest(oracle::nearest_weighted_site(x, sites));
    case DiagramKind::Semi: {
        if (!sites.has_constraints()) return FaceLabel::nearest(oracle::nearest_site(x, sites));
        auto id = oracle::nearest_visible_site(x, sites);
        return id ? FaceLabel::nearest(*id) : FaceLabel::not_visible();
    }
    case DiagramKind::OrderKSequence: return FaceLabel::sequence(oracle::k_nearest_sequence(x, sites, d.k));
    }
    return FaceLabel::not_visible();
}

/// Samples `probes` uniform points in the clip box (or `region`) and compares
/// the diagram's face label with the oracle. Probes within 1e-7 of an edge
/// are skipped. Pass sites without constraints to check a semi diagram built
/// in full-visibility mode.
inline ProbeReport validate(const PlanarDiagram& d, const SiteSet& sites, long probes, std::uint64_t seed,
                            const std::optional<Rect>& region = std::nullopt) {
    Rect box = region.value_or(d.clip_box);
    EdgeLocator locator(d, box, kBoundaryExclusion);
    CounterRng rng(seed, 0x76616c6964617465ull);
    ProbeReport rep;
    for (long i = 0; i < probes; ++i) {
        Vec2 x{box.xmin + rng.uniform() * box.width(), box.ymin + rng.uniform() * box.height()};
        if (locator.near_edge(x, kBoundaryExclusion)) {
            ++rep.excluded_near_boundary;
            continue;
        }
        ++rep.probes_tested;
        auto got = locator.locate(x);
        FaceLabel want = oracle_label(d, sites, x);
        if (!got || !(*got == want)) rep.mismatches.push_back({x, got, std::move(want)});
    }
    return rep;
}

} // namespace genvor
