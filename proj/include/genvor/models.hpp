#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genvor/rng.hpp"
#include "genvor/site_set.hpp"

namespace genvor {

enum class Model { RandomSide, FiniteWeightSet, UniformLocations };

inline const char* to_string(Model m) {
    switch (m) {
    case Model::RandomSide: return "randomside";
    case Model::FiniteWeightSet: return "finite";
    case Model::UniformLocations: return "uniform";
    }
    return "?";
}

struct WeightProfile {
    enum class Kind { AllOnes, Interval, Geometric, Explicit };
    Kind kind = Kind::AllOnes;
    Rational upper{4};        // Interval: weights uniform in [1, upper]
    int cap_exponent = 20;    // Geometric: w_i = 2^min(i, cap)
    std::vector<Rational> weights;  // Explicit

    static WeightProfile all_ones() { return {}; }
    static WeightProfile interval(Rational c) { return {Kind::Interval, std::move(c), 20, {}}; }
    static WeightProfile geometric(int cap = 20) { return {Kind::Geometric, 4, cap, {}}; }
    static WeightProfile explicit_list(std::vector<Rational> w) { return {Kind::Explicit, 4, 20, std::move(w)}; }

    std::string name() const {
        switch (kind) {
        case Kind::AllOnes: return "ones";
        case Kind::Interval: return "interval";
        case Kind::Geometric: return "geometric";
        case Kind::Explicit: return "explicit";
        }
        return "?";
    }
};

/// Site positions and bounding-line angles held fixed while the model
/// resamples the rest.
struct FixedGeometry {
    std::vector<Point2> positions;
    std::vector<Rational> angles;
};

struct ModelConfig {
    Model model = Model::UniformLocations;
    int n = 0;
    std::optional<std::vector<Rational>> weight_set;
    std::optional<WeightProfile> weight_profile;
    std::optional<FixedGeometry> fixed_geometry;
    std::uint64_t seed = 0;

    void check() const {
        auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidConfig, why); };
        if (n < 1) throw bad("n must be positive");
        switch (model) {
        case Model::RandomSide:
            if (!fixed_geometry || static_cast<int>(fixed_geometry->positions.size()) != n ||
                static_cast<int>(fixed_geometry->angles.size()) != n)
                throw bad("RandomSide needs fixed positions and line angles for all n sites");
            break;
        case Model::FiniteWeightSet:
            if (!weight_set || weight_set->empty()) throw bad("FiniteWeightSet needs a nonempty weight set");
            for (const auto& w : *weight_set)
                if (w <= 0) throw bad("weights must be positive");
            if (fixed_geometry && static_cast<int>(fixed_geometry->positions.size()) != n)
                throw bad("fixed positions must cover all n sites");
            break;
        case Model::UniformLocations:
            if (!weight_profile) throw bad("UniformLocations needs a weight profile");
            if (weight_profile->kind == WeightProfile::Kind::Explicit &&
                static_cast<int>(weight_profile->weights.size()) != n)
                throw bad("explicit weight list must have n entries");
            if (weight_profile->kind == WeightProfile::Kind::Interval && weight_profile->upper < 1)
                throw bad("interval upper bound must be at least 1");
            break;
        }
    }
};

namespace detail {

// Stream tags keep the draws of different quantities independent.
enum : std::uint64_t {
    kStreamPosition = 0x706f73ull,
    kStreamAngle = 0x616e67ull,
    kStreamSide = 0x736964ull,
    kStreamWeight = 0x776774ull,
};

inline constexpr std::int64_t kCoordinateDenominator = 1'000'000'000'000;  // 1e12

inline CounterRng site_stream(std::uint64_t seed, std::uint64_t tag, int site) {
    return CounterRng(seed, mix_seed(tag, static_cast<std::uint64_t>(site)));
}

/// Uniform rational m / 1e12 in [0, 1).
inline Rational uniform_unit(CounterRng& rng) {
    return Rational(static_cast<std::int64_t>(rng.below(kCoordinateDenominator)), kCoordinateDenominator);
}

// floor(pi * 1e12)
inline constexpr std::int64_t kPiScaled = 3'141'592'653'589;

} // namespace detail

/// Position of site i under the uniform-location model; depends only on
/// (seed, i), so prefixes are stable as n grows.
inline Point2 sample_position(std::uint64_t seed, int i) {
    auto rng = detail::site_stream(seed, detail::kStreamPosition, i);
    Rational x = detail::uniform_unit(rng);
    Rational y = detail::uniform_unit(rng);
    return {x, y};
}

/// Line angle in [0, pi) as a rational with twelve decimals.
inline Rational sample_angle(std::uint64_t seed, int i) {
    auto rng = detail::site_stream(seed, detail::kStreamAngle, i);
    return Rational(static_cast<std::int64_t>(rng.below(detail::kPiScaled)), detail::kCoordinateDenominator);
}

inline Side sample_side(std::uint64_t seed, int i) {
    auto rng = detail::site_stream(seed, detail::kStreamSide, i);
    return rng.coin() ? Side::Left : Side::Right;
}

/// Generic geometry: uniform positions in the unit square, uniform angles.
inline FixedGeometry sample_geometry(int n, std::uint64_t seed) {
    FixedGeometry g;
    for (int i = 0; i < n; ++i) {
        g.positions.push_back(sample_position(seed, i));
        g.angles.push_back(sample_angle(seed, i));
    }
    return g;
}

/// Visibility constraint whose visible half-plane has the given outward
/// normal angle (radians, any value): the random-normal variant of the
/// model reduces to a line angle in [0, pi) plus a side.
inline VisibilityConstraint constraint_from_normal(double normal_angle) {
    double a = std::fmod(normal_angle - 0.5 * std::numbers::pi, 2.0 * std::numbers::pi);
    if (a < 0) a += 2.0 * std::numbers::pi;
    if (a < std::numbers::pi) return {exact_rational(a), Side::Left};
    return {exact_rational(a - std::numbers::pi), Side::Right};
}

inline std::vector<Rational> profile_weights(const WeightProfile& p, int n, std::uint64_t seed) {
    std::vector<Rational> w;
    w.reserve(n);
    for (int i = 0; i < n; ++i) {
        switch (p.kind) {
        case WeightProfile::Kind::AllOnes: w.emplace_back(1); break;
        case WeightProfile::Kind::Interval: {
            auto rng = detail::site_stream(seed, detail::kStreamWeight, i);
            w.push_back(1 + (p.upper - 1) * detail::uniform_unit(rng));
            break;
        }
        case WeightProfile::Kind::Geometric: {
            BigInt v = 1;
            v <<= std::min(i, p.cap_exponent);
            w.emplace_back(v);
            break;
        }
        case WeightProfile::Kind::Explicit: w.push_back(p.weights[i]); break;
        }
    }
    return w;
}

/// Draws one instance. RandomSide flips one fair bit per site for the
/// visible side; FiniteWeightSet draws each weight uniformly from the set;
/// UniformLocations draws each position uniformly from the unit square.
inline SiteSet sample_instance(const ModelConfig& cfg) {
    cfg.check();
    const int n = cfg.n;
    switch (cfg.model) {
    case Model::RandomSide: {
        std::vector<VisibilityConstraint> cons;
        for (int i = 0; i < n; ++i) cons.push_back({cfg.fixed_geometry->angles[i], sample_side(cfg.seed, i)});
        return SiteSet(cfg.fixed_geometry->positions, {}, std::move(cons));
    }
    case Model::FiniteWeightSet: {
        std::vector<Point2> pos;
        if (cfg.fixed_geometry)
            pos = cfg.fixed_geometry->positions;
        else
            for (int i = 0; i < n; ++i) pos.push_back(sample_position(cfg.seed, i));
        std::vector<Rational> w;
        const auto& set = *cfg.weight_set;
        for (int i = 0; i < n; ++i) {
            auto rng = detail::site_stream(cfg.seed, detail::kStreamWeight, i);
            w.push_back(set[rng.below(set.size())]);
        }
        return SiteSet(std::move(pos), std::move(w));
    }
    case Model::UniformLocations: {
        std::vector<Point2> pos;
        for (int i = 0; i < n; ++i) pos.push_back(sample_position(cfg.seed, i));
        return SiteSet(std::move(pos), profile_weights(*cfg.weight_profile, n, cfg.seed));
    }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown model");
}

// ---------------------------------------------------------------------------
// Stretched sites and the dominance prune
// ---------------------------------------------------------------------------

struct StretchContext {
    Point2 sigma;
    double gamma = 0.0;

    /// gamma = sqrt(1 / (2n)).
    static StretchContext for_instance(Point2 sigma, int n) {
        return {std::move(sigma), std::sqrt(1.0 / (2.0 * n))};
    }
};

inline Rational min_weight(const SiteSet& sites) {
    Rational m = sites.weights().front();
    for (const auto& w : sites.weights()) m = std::min(m, w);
    return m;
}

/// Moves each site along the ray from sigma to distance w * |s - sigma|,
/// with weights divided by the smallest one. Exact in rationals.
inline std::vector<Point2> stretch(const SiteSet& sites, const StretchContext& ctx) {
    const Rational wmin = min_weight(sites);
    std::vector<Point2> out;
    out.reserve(sites.size());
    for (int i = 0; i < sites.size(); ++i) {
        const Point2& s = sites.positions()[i];
        if (s == ctx.sigma) throw Error(ErrorCode::SiteAtSigma, "site " + std::to_string(i) + " coincides with sigma");
        Rational w = sites.weights()[i] / wmin;
        out.push_back({ctx.sigma.x + w * (s.x - ctx.sigma.x), ctx.sigma.y + w * (s.y - ctx.sigma.y)});
    }
    return out;
}

struct PruneResult {
    std::vector<int> kept;
    std::vector<int> pruned;
};

/// Site j is pruned when some other site i has w_i (d_i + gamma) <
/// w_j (d_j - gamma), d measured to sigma: then j is beaten everywhere in
/// the ball B(sigma, gamma).
inline PruneResult dominance_prune(const SiteSet& sites, const StretchContext& ctx) {
    const double wmin = to_double(min_weight(sites));
    const Vec2 sigma = ctx.sigma.approx();
    const int n = sites.size();
    std::vector<double> far(n), near(n);
    int best = -1, second = -1;
    for (int i = 0; i < n; ++i) {
        double w = sites.weight(i) / wmin;
        double d = norm(sites.pos(i) - sigma);
        far[i] = w * (d + ctx.gamma);
        near[i] = w * (d - ctx.gamma);
        if (best < 0 || far[i] < far[best]) {
            second = best;
            best = i;
        } else if (second < 0 || far[i] < far[second]) {
            second = i;
        }
    }
    PruneResult out;
    for (int j = 0; j < n; ++j) {
        int i = j == best ? second : best;
        if (i >= 0 && far[i] < near[j])
            out.pruned.push_back(j);
        else
            out.kept.push_back(j);
    }
    return out;
}

} // namespace genvor
