#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "genvor/engine.hpp"
#include "genvor/models.hpp"
#include "genvor/oracle.hpp"
#include "genvor/validate.hpp"

namespace genvor {

// ---------------------------------------------------------------------------
// Cover failure
// ---------------------------------------------------------------------------

/// (k(k+1) + 2) / 2^(k+1), exactly.
inline Rational cover_failure_bound(int k) {
    if (k < 1) throw Error(ErrorCode::InvalidConfig, "k must be at least 1");
    BigInt den = 1;
    den <<= (k + 1);
    return Rational(BigInt(k) * (k + 1) + 2, den);
}

struct CoverTrial {
    int k = 0;
    long trials = 0;
    long failures = 0;
    int faces = 0;
    double p_hat = 0.0;
    Rational bound;

    double standard_error() const { return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials)); }
    bool within_bound(double sigmas = 3.0) const { return p_hat <= to_double(bound) + sigmas * standard_error(); }
};

/// Sign vectors of all faces of the arrangement of the k bounding lines;
/// bit i is set when the face lies on the left of line i. Every face of an
/// arrangement of k >= 2 pairwise non-parallel lines has a vertex on its
/// boundary, and the four quadrants at each vertex are faces, so the
/// vertex quadrants enumerate the faces exactly (rational arithmetic).
inline std::vector<std::uint64_t> cover_face_signs(const FixedGeometry& g) {
    const int k = static_cast<int>(g.positions.size());
    if (k < 1 || k > 62 || static_cast<int>(g.angles.size()) != k)
        throw Error(ErrorCode::InvalidConfig, "cover geometry needs 1..62 sites with one angle each");
    if (k == 1) return {0, 1};
    std::vector<std::array<Rational, 2>> dir(k);
    for (int i = 0; i < k; ++i) dir[i] = VisibilityConstraint{g.angles[i], Side::Left}.exact_direction();
    const auto& s = g.positions;
    std::unordered_set<std::uint64_t> signs;
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            Rational det = dir[a][0] * dir[b][1] - dir[a][1] * dir[b][0];
            if (det == 0) throw Error(ErrorCode::DegenerateGeometry, "parallel bounding lines");
            // s_a + t d_a = s_b + u d_b
            Rational wx = s[b].x - s[a].x, wy = s[b].y - s[a].y;
            Rational t = (wx * dir[b][1] - wy * dir[b][0]) / det;
            Rational vx = s[a].x + t * dir[a][0], vy = s[a].y + t * dir[a][1];
            std::uint64_t base = 0;
            for (int c = 0; c < k; ++c) {
                if (c == a || c == b) continue;
                Rational cr = dir[c][0] * (vy - s[c].y) - dir[c][1] * (vx - s[c].x);
                if (cr == 0) throw Error(ErrorCode::DegenerateGeometry, "three concurrent bounding lines");
                if (cr > 0) base |= std::uint64_t{1} << c;
            }
            for (std::uint64_t q = 0; q < 4; ++q) {
                std::uint64_t m = base;
                if (q & 1) m |= std::uint64_t{1} << a;
                if (q & 2) m |= std::uint64_t{1} << b;
                signs.insert(m);
            }
        }
    }
    std::vector<std::uint64_t> out(signs.begin(), signs.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Monte Carlo estimate of the probability that the sampled closed
/// half-planes miss some point of the plane. Coverage is decided exactly:
/// a face is missed iff every line's visible side excludes it.
inline CoverTrial estimate_cover_failure(const FixedGeometry& g, long trials, std::uint64_t seed) {
    const int k = static_cast<int>(g.positions.size());
    auto faces = cover_face_signs(g);
    const std::uint64_t mask = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    std::vector<char> dense;
    std::unordered_set<std::uint64_t> sparse;
    if (k <= 24) {
        dense.assign(std::size_t{1} << k, 0);
        for (auto f : faces) dense[f] = 1;
    } else {
        sparse.insert(faces.begin(), faces.end());
    }
    CounterRng rng(seed, 0x636f766572ull);
    CoverTrial out;
    out.k = k;
    out.trials = trials;
    out.faces = static_cast<int>(faces.size());
    out.bound = cover_failure_bound(k);
    for (long t = 0; t < trials; ++t) {
        std::uint64_t sides = rng.at(static_cast<std::uint64_t>(t)) & mask;  // bit i set: Left visible
        std::uint64_t missed = ~sides & mask;
        bool fail = k <= 24 ? dense[missed] != 0 : sparse.count(missed) != 0;
        out.failures += fail;
    }
    out.p_hat = static_cast<double>(out.failures) / static_cast<double>(trials);
    return out;
}

/// Exact failure probability by enumerating all 2^k side choices.
inline Rational exact_cover_failure(const FixedGeometry& g) {
    const int k = static_cast<int>(g.positions.size());
    if (k > 24) throw Error(ErrorCode::InvalidConfig, "exhaustive enumeration limited to k <= 24");
    auto faces = cover_face_signs(g);
    std::vector<char> dense(std::size_t{1} << k, 0);
    for (auto f : faces) dense[f] = 1;
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    long fails = 0;
    for (std::uint64_t sides = 0; sides <= mask; ++sides) fails += dense[~sides & mask];
    BigInt den = 1;
    den <<= k;
    return Rational(BigInt(fails), den);
}

// ---------------------------------------------------------------------------
// Scaling runs
// ---------------------------------------------------------------------------

enum class ScalingModel { Standard, RandomSide, FiniteWeightSet, UniformLocations };

inline std::string model_name(ScalingModel m, const WeightProfile& p) {
    switch (m) {
    case ScalingModel::Standard: return "standard";
    case ScalingModel::RandomSide: return "randomside";
    case ScalingModel::FiniteWeightSet: return "finite";
    case ScalingModel::UniformLocations: return "uniform-" + p.name();
    }
    return "?";
}

struct ScalingConfig {
    ScalingModel model = ScalingModel::Standard;
    WeightProfile profile;
    std::vector<Rational> weight_set{1, 2, 4};
    std::vector<int> schedule{16, 32, 64, 128, 256};
    int trials = 30;
    std::uint64_t seed = 1;
    int jobs = 1;
    /// RandomSide: keep one geometry per n instead of resampling per trial.
    bool fixed_geometry = false;
    /// Oracle probes per diagram (0 disables validation).
    long validate_probes = 0;
    /// Record wall-clock time per trial (makes output nondeterministic).
    bool timing = false;
};

struct TrialRecord {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    ComplexityReport all;
    std::optional<ComplexityReport> in_unit;
    double wall_ms = 0.0;
    long mismatches = -1;
    bool euler_ok = true;
    bool labels_consistent = true;

    /// The quantity the model's growth claim is about.
    long measured() const { return in_unit ? in_unit->total : all.total; }
};

struct NSummary {
    int n = 0;
    double mean = 0, var = 0, max = 0;
};

struct ExperimentRun {
    std::string model;
    ScalingConfig config;
    std::vector<TrialRecord> records;
    std::vector<NSummary> summary;
    double slope = 0.0;
};

inline std::uint64_t trial_seed(std::uint64_t base, int n, int trial) {
    return mix_seed(base, static_cast<std::uint64_t>(n) * 1000003ull + static_cast<std::uint64_t>(trial));
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double den = m * sxx - sx * sx;
    return den == 0 ? 0.0 : (m * sxy - sx * sy) / den;
}

inline std::vector<NSummary> summarize(const std::vector<TrialRecord>& records, const std::vector<int>& schedule) {
    std::vector<NSummary> out;
    for (int n : schedule) {
        NSummary s;
        s.n = n;
        std::vector<double> v;
        for (const auto& r : records)
            if (r.n == n) v.push_back(static_cast<double>(r.measured()));
        if (v.empty()) continue;
        double sum = 0;
        s.max = v.front();
        for (double x : v) {
            sum += x;
            s.max = std::max(s.max, x);
        }
        s.mean = sum / v.size();
        double ss = 0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.var = v.size() > 1 ? ss / (v.size() - 1) : 0.0;
        out.push_back(s);
    }
    return out;
}

/// The site set a scaling trial builds its diagram from.
inline SiteSet scaling_instance(const ScalingConfig& cfg, int n, int trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, n, trial);
    ModelConfig mc;
    mc.n = n;
    mc.seed = ts;
    switch (cfg.model) {
    case ScalingModel::Standard:
        mc.model = Model::UniformLocations;
        mc.weight_profile = WeightProfile::all_ones();
        break;
    case ScalingModel::RandomSide:
        mc.model = Model::RandomSide;
        mc.fixed_geometry = sample_geometry(n, cfg.fixed_geometry ? mix_seed(cfg.seed, n) : mix_seed(ts, 1));
        break;
    case ScalingModel::FiniteWeightSet:
        mc.model = Model::FiniteWeightSet;
        mc.weight_set = cfg.weight_set;
        mc.fixed_geometry = FixedGeometry{sample_geometry(n, mix_seed(cfg.seed, n)).positions, {}};
        break;
    case ScalingModel::UniformLocations:
        mc.model = Model::UniformLocations;
        mc.weight_profile = cfg.profile;
        break;
    }
    return sample_instance(mc);
}

inline PlanarDiagram scaling_diagram(const ScalingConfig& cfg, const SiteSet& sites) {
    switch (cfg.model) {
    case ScalingModel::Standard: return build_standard(sites);
    case ScalingModel::RandomSide: return build_semi(sites);
    default: return build_multiplicative(sites);
    }
}

inline bool location_model(ScalingModel m) {
    return m == ScalingModel::Standard || m == ScalingModel::UniformLocations;
}

inline TrialRecord run_trial(const ScalingConfig& cfg, int n, int trial) {
    if (n > kScalableCapacity)
        throw Error(ErrorCode::BuilderCapacityExceeded, "n = " + std::to_string(n) + " exceeds builder capacity");
    TrialRecord rec;
    rec.n = n;
    rec.trial = trial;
    rec.seed = trial_seed(cfg.seed, n, trial);
    SiteSet sites = scaling_instance(cfg, n, trial);
    auto t0 = std::chrono::steady_clock::now();
    PlanarDiagram d = scaling_diagram(cfg, sites);
    auto t1 = std::chrono::steady_clock::now();
    if (cfg.timing) rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.all = complexity(d);
    rec.euler_ok = d.topology.euler_ok;
    rec.labels_consistent = d.topology.labels_consistent;
    std::optional<Rect> region;
    if (location_model(cfg.model)) {
        region = Rect::unit();
        rec.in_unit = complexity(d, *region);
    }
    if (cfg.validate_probes > 0)
        rec.mismatches = static_cast<long>(validate(d, sites, cfg.validate_probes, rec.seed, region).mismatches.size());
    return rec;
}

/// Builds `trials` instances per n. Trials may run concurrently; results
/// are stored by (n, trial) so the output does not depend on `jobs`.
inline ExperimentRun run_scaling(const ScalingConfig& cfg) {
    ExperimentRun run;
    run.model = model_name(cfg.model, cfg.profile);
    run.config = cfg;
    for (int n : cfg.schedule)
        if (n > kScalableCapacity)
            throw Error(ErrorCode::BuilderCapacityExceeded, "n = " + std::to_string(n) + " exceeds builder capacity");
    std::vector<std::pair<int, int>> jobs;
    for (int n : cfg.schedule)
        for (int t = 0; t < cfg.trials; ++t) jobs.emplace_back(n, t);
    run.records.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            try {
                run.records[i] = run_trial(cfg, jobs[i].first, jobs[i].second);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    int nthreads = std::max(1, cfg.jobs);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    run.summary = summarize(run.records, cfg.schedule);
    std::vector<double> xs, ys;
    for (const auto& s : run.summary) {
        xs.push_back(s.n);
        ys.push_back(s.mean);
    }
    run.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
    return run;
}

inline std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline void write_trials_csv(const ExperimentRun& run, std::ostream& out) {
    out << "model,n,trial,seed,vertices,edges,faces,total,total_in_U,wall_ms\n";
    for (const auto& r : run.records) {
        out << run.model << ',' << r.n << ',' << r.trial << ',' << r.seed << ','
            << r.all.finite_vertices + r.all.infinity_vertex << ',' << r.all.edges << ',' << r.all.faces << ','
            << r.all.total << ',' << (r.in_unit ? std::to_string(r.in_unit->total) : std::string("NA")) << ','
            << fmt9(r.wall_ms) << '\n';
    }
}

inline void write_summary_csv(const ExperimentRun& run, std::ostream& out) {
    out << "model,n,mean,var,max,slope\n";
    for (const auto& s : run.summary)
        out << run.model << ',' << s.n << ',' << fmt9(s.mean) << ',' << fmt9(s.var) << ',' << fmt9(s.max) << ','
            << fmt9(run.slope) << '\n';
}

// ---------------------------------------------------------------------------
// Grid locality
// ---------------------------------------------------------------------------

struct GridLocalReport {
    int side = 1;  // cells per side
    std::vector<long> per_cell;
    double mean = 0.0;
    long max = 0;
};

inline int grid_side_for(int n) {
    int s = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (s * s < n) ++s;
    while (s > 1 && (s - 1) * (s - 1) >= n) --s;
    return std::max(1, s);
}

/// Complexity of the diagram inside each cell of a ceil(sqrt n)^2 grid over
/// the unit square (vertices inside, edges and face pieces meeting the cell).
inline GridLocalReport grid_local_complexity(const PlanarDiagram& d, int n) {
    GridLocalReport rep;
    rep.side = grid_side_for(n);
    const int g = rep.side;
    const double h = 1.0 / g;
    std::vector<std::vector<int>> candidates(static_cast<std::size_t>(g) * g);
    const Rect unit = Rect::unit();
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
        const Edge& ed = d.edges[e];
        const Curve& c = d.curves[ed.curve];
        for (const ClippedSpan& sp : clip_to_rect(c, ed.lo, ed.hi, unit)) {
            Vec2 a = c.at(sp.lo), b = c.at(sp.hi);
            Rect bb{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
            if (c.is_circle) {
                for (int q = -4; q <= 8; ++q) {
                    double t = q * 0.5 * std::numbers::pi;
                    if (t > sp.lo && t < sp.hi) {
                        Vec2 p = c.at(t);
                        bb = {std::min(bb.xmin, p.x), std::min(bb.ymin, p.y), std::max(bb.xmax, p.x), std::max(bb.ymax, p.y)};
                    }
                }
            }
            auto idx = [&](double v) { return std::clamp(static_cast<int>(std::floor(v / h)), 0, g - 1); };
            for (int r = idx(bb.ymin - 1e-12); r <= idx(bb.ymax + 1e-12); ++r)
                for (int col = idx(bb.xmin - 1e-12); col <= idx(bb.xmax + 1e-12); ++col) {
                    auto& cand = candidates[static_cast<std::size_t>(r) * g + col];
                    if (cand.empty() || cand.back() != e) cand.push_back(e);
                }
        }
    }
    rep.per_cell.resize(static_cast<std::size_t>(g) * g);
    long sum = 0;
    for (int r = 0; r < g; ++r)
        for (int col = 0; col < g; ++col) {
            Rect cell{col * h, r * h, (col + 1) * h, (r + 1) * h};
            auto idx = static_cast<std::size_t>(r) * g + col;
            long v = complexity(d, cell, &candidates[idx]).total;
            rep.per_cell[idx] = v;
            sum += v;
            rep.max = std::max(rep.max, v);
        }
    rep.mean = static_cast<double>(sum) / static_cast<double>(rep.per_cell.size());
    return rep;
}

// ---------------------------------------------------------------------------
// Prune effectiveness
// ---------------------------------------------------------------------------

struct PruneRow {
    Vec2 sigma;
    int kept = 0;
    int pruned = 0;
    long violations = 0;  // probes in B(sigma, gamma) won by a pruned site
};

struct PruneTable {
    double gamma = 0.0;
    std::vector<PruneRow> rows;
    long total_violations = 0;
    long probes = 0;
};

/// For every grid-cell center sigma, prunes with the dominance test and
/// probes B(sigma, gamma) against the weighted oracle.
inline PruneTable prune_effectiveness(const SiteSet& sites, int probes_per_cell, std::uint64_t seed) {
    PruneTable table;
    const int n = sites.size();
    const int g = grid_side_for(n);
    CounterRng rng(seed, 0x7072756e65ull);
    std::vector<char> is_pruned(n);
    for (int r = 0; r < g; ++r)
        for (int col = 0; col < g; ++col) {
            Point2 sigma{Rational(2 * col + 1, 2 * g), Rational(2 * r + 1, 2 * g)};
            auto ctx = StretchContext::for_instance(sigma, n);
            table.gamma = ctx.gamma;
            auto res = dominance_prune(sites, ctx);
            PruneRow row;
            row.sigma = sigma.approx();
            row.kept = static_cast<int>(res.kept.size());
            row.pruned = static_cast<int>(res.pruned.size());
            std::fill(is_pruned.begin(), is_pruned.end(), 0);
            for (int j : res.pruned) is_pruned[j] = 1;
            for (int p = 0; p < probes_per_cell; ++p) {
                double rad = ctx.gamma * std::sqrt(rng.uniform());
                double ang = kTwoPi * rng.uniform();
                Vec2 x = row.sigma + Vec2{rad * std::cos(ang), rad * std::sin(ang)};
                if (is_pruned[oracle::nearest_weighted_site(x, sites)]) ++row.violations;
                ++table.probes;
            }
            table.total_violations += row.violations;
            table.rows.push_back(row);
        }
    return table;
}

} // namespace genvor
