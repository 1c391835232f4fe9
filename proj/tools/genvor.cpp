// genvor: generate instances, build and check diagrams, run experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "genvor/genvor.hpp"

namespace {

using namespace genvor;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kMismatch = 2, kCapacity = 3 };

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Options shared by every subcommand; `config` collects the settings that
/// determine the result, in a fixed order, for the config hash.
struct Run {
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, std::string>> config;

    void note(const std::string& key, const std::string& value) { config.emplace_back(key, value); }

    std::string canonical() const {
        std::string s;
        for (const auto& [k, v] : config) s += k + "=" + v + ";";
        return s;
    }

    std::string hash() const { return fnv1a_hex(canonical()); }

    json meta() const {
        return {{"tool", "genvor"}, {"version", kVersion}, {"seed", seed}, {"config_hash", hash()}, {"config", canonical()}};
    }

    std::string header() const {
        return "genvor " + std::string(kVersion) + " seed=" + std::to_string(seed) + " config_hash=" + hash();
    }
};

void resolve_seed(Run& run) {
    if (const char* env = std::getenv("GENVOR_SEED"); env && *env) {
        char* end = nullptr;
        errno = 0;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || *end != '\0') throw Error(ErrorCode::ParseError, "GENVOR_SEED must be an unsigned integer");
        run.seed = v;
    }
    run.note("seed", std::to_string(run.seed));
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    return out;
}

void write_meta_sidecar(const Run& run, const std::string& path) {
    auto out = open_out(path + ".meta.json");
    out << run.meta().dump(2) << '\n';
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

WeightProfile parse_profile(const std::string& name, const std::string& upper) {
    if (name == "ones") return WeightProfile::all_ones();
    if (name == "interval") return WeightProfile::interval(parse_rational(upper));
    if (name == "geometric") return WeightProfile::geometric();
    throw Error(ErrorCode::InvalidConfig, "unknown weight profile " + name);
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_rational(item));
    if (out.empty()) throw Error(ErrorCode::InvalidConfig, "empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad integer list entry '" + item + "'");
        }
    }
    if (out.empty()) throw Error(ErrorCode::InvalidConfig, "empty list");
    return out;
}

// ---------------------------------------------------------------------------
// Diagram helpers
// ---------------------------------------------------------------------------

struct DiagramFlags {
    std::string kind = "standard";
    int k = 1;
    std::string path = "auto";
    bool full_visibility = false;

    void add(CLI::App* app) {
        app->add_option("--diagram", kind, "standard | semi | multiplicative | orderk")
            ->check(CLI::IsMember({"standard", "semi", "multiplicative", "orderk"}));
        app->add_option("--k", k, "order for orderk diagrams")->check(CLI::PositiveNumber);
        app->add_option("--builder", path, "auto | reference | scalable")
            ->check(CLI::IsMember({"auto", "reference", "scalable"}));
        app->add_flag("--full-visibility", full_visibility, "semi diagram with every site seeing the whole plane");
    }

    void note(Run& run) const {
        run.note("diagram", kind);
        if (kind == "orderk") run.note("k", std::to_string(k));
        run.note("builder", path);
        if (full_visibility) run.note("full_visibility", "1");
    }

    PlanarDiagram build(const SiteSet& sites) const {
        BuildOptions opt;
        opt.path = path == "reference" ? BuildOptions::Path::Reference
                 : path == "scalable"  ? BuildOptions::Path::Scalable
                                       : BuildOptions::Path::Auto;
        opt.full_visibility = full_visibility;
        if (kind == "semi") return build_semi(sites, opt);
        if (kind == "multiplicative") return build_multiplicative(sites, opt);
        if (kind == "orderk") return build_order_k_sequence(sites, k, opt);
        return build_standard(sites, opt);
    }

    /// The site set the oracle should compare against.
    SiteSet oracle_sites(const SiteSet& sites) const {
        return kind == "semi" && full_visibility ? sites.without_constraints() : sites;
    }
};

json curve_json(const Curve& c) {
    if (c.is_circle) return {{"type", "circle"}, {"center", {c.p.x, c.p.y}}, {"radius", c.r}};
    return {{"type", "line"}, {"point", {c.p.x, c.p.y}}, {"direction", {c.d.x, c.d.y}}};
}

json label_json(const FaceLabel& l) {
    if (l.kind == FaceLabel::Kind::NotVisible) return "none";
    return l.ids;
}

json complexity_json(const ComplexityReport& r) {
    return {{"finite_vertices", r.finite_vertices}, {"infinity_vertex", r.infinity_vertex}, {"edges", r.edges},
            {"faces", r.faces}, {"total", r.total}};
}

json diagram_json(const PlanarDiagram& d, const Run& run) {
    json j;
    j["meta"] = run.meta();
    j["kind"] = to_string(d.kind);
    j["k"] = d.k;
    j["sites"] = d.site_count;
    j["complexity"] = complexity_json(complexity(d));
    j["clip_box"] = {d.clip_box.xmin, d.clip_box.ymin, d.clip_box.xmax, d.clip_box.ymax};
    j["euler_ok"] = d.topology.euler_ok;
    json verts = json::array();
    for (const Vertex& v : d.vertices) verts.push_back({v.pos.x, v.pos.y});
    j["vertices"] = std::move(verts);
    json curves = json::array();
    for (const Curve& c : d.curves) curves.push_back(curve_json(c));
    j["curves"] = std::move(curves);
    json edges = json::array();
    for (const Edge& e : d.edges) {
        auto finite = [](double t) { return std::isfinite(t) ? json(t) : json(t > 0 ? "inf" : "-inf"); };
        edges.push_back({{"curve", e.curve}, {"lo", finite(e.lo)}, {"hi", finite(e.hi)}, {"v_lo", e.v_lo},
                         {"v_hi", e.v_hi}, {"left", label_json(e.left)}, {"right", label_json(e.right)}});
    }
    j["edges"] = std::move(edges);
    return j;
}

void write_count_csv(std::ostream& out, const std::string& kind, const PlanarDiagram& d) {
    auto all = complexity(d);
    auto in_u = complexity(d, Rect::unit());
    out << "diagram,n,vertices,edges,faces,total,total_in_U\n";
    out << kind << ',' << d.site_count << ',' << all.finite_vertices + all.infinity_vertex << ',' << all.edges << ','
        << all.faces << ',' << all.total << ',' << in_u.total << '\n';
}

json probe_report_json(const ProbeReport& rep, const Run& run) {
    json j;
    j["meta"] = run.meta();
    j["probes_tested"] = rep.probes_tested;
    j["excluded_near_boundary"] = rep.excluded_near_boundary;
    j["mismatch_count"] = rep.mismatches.size();
    json list = json::array();
    for (std::size_t i = 0; i < rep.mismatches.size() && i < 20; ++i) {
        const auto& m = rep.mismatches[i];
        list.push_back({{"point", {m.point.x, m.point.y}},
                        {"diagram", m.diagram_label ? label_json(*m.diagram_label) : json("undecided")},
                        {"oracle", label_json(m.oracle_label)}});
    }
    j["mismatches"] = std::move(list);
    j["passed"] = rep.passed();
    return j;
}

void write_svg_file(const PlanarDiagram& d, const SiteSet& sites, const std::string& path, const Run& run, int raster) {
    auto out = open_out(path);
    SvgOptions opt;
    opt.raster = raster;
    opt.comment = run.header();
    write_svg(d, sites, out, opt);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct GenFlags {
    std::string model = "uniform";
    int n = 10;
    std::string weights = "ones";
    std::string upper = "4";
    std::string weight_set = "1,2,4";
    std::string output;
};

int cmd_gen(Run& run, const GenFlags& f) {
    run.note("cmd", "gen");
    run.note("model", f.model);
    run.note("n", std::to_string(f.n));
    ModelConfig cfg;
    cfg.n = f.n;
    cfg.seed = run.seed;
    if (f.model == "uniform") {
        cfg.model = Model::UniformLocations;
        cfg.weight_profile = parse_profile(f.weights, f.upper);
        run.note("weights", f.weights);
        if (f.weights == "interval") run.note("upper", f.upper);
    } else if (f.model == "randomside") {
        cfg.model = Model::RandomSide;
        cfg.fixed_geometry = sample_geometry(f.n, mix_seed(run.seed, 0x67656f6dull));
    } else {
        cfg.model = Model::FiniteWeightSet;
        cfg.weight_set = parse_rational_list(f.weight_set);
        run.note("weight_set", f.weight_set);
    }
    Instance inst{f.model, run.seed, sample_instance(cfg)};
    json j = to_json(inst);
    j["meta"] = run.meta();
    if (f.output.empty() || f.output == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        auto out = open_out(f.output);
        out << j.dump(2) << '\n';
    }
    return kOk;
}

struct BuildFlags {
    DiagramFlags diagram;
    std::string input, output, count;
    long probes = 0;
    int raster = 100;
};

int cmd_build(Run& run, const BuildFlags& f) {
    run.note("cmd", "build");
    f.diagram.note(run);
    Instance inst = read_instance(f.input);
    run.note("instance", fnv1a_hex(to_json(inst).dump()));
    PlanarDiagram d = f.diagram.build(inst.sites);
    if (!f.output.empty()) {
        if (ends_with(f.output, ".svg")) {
            write_svg_file(d, inst.sites, f.output, run, f.raster);
        } else {
            auto out = open_out(f.output);
            out << diagram_json(d, run).dump(2) << '\n';
        }
    }
    if (!f.count.empty()) {
        auto out = open_out(f.count);
        write_count_csv(out, f.diagram.kind, d);
        write_meta_sidecar(run, f.count);
    }
    if (f.output.empty() && f.count.empty()) {
        std::cout << "# " << run.header() << '\n';
        write_count_csv(std::cout, f.diagram.kind, d);
    }
    if (f.probes > 0) {
        auto rep = validate(d, f.diagram.oracle_sites(inst.sites), f.probes, run.seed);
        if (!rep.passed()) {
            std::cerr << "validation: " << rep.mismatches.size() << " mismatches\n";
            return kMismatch;
        }
    }
    return kOk;
}

struct ValidateFlags {
    DiagramFlags diagram;
    std::string input, output;
    long probes = 10000;
    bool unit = false;
    std::string against;
};

int cmd_validate(Run& run, const ValidateFlags& f) {
    run.note("cmd", "validate");
    f.diagram.note(run);
    run.note("probes", std::to_string(f.probes));
    if (f.unit) run.note("region", "unit");
    Instance inst = read_instance(f.input);
    run.note("instance", fnv1a_hex(to_json(inst).dump()));
    PlanarDiagram d = f.diagram.build(inst.sites);
    if (!f.against.empty()) {
        run.note("against", f.against);
        if (d.kind == DiagramKind::OrderKSequence)
            throw Error(ErrorCode::InvalidConfig, "--against needs a single-site diagram");
        d.kind = f.against == "semi" ? DiagramKind::Semi
               : f.against == "multiplicative" ? DiagramKind::Multiplicative
                                               : DiagramKind::Standard;
    }
    std::optional<Rect> region;
    if (f.unit) region = Rect::unit();
    auto rep = validate(d, f.diagram.oracle_sites(inst.sites), f.probes, run.seed, region);
    std::string text = probe_report_json(rep, run).dump(2) + "\n";
    if (f.output.empty() || f.output == "-") {
        std::cout << text;
    } else {
        auto out = open_out(f.output);
        out << text;
    }
    return rep.passed() ? kOk : kMismatch;
}

struct CountFlags {
    DiagramFlags diagram;
    std::string input, output;
};

int cmd_count(Run& run, const CountFlags& f) {
    run.note("cmd", "count");
    f.diagram.note(run);
    Instance inst = read_instance(f.input);
    run.note("instance", fnv1a_hex(to_json(inst).dump()));
    PlanarDiagram d = f.diagram.build(inst.sites);
    if (f.output.empty() || f.output == "-") {
        std::cout << "# " << run.header() << '\n';
        write_count_csv(std::cout, f.diagram.kind, d);
    } else {
        auto out = open_out(f.output);
        write_count_csv(out, f.diagram.kind, d);
        write_meta_sidecar(run, f.output);
    }
    return kOk;
}

struct CoverFlags {
    int k = 3;
    long trials = 100000;
    std::string input;
};

int cmd_cover(Run& run, const CoverFlags& f) {
    run.note("cmd", "cover");
    run.note("trials", std::to_string(f.trials));
    if (f.trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be positive");
    FixedGeometry g;
    if (!f.input.empty()) {
        Instance inst = read_instance(f.input);
        run.note("instance", fnv1a_hex(to_json(inst).dump()));
        if (!inst.sites.has_constraints()) throw Error(ErrorCode::InvalidConfig, "cover instance needs lines");
        g.positions = inst.sites.positions();
        for (const auto& c : *inst.sites.constraints()) g.angles.push_back(c.angle);
    } else {
        run.note("k", std::to_string(f.k));
        g = sample_geometry(f.k, mix_seed(run.seed, 0x67656f6dull));
    }
    CoverTrial t = estimate_cover_failure(g, f.trials, run.seed);
    std::cout << "# " << run.header() << '\n';
    std::cout << "k=" << t.k << " trials=" << t.trials << " failures=" << t.failures << " faces=" << t.faces
              << " p_hat=" << fmt9(t.p_hat) << " bound=" << fmt9(to_double(t.bound)) << " ("
              << format_rational(t.bound) << ") se=" << fmt9(t.standard_error())
              << " within_3se=" << (t.within_bound() ? "yes" : "no") << '\n';
    return kOk;
}

struct ScaleFlags {
    std::string model = "randomside";
    std::string weights = "ones";
    std::string upper = "4";
    std::string weight_set = "1,2,4";
    std::string schedule = "16,32,64,128,256";
    int trials = 30;
    int jobs = 1;
    long probes = 0;
    bool fixed_geometry = false;
    bool timing = false;
    std::string output, summary;
};

int cmd_scale(Run& run, const ScaleFlags& f) {
    run.note("cmd", "scale");
    ScalingConfig cfg;
    cfg.model = f.model == "standard"   ? ScalingModel::Standard
              : f.model == "randomside" ? ScalingModel::RandomSide
              : f.model == "finite"     ? ScalingModel::FiniteWeightSet
                                        : ScalingModel::UniformLocations;
    run.note("model", f.model);
    if (cfg.model == ScalingModel::UniformLocations) {
        cfg.profile = parse_profile(f.weights, f.upper);
        run.note("weights", f.weights);
        if (f.weights == "interval") run.note("upper", f.upper);
    }
    if (cfg.model == ScalingModel::FiniteWeightSet) {
        cfg.weight_set = parse_rational_list(f.weight_set);
        run.note("weight_set", f.weight_set);
    }
    cfg.schedule = parse_int_list(f.schedule);
    cfg.trials = f.trials;
    cfg.seed = run.seed;
    cfg.jobs = f.jobs;
    cfg.validate_probes = f.probes;
    cfg.fixed_geometry = f.fixed_geometry;
    cfg.timing = f.timing;
    run.note("schedule", f.schedule);
    run.note("trials", std::to_string(f.trials));
    run.note("probes", std::to_string(f.probes));
    if (f.fixed_geometry) run.note("fixed_geometry", "1");
    if (f.timing) run.note("timing", "1");
    if (f.trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be positive");

    ExperimentRun result = run_scaling(cfg);
    if (f.output.empty() || f.output == "-") {
        std::cout << "# " << run.header() << '\n';
        write_trials_csv(result, std::cout);
    } else {
        auto out = open_out(f.output);
        write_trials_csv(result, out);
        write_meta_sidecar(run, f.output);
    }
    if (!f.summary.empty()) {
        auto out = open_out(f.summary);
        write_summary_csv(result, out);
        write_meta_sidecar(run, f.summary);
    } else if (!f.output.empty() && f.output != "-") {
        std::cout << "# " << run.header() << '\n';
        write_summary_csv(result, std::cout);
    }
    long bad = 0;
    for (const auto& r : result.records) bad += r.mismatches > 0 ? r.mismatches : 0;
    if (bad > 0) {
        std::cerr << "validation: " << bad << " mismatches\n";
        return kMismatch;
    }
    return kOk;
}

struct GridFlags {
    std::string ns = "64,256,1024";
    std::string weights = "geometric";
    std::string upper = "4";
    int trials = 1;
    std::string output;
};

int cmd_gridlocal(Run& run, const GridFlags& f) {
    run.note("cmd", "gridlocal");
    run.note("n", f.ns);
    run.note("weights", f.weights);
    if (f.weights == "interval") run.note("upper", f.upper);
    run.note("trials", std::to_string(f.trials));
    WeightProfile profile = parse_profile(f.weights, f.upper);
    std::ostringstream csv;
    csv << "n,trial,seed,cells,mean,max\n";
    for (int n : parse_int_list(f.ns)) {
        if (n > kScalableCapacity)
            throw Error(ErrorCode::BuilderCapacityExceeded, "n = " + std::to_string(n) + " exceeds builder capacity");
        for (int t = 0; t < f.trials; ++t) {
            ModelConfig mc;
            mc.n = n;
            mc.seed = trial_seed(run.seed, n, t);
            mc.weight_profile = profile;
            PlanarDiagram d = build_multiplicative(sample_instance(mc));
            GridLocalReport rep = grid_local_complexity(d, n);
            csv << n << ',' << t << ',' << mc.seed << ',' << rep.per_cell.size() << ',' << fmt9(rep.mean) << ','
                << rep.max << '\n';
        }
    }
    if (f.output.empty() || f.output == "-") {
        std::cout << "# " << run.header() << '\n' << csv.str();
    } else {
        auto out = open_out(f.output);
        out << csv.str();
        write_meta_sidecar(run, f.output);
    }
    return kOk;
}

struct PruneFlags {
    int n = 200;
    int instances = 1;
    int probes = 1000;
    std::string weights = "interval";
    std::string upper = "4";
    std::string output;
};

int cmd_prune(Run& run, const PruneFlags& f) {
    run.note("cmd", "prune");
    run.note("n", std::to_string(f.n));
    run.note("instances", std::to_string(f.instances));
    run.note("probes", std::to_string(f.probes));
    run.note("weights", f.weights);
    if (f.weights == "interval") run.note("upper", f.upper);
    WeightProfile profile = parse_profile(f.weights, f.upper);
    std::ostringstream csv;
    csv << "instance,sigma_x,sigma_y,kept,pruned,violations\n";
    long violations = 0;
    for (int i = 0; i < f.instances; ++i) {
        ModelConfig mc;
        mc.n = f.n;
        mc.seed = trial_seed(run.seed, f.n, i);
        mc.weight_profile = profile;
        PruneTable table = prune_effectiveness(sample_instance(mc), f.probes, mc.seed);
        for (const auto& row : table.rows)
            csv << i << ',' << fmt9(row.sigma.x) << ',' << fmt9(row.sigma.y) << ',' << row.kept << ',' << row.pruned
                << ',' << row.violations << '\n';
        violations += table.total_violations;
    }
    if (f.output.empty() || f.output == "-") {
        std::cout << "# " << run.header() << '\n' << csv.str();
    } else {
        auto out = open_out(f.output);
        out << csv.str();
        write_meta_sidecar(run, f.output);
        std::cout << "# " << run.header() << "\nviolations=" << violations << '\n';
    }
    return violations == 0 ? kOk : kMismatch;
}

struct RenderFlags {
    DiagramFlags diagram;
    std::string input, output;
    int raster = 100;
};

int cmd_render(Run& run, const RenderFlags& f) {
    run.note("cmd", "render");
    f.diagram.note(run);
    run.note("raster", std::to_string(f.raster));
    Instance inst = read_instance(f.input);
    run.note("instance", fnv1a_hex(to_json(inst).dump()));
    PlanarDiagram d = f.diagram.build(inst.sites);
    write_svg_file(d, inst.sites, f.output, run, f.raster);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"genvor: generalized Voronoi diagrams under random models"};
    app.set_version_flag("--version", std::string(genvor::kVersion));
    app.require_subcommand(1);
    Run run;
    app.add_option("--seed", run.seed, "base seed (GENVOR_SEED overrides)");

    GenFlags gen;
    auto* c_gen = app.add_subcommand("gen", "sample an instance");
    c_gen->add_option("--model", gen.model, "uniform | randomside | finite")
        ->check(CLI::IsMember({"uniform", "randomside", "finite"}));
    c_gen->add_option("--n", gen.n, "number of sites")->check(CLI::PositiveNumber);
    c_gen->add_option("--weights", gen.weights, "ones | interval | geometric")
        ->check(CLI::IsMember({"ones", "interval", "geometric"}));
    c_gen->add_option("--upper", gen.upper, "upper end of the interval profile");
    c_gen->add_option("--weight-set", gen.weight_set, "comma-separated weight set for the finite model");
    c_gen->add_option("-o,--output", gen.output, "instance JSON path");
    c_gen->add_option("--seed", run.seed, "base seed");

    BuildFlags build;
    auto* c_build = app.add_subcommand("build", "build a diagram");
    build.diagram.add(c_build);
    c_build->add_option("-i,--input", build.input, "instance JSON")->required();
    c_build->add_option("-o,--output", build.output, "diagram output (.svg or .json)");
    c_build->add_option("--count", build.count, "complexity CSV path");
    c_build->add_option("--validate", build.probes, "oracle probes to check after building");
    c_build->add_option("--raster", build.raster, "SVG face samples per side")->check(CLI::PositiveNumber);
    c_build->add_option("--seed", run.seed, "probe seed");

    ValidateFlags val;
    auto* c_val = app.add_subcommand("validate", "compare a diagram against the oracle");
    val.diagram.add(c_val);
    c_val->add_option("-i,--input", val.input, "instance JSON")->required();
    c_val->add_option("-o,--output", val.output, "report JSON path");
    c_val->add_option("--probes", val.probes, "number of probes")->check(CLI::NonNegativeNumber);
    c_val->add_flag("--unit", val.unit, "probe the unit square instead of the clip box");
    c_val->add_option("--against", val.against, "check against another diagram kind's oracle")
        ->check(CLI::IsMember({"standard", "semi", "multiplicative"}));
    c_val->add_option("--seed", run.seed, "probe seed");

    CountFlags count;
    auto* c_count = app.add_subcommand("count", "complexity of a diagram");
    count.diagram.add(c_count);
    c_count->add_option("-i,--input", count.input, "instance JSON")->required();
    c_count->add_option("-o,--output", count.output, "CSV path");
    c_count->add_option("--seed", run.seed, "unused; recorded in the header");

    CoverFlags cover;
    auto* c_cover = app.add_subcommand("cover", "estimate the half-plane cover failure probability");
    c_cover->add_option("--k", cover.k, "number of sites")->check(CLI::Range(1, 62));
    c_cover->add_option("--trials", cover.trials, "Monte Carlo trials");
    c_cover->add_option("-i,--input", cover.input, "instance JSON supplying the geometry");
    c_cover->add_option("--seed", run.seed, "base seed");

    ScaleFlags scale;
    auto* c_scale = app.add_subcommand("scale", "complexity scaling experiment");
    c_scale->add_option("--model", scale.model, "standard | randomside | finite | uniform")
        ->check(CLI::IsMember({"standard", "randomside", "finite", "uniform"}));
    c_scale->add_option("--weights", scale.weights, "ones | interval | geometric")
        ->check(CLI::IsMember({"ones", "interval", "geometric"}));
    c_scale->add_option("--upper", scale.upper, "upper end of the interval profile");
    c_scale->add_option("--weight-set", scale.weight_set, "comma-separated weight set");
    c_scale->add_option("--schedule", scale.schedule, "comma-separated n values");
    c_scale->add_option("--trials", scale.trials, "trials per n");
    c_scale->add_option("-j,--jobs", scale.jobs, "worker threads")->check(CLI::PositiveNumber);
    c_scale->add_option("--validate", scale.probes, "oracle probes per diagram");
    c_scale->add_flag("--fixed-geometry", scale.fixed_geometry, "one geometry per n for randomside");
    c_scale->add_flag("--timing", scale.timing, "record wall-clock build time");
    c_scale->add_option("-o,--output", scale.output, "per-trial CSV path");
    c_scale->add_option("--summary", scale.summary, "summary CSV path");
    c_scale->add_option("--seed", run.seed, "base seed");

    GridFlags grid;
    auto* c_grid = app.add_subcommand("gridlocal", "per-grid-cell complexity");
    c_grid->add_option("--n", grid.ns, "comma-separated n values");
    c_grid->add_option("--weights", grid.weights, "ones | interval | geometric")
        ->check(CLI::IsMember({"ones", "interval", "geometric"}));
    c_grid->add_option("--upper", grid.upper, "upper end of the interval profile");
    c_grid->add_option("--trials", grid.trials, "instances per n")->check(CLI::PositiveNumber);
    c_grid->add_option("-o,--output", grid.output, "CSV path");
    c_grid->add_option("--seed", run.seed, "base seed");

    PruneFlags prune;
    auto* c_prune = app.add_subcommand("prune", "dominance prune soundness");
    c_prune->add_option("--n", prune.n, "sites per instance")->check(CLI::PositiveNumber);
    c_prune->add_option("--instances", prune.instances, "number of instances")->check(CLI::PositiveNumber);
    c_prune->add_option("--probes", prune.probes, "probes per grid cell")->check(CLI::NonNegativeNumber);
    c_prune->add_option("--weights", prune.weights, "ones | interval | geometric")
        ->check(CLI::IsMember({"ones", "interval", "geometric"}));
    c_prune->add_option("--upper", prune.upper, "upper end of the interval profile");
    c_prune->add_option("-o,--output", prune.output, "CSV path");
    c_prune->add_option("--seed", run.seed, "base seed");

    RenderFlags render;
    auto* c_render = app.add_subcommand("render", "render a diagram as SVG");
    render.diagram.add(c_render);
    c_render->add_option("-i,--input", render.input, "instance JSON")->required();
    c_render->add_option("-o,--output", render.output, "SVG path")->required();
    c_render->add_option("--raster", render.raster, "face samples per side")->check(CLI::PositiveNumber);
    c_render->add_option("--seed", run.seed, "unused; recorded in the header");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        resolve_seed(run);
        if (*c_gen) return cmd_gen(run, gen);
        if (*c_build) return cmd_build(run, build);
        if (*c_val) return cmd_validate(run, val);
        if (*c_count) return cmd_count(run, count);
        if (*c_cover) return cmd_cover(run, cover);
        if (*c_scale) return cmd_scale(run, scale);
        if (*c_grid) return cmd_gridlocal(run, grid);
        if (*c_prune) return cmd_prune(run, prune);
        if (*c_render) return cmd_render(run, render);
    } catch (const genvor::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == genvor::ErrorCode::BuilderCapacityExceeded ? kCapacity : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
