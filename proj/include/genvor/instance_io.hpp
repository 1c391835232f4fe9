#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "genvor/site_set.hpp"

namespace genvor {

/// An instance file: sites, weights, optional visibility lines, and the
/// model and seed that produced it. Rationals travel as decimal strings
/// ("p/q" when the decimal does not terminate), so round trips are exact.
struct Instance {
    std::string model = "manual";
    std::uint64_t seed = 0;
    SiteSet sites;
};

inline nlohmann::json to_json(const Instance& inst) {
    using nlohmann::json;
    json j;
    j["model"] = inst.model;
    j["seed"] = inst.seed;
    json sites = json::array();
    for (const Point2& p : inst.sites.positions()) sites.push_back({format_rational(p.x), format_rational(p.y)});
    j["sites"] = std::move(sites);
    json weights = json::array();
    for (const Rational& w : inst.sites.weights()) weights.push_back(format_rational(w));
    j["weights"] = std::move(weights);
    json lines = json::array();
    if (inst.sites.has_constraints())
        for (const auto& c : *inst.sites.constraints())
            lines.push_back({{"angle", format_rational(c.angle)}, {"side", static_cast<int>(c.side)}});
    j["lines"] = std::move(lines);
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    auto fail = [](const std::string& why) { return Error(ErrorCode::ParseError, "instance: " + why); };
    auto rational_of = [&](const nlohmann::json& v) {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        throw fail("rational values must be strings or integers");
    };
    try {
        Instance inst;
        if (j.contains("model")) inst.model = j.at("model").get<std::string>();
        if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
        std::vector<Point2> pos;
        for (const auto& p : j.at("sites")) {
            if (!p.is_array() || p.size() != 2) throw fail("site must be [x, y]");
            pos.push_back({rational_of(p[0]), rational_of(p[1])});
        }
        std::vector<Rational> weights;
        if (j.contains("weights"))
            for (const auto& w : j.at("weights")) weights.push_back(rational_of(w));
        std::optional<std::vector<VisibilityConstraint>> cons;
        if (j.contains("lines") && !j.at("lines").empty()) {
            cons.emplace();
            for (const auto& l : j.at("lines")) {
                int side = l.at("side").get<int>();
                if (side != 0 && side != 1) throw fail("side must be 0 or 1");
                cons->push_back({rational_of(l.at("angle")), static_cast<Side>(side)});
            }
        }
        inst.sites = SiteSet(std::move(pos), std::move(weights), std::move(cons));
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw fail(e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        throw fail(e.what());
    }
}

inline Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    return instance_from_json(j);
}

inline void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    out << to_json(inst).dump(2) << '\n';
}

} // namespace genvor
