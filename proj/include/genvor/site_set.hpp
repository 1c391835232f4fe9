#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "genvor/geometry.hpp"

namespace genvor {

/// Sites with exact positions, positive weights and optional visibility
/// constraints. Ids are the dense indices [0, size()).
class SiteSet {
public:
    SiteSet() = default;

    explicit SiteSet(std::vector<Point2> positions, std::vector<Rational> weights = {},
                     std::optional<std::vector<VisibilityConstraint>> constraints = std::nullopt)
        : positions_(std::move(positions)), weights_(std::move(weights)), constraints_(std::move(constraints)) {
        if (weights_.empty()) weights_.assign(positions_.size(), Rational(1));
        if (weights_.size() != positions_.size())
            throw Error(ErrorCode::InvalidConfig, "weights and positions differ in length");
        if (constraints_ && constraints_->size() != positions_.size())
            throw Error(ErrorCode::MissingConstraint, "constraint count differs from site count");
        refresh_cache();
    }

    static SiteSet from_doubles(const std::vector<Vec2>& pts, const std::vector<double>& weights = {}) {
        std::vector<Point2> pos;
        pos.reserve(pts.size());
        for (Vec2 p : pts) pos.push_back({exact_rational(p.x), exact_rational(p.y)});
        std::vector<Rational> w;
        for (double x : weights) w.push_back(exact_rational(x));
        return SiteSet(std::move(pos), std::move(w));
    }

    int size() const { return static_cast<int>(positions_.size()); }
    bool empty() const { return positions_.empty(); }

    const std::vector<Point2>& positions() const { return positions_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const std::optional<std::vector<VisibilityConstraint>>& constraints() const { return constraints_; }
    bool has_constraints() const { return constraints_.has_value(); }

    WeightedSite site(int i) const { return {i, positions_[i], weights_[i]}; }
    const VisibilityConstraint& constraint(int i) const { return (*constraints_)[i]; }

    // Cached floating point views used by the builders and oracles.
    Vec2 pos(int i) const { return pos_[i]; }
    double weight(int i) const { return w_[i]; }
    Vec2 direction(int i) const { return dir_[i]; }
    Side side(int i) const { return (*constraints_)[i].side; }
    const std::vector<Vec2>& approx_positions() const { return pos_; }

    SiteSet with_constraints(std::vector<VisibilityConstraint> constraints) const {
        return SiteSet(positions_, weights_, std::move(constraints));
    }
    SiteSet with_weights(std::vector<Rational> weights) const {
        return SiteSet(positions_, std::move(weights), constraints_);
    }
    SiteSet without_constraints() const { return SiteSet(positions_, weights_); }

    bool has_duplicates() const {
        std::set<std::pair<Rational, Rational>> seen;
        for (const auto& p : positions_)
            if (!seen.emplace(p.x, p.y).second) return true;
        return false;
    }

    bool all_weights_positive() const {
        for (const auto& w : weights_)
            if (w <= 0) return false;
        return true;
    }

    bool unit_weights() const {
        for (const auto& w : weights_)
            if (w != weights_.front()) return false;
        return true;
    }

private:
    void refresh_cache() {
        pos_.clear();
        w_.clear();
        dir_.clear();
        for (const auto& p : positions_) pos_.push_back(p.approx());
        for (const auto& w : weights_) w_.push_back(to_double(w));
        if (constraints_)
            for (const auto& c : *constraints_) dir_.push_back(c.direction());
    }

    std::vector<Point2> positions_;
    std::vector<Rational> weights_;
    std::optional<std::vector<VisibilityConstraint>> constraints_;
    std::vector<Vec2> pos_;
    std::vector<double> w_;
    std::vector<Vec2> dir_;
};

} // namespace genvor
