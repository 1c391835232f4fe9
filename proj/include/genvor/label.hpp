#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace genvor {

/// What a face of a diagram is labeled with.
struct FaceLabel {
    enum class Kind : std::uint8_t { Nearest, Sequence, NotVisible };

    Kind kind = Kind::NotVisible;
    std::vector<int> ids;

    static FaceLabel nearest(int id) { return {Kind::Nearest, {id}}; }
    static FaceLabel sequence(std::vector<int> ids) { return {Kind::Sequence, std::move(ids)}; }
    static FaceLabel not_visible() { return {Kind::NotVisible, {}}; }

    friend bool operator==(const FaceLabel&, const FaceLabel&) = default;

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(kind);
        for (int id : ids) h = (h ^ static_cast<std::uint64_t>(id + 1)) * 1099511628211ull;
        return h;
    }

    std::string str() const {
        switch (kind) {
        case Kind::NotVisible: return "NotVisible";
        case Kind::Nearest: return "Nearest(" + std::to_string(ids.front()) + ")";
        case Kind::Sequence: {
            std::string s = "Sequence(";
            for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
            return s + ")";
        }
        }
        return "?";
    }
};

} // namespace genvor
