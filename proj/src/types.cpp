#include "eegconn/types.hpp"

#include <cmath>
#include <unordered_set>

namespace eegconn {

std::string to_token(Group g) {
    switch (g) {
        case Group::Y: return "Y";
        case Group::T: return "T";
        case Group::M: return "M";
    }
    throw ValueError("invalid Group value");
}

std::string to_token(Stimulus s) {
    switch (s) {
        case Stimulus::A: return "A";
        case Stimulus::V: return "V";
        case Stimulus::AV: return "AV";
        case Stimulus::A50V: return "A50V";
        case Stimulus::V50A: return "V50A";
    }
    throw ValueError("invalid Stimulus value");
}

Group parse_group(const std::string& token) {
    if (token == "Y") return Group::Y;
    if (token == "T") return Group::T;
    if (token == "M") return Group::M;
    throw FormatError("unknown group token: '" + token + "'");
}

Stimulus parse_stimulus(const std::string& token) {
    if (token == "A") return Stimulus::A;
    if (token == "V") return Stimulus::V;
    if (token == "AV") return Stimulus::AV;
    if (token == "A50V") return Stimulus::A50V;
    if (token == "V50A") return Stimulus::V50A;
    throw FormatError("unknown stimulus token: '" + token + "'");
}

void ChannelLayout::validate() const {
    if (names.size() < 2) throw ValueError("channel layout needs at least 2 channels");
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty()) throw ValueError("channel name must not be empty");
        if (!seen.insert(name).second) throw ValueError("duplicate channel name: '" + name + "'");
    }
}

std::shared_ptr<const ChannelLayout> ChannelLayout::generic(std::size_t n) {
    ChannelLayout layout;
    layout.names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = "ch";
        if (i + 1 < 10) name += '0';
        name += std::to_string(i + 1);
        layout.names.push_back(std::move(name));
    }
    layout.validate();
    return std::make_shared<const ChannelLayout>(std::move(layout));
}

void EpochMatrix::validate(const std::string& context) const {
    const std::string where = context.empty() ? std::string("epoch") : context;
    if (!layout) throw ValueError(where + ": missing channel layout");
    if (values.rows() < 2) throw ValueError(where + ": epoch needs at least 2 time samples");
    if (values.cols() != layout->count()) {
        throw ValueError(where + ": epoch has " + std::to_string(values.cols()) +
                         " columns, layout has " + std::to_string(layout->count()));
    }
    for (std::size_t i = 0; i < values.rows(); ++i) {
        for (double v : values.row(i)) {
            if (!std::isfinite(v)) throw ValueError(where + ": non-finite value");
        }
    }
}

}  // namespace eegconn
