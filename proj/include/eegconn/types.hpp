#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "eegconn/errors.hpp"
#include "eegconn/matrix.hpp"

namespace eegconn {

/// Age group of a participant.
enum class Group { Y = 0, T = 1, M = 2 };
constexpr std::size_t kNumGroups = 3;
constexpr std::array<Group, kNumGroups> kAllGroups = {Group::Y, Group::T, Group::M};

/// Stimulus condition an epoch was recorded under. A50V = audio leads the
/// visual stimulus by 50 ms, V50A = audio lags by 50 ms.
enum class Stimulus { A = 0, V = 1, AV = 2, A50V = 3, V50A = 4 };
constexpr std::size_t kNumStimuli = 5;
constexpr std::array<Stimulus, kNumStimuli> kAllStimuli = {
    Stimulus::A, Stimulus::V, Stimulus::AV, Stimulus::A50V, Stimulus::V50A};

std::string to_token(Group g);
std::string to_token(Stimulus s);
Group parse_group(const std::string& token);
Stimulus parse_stimulus(const std::string& token);

/// Ordered, unique channel names. The electrode cap of the reference setup
/// has 31 channels but any count >= 2 is accepted.
struct ChannelLayout {
    std::vector<std::string> names;

    std::size_t count() const { return names.size(); }

    /// Throws ValueError if names are empty, fewer than 2, or not unique.
    void validate() const;

    /// Layout with placeholder names ch01..chNN, for graphs that do not come
    /// from a recording.
    static std::shared_ptr<const ChannelLayout> generic(std::size_t n);

    bool operator==(const ChannelLayout&) const = default;
};

struct EpochLabel {
    Group group;
    Stimulus stimulus;
    std::string subject;

    bool operator==(const EpochLabel&) const = default;
};

/// One stimulus epoch: T x C amplitudes, rows = time samples, columns =
/// channels in layout order.
struct EpochMatrix {
    Matrix values;
    std::shared_ptr<const ChannelLayout> layout;

    std::size_t samples() const { return values.rows(); }
    std::size_t channels() const { return values.cols(); }

    /// Enforces T >= 2, finite values and column count == layout count.
    /// `context` is prefixed to error messages (typically the file path).
    void validate(const std::string& context = {}) const;
};

struct LabeledRecord {
    EpochMatrix epoch;
    EpochLabel label;
};

/// In-memory dataset: all epochs share one layout. Immutable after
/// construction and safe to share across threads.
struct LabeledDataset {
    std::shared_ptr<const ChannelLayout> layout;
    double sampling_rate_hz = 0.0;  // metadata only, echoed into reports
    std::vector<LabeledRecord> records;

    std::size_t size() const { return records.size(); }
};

}  // namespace eegconn
