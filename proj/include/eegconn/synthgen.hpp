#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "eegconn/connectivity.hpp"
#include "eegconn/types.hpp"

namespace eegconn {

/// Ground-truth connectivity for one age group: channels joined by a
/// template edge get population correlation ~= edge_strength, all other
/// pairs ~= 0.
struct GroupProfile {
    Group group;
    BinaryGraph base_graph;      // template adjacency; its threshold field is unused
    double edge_strength = 0.9;  // in (0, 1)
    double noise_sigma = 0.05;   // > 0, white observation noise
};

struct SynthConfig {
    std::shared_ptr<const ChannelLayout> layout;
    std::size_t samples = 700;  // T
    std::size_t epochs_per_group = 100;
    std::array<GroupProfile, kNumGroups> profiles;  // indexed by Group
    Stimulus stimulus = Stimulus::A;
    std::uint64_t seed = 0;

    void validate() const;
};

// Preset parameter values (documented constants):
//   high-separation: edge_strength 0.9, noise_sigma 0.05; Y = one triangle
//     per consecutive channel triple, T = first 70% of Y's triangles,
//     M = first 40%.
//   moderate: edge_strength 0.75, noise_sigma 0.2, same templates.
//   chance: edge_strength 0.8, noise_sigma 0.1, all three groups share Y's
//     template (no class signal).
SynthConfig preset_config(const std::string& name,
                          std::shared_ptr<const ChannelLayout> layout, std::size_t samples,
                          std::size_t epochs_per_group, Stimulus stimulus, std::uint64_t seed);

/// Names accepted by preset_config.
const std::vector<std::string>& preset_names();

/// Draws correlated Gaussian epochs per group. The covariance is
/// I + edge_strength * A_template, repaired to positive definite by the
/// smallest delta in {0, 0.01, 0.02, ...} with lambda_min >= 1e-6 and
/// renormalized to unit diagonal; sampling goes through the symmetric matrix
/// square root. Epoch e draws from seed_stream::kEpoch child seed e, so the
/// dataset is identical however many threads generate it.
LabeledDataset generate(const SynthConfig& config);

/// Writes epoch CSVs plus manifest.json under dir (schema of the dataset
/// module) and returns the manifest path. load_manifest round-trips the
/// dataset bit for bit.
std::filesystem::path save(const LabeledDataset& ds, const std::filesystem::path& dir);

}  // namespace eegconn
