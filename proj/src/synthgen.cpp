#include "eegconn/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "eegconn/io_util.hpp"
#include "eegconn/parallel.hpp"
#include "eegconn/rng.hpp"

namespace eegconn {

namespace {

constexpr double kMinEigenvalue = 1e-6;
constexpr double kRepairStep = 0.01;
constexpr double kRepairCap = 8.0;

// Triangle templates over consecutive channel triples. Y uses all of them,
// T and M nested prefixes, so the group edge counts are ordered Y > T > M.
BinaryGraph triangles_template(const std::shared_ptr<const ChannelLayout>& layout,
                               double fraction) {
    const std::size_t channels = layout->count();
    const std::size_t total = channels / 3;
    const std::size_t used =
        std::min(total, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total))));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t t = 0; t < used; ++t) {
        const std::size_t a = 3 * t, b = 3 * t + 1, c = 3 * t + 2;
        edges.emplace_back(a, b);
        edges.emplace_back(a, c);
        edges.emplace_back(b, c);
    }
    return BinaryGraph::from_edges(channels, edges, 0.5, layout);
}

/// Symmetric square root of the repaired, unit-diagonal covariance implied
/// by a group profile.
Matrix covariance_sqrt(const GroupProfile& profile, std::size_t channels) {
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(channels, channels);
    for (const auto& [i, j] : profile.base_graph.edges()) {
        sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = profile.edge_strength;
        sigma(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = profile.edge_strength;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
    const double lambda_min = solver.eigenvalues().minCoeff();
    double delta = 0.0;
    while (lambda_min + delta < kMinEigenvalue) {
        delta += kRepairStep;
        if (delta > kRepairCap) {
            throw ValueError("covariance for group " + to_token(profile.group) +
                             " is not positive definite within the repair bound");
        }
    }
    if (delta > 0.0) {
        // Unit-diagonal renormalization: diag(sigma + delta I) = 1 + delta
        // uniformly, so the repair is a single rescale.
        sigma = (sigma + delta * Eigen::MatrixXd::Identity(channels, channels)) / (1.0 + delta);
        solver.compute(sigma);
    }

    Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd sqrt_sigma =
        solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().transpose();

    Matrix out(channels, channels);
    for (std::size_t i = 0; i < channels; ++i) {
        for (std::size_t j = 0; j < channels; ++j) {
            out(i, j) = sqrt_sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

}  // namespace

void SynthConfig::validate() const {
    if (!layout) throw ValueError("synth config needs a channel layout");
    layout->validate();
    if (samples < 8) throw ValueError("samples per epoch must be >= 8");
    if (epochs_per_group < 1) throw ValueError("epochs_per_group must be >= 1");
    for (Group g : kAllGroups) {
        const GroupProfile& profile = profiles[static_cast<std::size_t>(g)];
        if (profile.group != g) throw ValueError("profiles must be indexed by group");
        if (profile.base_graph.num_nodes() != layout->count()) {
            throw ValueError("template graph size does not match layout");
        }
        if (!(profile.edge_strength > 0.0 && profile.edge_strength < 1.0)) {
            throw ValueError("edge_strength must lie strictly between 0 and 1");
        }
        if (!(profile.noise_sigma > 0.0)) throw ValueError("noise_sigma must be > 0");
    }
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"high-separation", "moderate", "chance"};
    return names;
}

SynthConfig preset_config(const std::string& name,
                          std::shared_ptr<const ChannelLayout> layout, std::size_t samples,
                          std::size_t epochs_per_group, Stimulus stimulus, std::uint64_t seed) {
    double strength = 0.0, noise = 0.0;
    bool identical_templates = false;
    if (name == "high-separation") {
        strength = 0.9;
        noise = 0.05;
    } else if (name == "moderate") {
        strength = 0.75;
        noise = 0.2;
    } else if (name == "chance") {
        strength = 0.8;
        noise = 0.1;
        identical_templates = true;
    } else {
        throw ValueError("unknown preset: '" + name + "'");
    }

    const std::array<double, kNumGroups> fractions = {1.0, 0.7, 0.4};
    SynthConfig config{
        layout,
        samples,
        epochs_per_group,
        {GroupProfile{Group::Y, triangles_template(layout, 1.0), strength, noise},
         GroupProfile{Group::T,
                      triangles_template(layout, identical_templates ? 1.0 : fractions[1]),
                      strength, noise},
         GroupProfile{Group::M,
                      triangles_template(layout, identical_templates ? 1.0 : fractions[2]),
                      strength, noise}},
        stimulus,
        seed};
    return config;
}

LabeledDataset generate(const SynthConfig& config) {
    config.validate();
    const std::size_t channels = config.layout->count();
    const std::size_t samples = config.samples;

    std::array<Matrix, kNumGroups> sqrt_sigma;
    for (Group g : kAllGroups) {
        const auto& profile = config.profiles[static_cast<std::size_t>(g)];
        sqrt_sigma[static_cast<std::size_t>(g)] = covariance_sqrt(profile, channels);
    }

    LabeledDataset ds;
    ds.layout = config.layout;
    ds.sampling_rate_hz = 500.0;
    ds.records.resize(kNumGroups * config.epochs_per_group);

    parallel_for(ds.records.size(), [&](std::size_t e) {
        const Group group = static_cast<Group>(e / config.epochs_per_group);
        const std::size_t within = e % config.epochs_per_group;
        const GroupProfile& profile = config.profiles[static_cast<std::size_t>(group)];
        const Matrix& root = sqrt_sigma[static_cast<std::size_t>(group)];

        Rng rng(derive_seed(config.seed, seed_stream::kEpoch, e));
        Matrix z(samples, channels);
        for (double& value : z.storage()) value = rng.normal();

        Matrix x(samples, channels);
        for (std::size_t t = 0; t < samples; ++t) {
            const auto zrow = z.row(t);
            auto xrow = x.row(t);
            for (std::size_t j = 0; j < channels; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i < channels; ++i) acc += zrow[i] * root(i, j);
                xrow[j] = acc;
            }
        }
        for (double& value : x.storage()) value += profile.noise_sigma * rng.normal();

        // Five synthetic subjects per group, matching the recording scale.
        std::string subject = to_token(group) + "0";
        subject += static_cast<char>('1' + within % 5);

        ds.records[e].epoch = EpochMatrix{std::move(x), config.layout};
        ds.records[e].label = EpochLabel{group, config.stimulus, std::move(subject)};
    });
    return ds;
}

std::filesystem::path save(const LabeledDataset& ds, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir / "epochs", ec);
    if (ec) throw IoError("cannot create directory: " + (dir / "epochs").string() + ": " +
                          ec.message());

    std::vector<std::string> rel_paths(ds.records.size());
    for (std::size_t e = 0; e < ds.records.size(); ++e) {
        std::ostringstream name;
        name << "epochs/ep";
        name.fill('0');
        name.width(6);
        name << e + 1;
        name << ".csv";
        rel_paths[e] = name.str();
    }

    parallel_for(ds.records.size(), [&](std::size_t e) {
        const Matrix& values = ds.records[e].epoch.values;
        std::string out;
        out.reserve(values.rows() * values.cols() * 20);
        for (std::size_t c = 0; c < ds.layout->count(); ++c) {
            if (c) out += ',';
            out += ds.layout->names[c];
        }
        out += '\n';
        for (std::size_t t = 0; t < values.rows(); ++t) {
            const auto row = values.row(t);
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += format_double(row[c]);
            }
            out += '\n';
        }
        write_text_file((dir / rel_paths[e]).string(), out);
    });

    nlohmann::ordered_json manifest;
    manifest["channels"] = ds.layout->names;
    manifest["sampling_rate_hz"] = ds.sampling_rate_hz;
    auto epochs = nlohmann::ordered_json::array();
    for (std::size_t e = 0; e < ds.records.size(); ++e) {
        const EpochLabel& label = ds.records[e].label;
        epochs.push_back({{"path", rel_paths[e]},
                          {"subject", label.subject},
                          {"group", to_token(label.group)},
                          {"stimulus", to_token(label.stimulus)}});
    }
    manifest["epochs"] = std::move(epochs);

    const fs::path manifest_path = dir / "manifest.json";
    write_text_file(manifest_path.string(), manifest.dump(2) + "\n");
    return manifest_path;
}

}  // namespace eegconn
