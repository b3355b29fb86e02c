#include "eegconn/dataset.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

#include <json.hpp>

#include "eegconn/io_util.hpp"
#include "eegconn/parallel.hpp"

namespace eegconn {

namespace {

using nlohmann::json;

// Strips one trailing '\r' so CRLF files load the same as LF files.
std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

EpochMatrix load_epoch_csv(const std::filesystem::path& path,
                           const std::shared_ptr<const ChannelLayout>& layout) {
    const std::string text = read_text_file(path.string());
    const std::string where = path.string();

    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        const std::string_view line = trim_cr({text.data() + start, nl - start});
        if (!line.empty()) lines.push_back(line);
        start = nl + 1;
    }
    if (lines.empty()) throw FormatError(where + ": empty epoch file");

    const auto header = split_csv_line(lines[0]);
    if (header.size() != layout->count()) {
        throw FormatError(where + ": header has " + std::to_string(header.size()) +
                          " channels, manifest declares " + std::to_string(layout->count()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != layout->names[c]) {
            throw FormatError(where + ": header channel " + std::to_string(c + 1) + " is '" +
                              header[c] + "', manifest declares '" + layout->names[c] + "'");
        }
    }

    const std::size_t samples = lines.size() - 1;
    if (samples < 2) throw FormatError(where + ": epoch needs at least 2 sample rows");

    Matrix values(samples, layout->count());
    for (std::size_t r = 0; r < samples; ++r) {
        const std::string row_context = where + ", row " + std::to_string(r + 2);
        const auto fields = split_csv_line(lines[r + 1]);
        if (fields.size() != layout->count()) {
            throw FormatError(row_context + ": has " + std::to_string(fields.size()) +
                              " values, expected " + std::to_string(layout->count()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const double v = parse_double(fields[c], row_context);
            if (!std::isfinite(v)) throw FormatError(row_context + ": non-finite value");
            values(r, c) = v;
        }
    }
    return EpochMatrix{std::move(values), layout};
}

}  // namespace

LabeledDataset load_manifest(const std::filesystem::path& manifest_path) {
    const std::string where = manifest_path.string();
    const std::string text = read_text_file(where);

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(where + ": malformed JSON: " + e.what());
    }

    LabeledDataset ds;
    try {
        auto layout = std::make_shared<ChannelLayout>();
        layout->names = doc.at("channels").get<std::vector<std::string>>();
        layout->validate();
        ds.layout = std::move(layout);
        ds.sampling_rate_hz = doc.value("sampling_rate_hz", 0.0);

        const auto& epochs = doc.at("epochs");
        if (!epochs.is_array() || epochs.empty()) {
            throw FormatError(where + ": 'epochs' must be a non-empty array");
        }

        const std::filesystem::path base = manifest_path.parent_path();
        ds.records.resize(epochs.size());

        // Parse labels up front (cheap, gives stable row numbers in errors),
        // then read the epoch files in parallel.
        std::vector<std::filesystem::path> paths(epochs.size());
        for (std::size_t i = 0; i < epochs.size(); ++i) {
            const std::string entry_context = where + ", epochs[" + std::to_string(i) + "]";
            const auto& entry = epochs.at(i);
            try {
                paths[i] = base / entry.at("path").get<std::string>();
                ds.records[i].label.subject = entry.at("subject").get<std::string>();
                ds.records[i].label.group = parse_group(entry.at("group").get<std::string>());
                ds.records[i].label.stimulus =
                    parse_stimulus(entry.at("stimulus").get<std::string>());
            } catch (const json::exception& e) {
                throw FormatError(entry_context + ": " + e.what());
            } catch (const FormatError& e) {
                throw FormatError(entry_context + ": " + e.what());
            }
        }

        parallel_for(epochs.size(), [&](std::size_t i) {
            ds.records[i].epoch = load_epoch_csv(paths[i], ds.layout);
        });
    } catch (const json::exception& e) {
        throw FormatError(where + ": " + e.what());
    }
    return ds;
}

LabeledDataset filter_by_stimulus(const LabeledDataset& ds, Stimulus s) {
    LabeledDataset out;
    out.layout = ds.layout;
    out.sampling_rate_hz = ds.sampling_rate_hz;
    for (const auto& record : ds.records) {
        if (record.label.stimulus == s) out.records.push_back(record);
    }
    return out;
}

}  // namespace eegconn
