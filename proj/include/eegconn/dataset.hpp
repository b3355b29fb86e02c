#pragma once

#include <filesystem>
#include <string>

#include "eegconn/types.hpp"

namespace eegconn {

// On-disk dataset format
// ----------------------
// manifest.json:
//   {"channels": ["Fp1", ...],
//    "sampling_rate_hz": 500,
//    "epochs": [{"path": "epochs/ep000001.csv", "subject": "S01",
//                "group": "Y", "stimulus": "A"}, ...]}
// Epoch paths are relative to the manifest's directory. Each epoch CSV starts
// with the channel names joined by commas, followed by T rows of C decimal
// floats.

/// Loads a manifest and every epoch it references. Epoch files are read in
/// parallel; record order equals manifest order.
///
/// Throws IoError if a file is missing or unreadable, FormatError for
/// malformed JSON/CSV, channel mismatches, non-finite values or unknown
/// group/stimulus tokens. Messages name the offending file and row.
LabeledDataset load_manifest(const std::filesystem::path& manifest_path);

/// Keeps only records whose stimulus equals s, preserving order. The result
/// may be empty.
LabeledDataset filter_by_stimulus(const LabeledDataset& ds, Stimulus s);

}  // namespace eegconn
