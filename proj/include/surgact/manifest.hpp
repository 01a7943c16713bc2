#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surgact/trial.hpp"

namespace surgact {

// One dataset manifest entry: trial id, subject id and the files backing it.
// Relative paths are resolved against the manifest's directory.
struct ManifestEntry {
    std::string trial_id;
    std::string subject_id;
    std::string kinematics_path;
    std::string transcript_path;
    std::string context_path;   // optional, empty when absent
    std::string vres_path;
    std::string vspatial_path;
    std::string vseg_path;
};

// Text manifest, one entry per line of whitespace-separated key=value
// tokens: id=, subject=, kin=, transcript=, context=, vres=, vspatial=,
// vseg=. Lines starting with '#' are comments.
std::vector<ManifestEntry> parse_manifest(const std::string& path);

// Raw (pre-fusion) per-trial inputs.
struct RawTrial {
    ManifestEntry entry;
    std::vector<KinematicFrame> kinematics;
    GestureTranscript transcript;
    std::vector<FeatureMatrix> feature_matrices;
};

RawTrial load_raw_trial(const ManifestEntry& entry, const FeatureSelection& sel);
std::vector<RawTrial> load_raw_trials(const std::string& manifest_path, const FeatureSelection& sel);

}  // namespace surgact
