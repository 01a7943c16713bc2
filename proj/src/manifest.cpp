#include "surgact/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "surgact/error.hpp"

namespace surgact {

namespace fs = std::filesystem;

std::vector<ManifestEntry> parse_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest: " + path);
    const fs::path base = fs::path(path).parent_path();

    auto resolve = [&](const std::string& p) -> std::string {
        if (p.empty()) return p;
        fs::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    std::vector<ManifestEntry> entries;
    std::string line;
    Index lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string token;
        ManifestEntry e;
        bool any = false;
        while (ls >> token) {
            if (token[0] == '#') break;
            const auto eq = token.find('=');
            if (eq == std::string::npos)
                throw DataError(path + ": expected key=value token at line " + std::to_string(lineno));
            const std::string key = token.substr(0, eq);
            const std::string val = token.substr(eq + 1);
            any = true;
            if (key == "id") e.trial_id = val;
            else if (key == "subject") e.subject_id = val;
            else if (key == "kin") e.kinematics_path = resolve(val);
            else if (key == "transcript") e.transcript_path = resolve(val);
            else if (key == "context") e.context_path = resolve(val);
            else if (key == "vres") e.vres_path = resolve(val);
            else if (key == "vspatial") e.vspatial_path = resolve(val);
            else if (key == "vseg") e.vseg_path = resolve(val);
            else
                throw DataError(path + ": unknown manifest key '" + key + "' at line " +
                                std::to_string(lineno));
        }
        if (!any) continue;
        if (e.trial_id.empty() || e.subject_id.empty() || e.kinematics_path.empty() ||
            e.transcript_path.empty())
            throw DataError(path + ": line " + std::to_string(lineno) +
                            " needs id=, subject=, kin= and transcript=");
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw DataError(path + ": empty manifest");
    return entries;
}

RawTrial load_raw_trial(const ManifestEntry& entry, const FeatureSelection& sel) {
    RawTrial raw;
    raw.entry = entry;
    raw.kinematics = parse_kinematics(entry.kinematics_path);
    raw.transcript = parse_transcript(entry.transcript_path);

    auto load_kind = [&](const std::string& p, FeatureKind kind, bool wanted) {
        if (!wanted) return;
        if (p.empty())
            throw DataError("trial " + entry.trial_id + ": selection needs " + feature_kind_name(kind) +
                            " but the manifest provides no file for it");
        FeatureMatrix fm;
        fm.kind = kind;
        fm.values = read_feature_file(p);
        raw.feature_matrices.push_back(std::move(fm));
    };
    load_kind(entry.context_path, FeatureKind::Context, sel.context);
    load_kind(entry.vres_path, FeatureKind::VRes, sel.vres);
    load_kind(entry.vspatial_path, FeatureKind::VSpatial, sel.vspatial);
    load_kind(entry.vseg_path, FeatureKind::VSeg, sel.vseg);
    return raw;
}

std::vector<RawTrial> load_raw_trials(const std::string& manifest_path, const FeatureSelection& sel) {
    std::vector<RawTrial> out;
    for (const auto& e : parse_manifest(manifest_path)) out.push_back(load_raw_trial(e, sel));
    return out;
}

}  // namespace surgact
