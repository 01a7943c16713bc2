#include "surgact/trial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "surgact/error.hpp"

namespace surgact {

std::string FeatureSelection::to_string() const {
    std::vector<std::string> parts;
    if (kin == KinSubset::K38) parts.push_back("K38");
    if (kin == KinSubset::K14) parts.push_back("K14");
    if (context) parts.push_back("C");
    if (vres) parts.push_back("V_Res");
    if (vspatial) parts.push_back("V_Spatial");
    if (vseg) parts.push_back("V_Seg");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "+";
        out += parts[i];
    }
    return out;
}

FeatureSelection FeatureSelection::parse(const std::string& spec) {
    FeatureSelection sel;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, '+')) {
        // strip whitespace
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.erase(0, 1);
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.pop_back();
        if (token.empty()) continue;
        if (token == "K38" || token == "K14") {
            if (sel.kin != KinSubset::None)
                throw ConfigError("feature selection: K38 and K14 are mutually exclusive");
            sel.kin = token == "K38" ? KinSubset::K38 : KinSubset::K14;
        } else if (token == "C") {
            sel.context = true;
        } else if (token == "V_Res") {
            sel.vres = true;
        } else if (token == "V_Spatial") {
            sel.vspatial = true;
        } else if (token == "V_Seg") {
            sel.vseg = true;
        } else {
            throw ConfigError("feature selection: unknown modality '" + token + "'");
        }
    }
    if (!sel.any()) throw ConfigError("feature selection: empty selection");
    return sel;
}

std::vector<double> fuse(const std::vector<double>& kin, const std::vector<double>& context,
                         const std::vector<double>& vres, const std::vector<double>& vspatial,
                         const std::vector<double>& vseg, const FeatureSelection& sel) {
    if (!sel.any()) throw ConfigError("fuse: empty feature selection");
    std::vector<double> out;
    out.reserve(kin.size() + context.size() + vres.size() + vspatial.size() + vseg.size());
    if (sel.kin != KinSubset::None) out.insert(out.end(), kin.begin(), kin.end());
    if (sel.context) out.insert(out.end(), context.begin(), context.end());
    if (sel.vres) out.insert(out.end(), vres.begin(), vres.end());
    if (sel.vspatial) out.insert(out.end(), vspatial.begin(), vspatial.end());
    if (sel.vseg) out.insert(out.end(), vseg.begin(), vseg.end());
    return out;
}

namespace {

const Mat* find_matrix(const std::vector<FeatureMatrix>& mats, FeatureKind kind) {
    for (const auto& m : mats)
        if (m.kind == kind) return &m.values;
    return nullptr;
}

std::vector<double> matrix_row(const Mat* m, Index t) {
    if (!m) return {};
    return std::vector<double>(m->row(t), m->row(t) + m->cols);
}

}  // namespace

LabeledTrial align_and_label(const std::vector<KinematicFrame>& kin, const GestureTranscript& transcript,
                             const std::vector<FeatureMatrix>& feature_matrices,
                             const FeatureSelection& sel, const PcaBasis* vseg_pca,
                             const std::string& trial_id, const std::string& subject_id) {
    if (!sel.any()) throw ConfigError("align_and_label: empty feature selection");
    const Index frames = static_cast<Index>(kin.size());
    if (frames == 0) throw DataError("align_and_label: no kinematic frames");

    struct Need {
        FeatureKind kind;
        bool wanted;
    };
    const Need needs[] = {{FeatureKind::Context, sel.context},
                          {FeatureKind::VRes, sel.vres},
                          {FeatureKind::VSpatial, sel.vspatial},
                          {FeatureKind::VSeg, sel.vseg}};

    std::vector<FeatureMatrix> aligned;
    for (const auto& need : needs) {
        if (!need.wanted) continue;
        const Mat* m = find_matrix(feature_matrices, need.kind);
        if (!m)
            throw DataError("align_and_label: selection needs " + feature_kind_name(need.kind) +
                            " but no such feature matrix was provided");
        if (m->rows < frames || m->rows > frames + 2)
            throw DataError("align_and_label: " + feature_kind_name(need.kind) + " has " +
                            std::to_string(m->rows) + " frames but kinematics has " +
                            std::to_string(frames));
        FeatureMatrix fm;
        fm.kind = need.kind;
        fm.values = Mat(frames, m->cols);
        std::copy(m->data.begin(), m->data.begin() + frames * m->cols, fm.values.data.begin());
        if (need.kind == FeatureKind::VSeg && vseg_pca) fm.values = pca_transform(*vseg_pca, fm.values);
        aligned.push_back(std::move(fm));
    }

    LabeledTrial trial;
    trial.trial_id = trial_id;
    trial.subject_id = subject_id;
    trial.labels.resize(static_cast<std::size_t>(frames));
    trial.trajectory = Mat(frames, 6);

    const Mat* ctx = find_matrix(aligned, FeatureKind::Context);
    const Mat* vres = find_matrix(aligned, FeatureKind::VRes);
    const Mat* vspa = find_matrix(aligned, FeatureKind::VSpatial);
    const Mat* vseg = find_matrix(aligned, FeatureKind::VSeg);

    for (Index t = 0; t < frames; ++t) {
        const auto& frame = kin[static_cast<std::size_t>(t)];
        auto fused = fuse(select_kinematic_subset(frame, sel.kin), matrix_row(ctx, t), matrix_row(vres, t),
                          matrix_row(vspa, t), matrix_row(vseg, t), sel);
        if (t == 0) trial.features = Mat(frames, static_cast<Index>(fused.size()));
        std::copy(fused.begin(), fused.end(), trial.features.row(t));
        trial.labels[static_cast<std::size_t>(t)] = transcript.label_at(t + 1);
        const auto traj = trajectory_mm(frame);
        std::copy(traj.begin(), traj.end(), trial.trajectory.row(t));
    }
    check_finite(trial.features, "align_and_label features");
    check_finite(trial.trajectory, "align_and_label trajectory");
    return trial;
}

LabeledTrial downsample(const LabeledTrial& trial, Index factor) {
    if (factor < 1) throw ConfigError("downsample: factor must be >= 1");
    if (factor == 1) return trial;
    LabeledTrial out;
    out.trial_id = trial.trial_id;
    out.subject_id = trial.subject_id;
    const Index n = (trial.frames() + factor - 1) / factor;
    out.features = Mat(n, trial.features.cols);
    out.trajectory = Mat(n, trial.trajectory.cols);
    out.labels.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const Index src = i * factor;
        std::copy(trial.features.row(src), trial.features.row(src) + trial.features.cols,
                  out.features.row(i));
        std::copy(trial.trajectory.row(src), trial.trajectory.row(src) + trial.trajectory.cols,
                  out.trajectory.row(i));
        out.labels[static_cast<std::size_t>(i)] = trial.labels[static_cast<std::size_t>(src)];
    }
    return out;
}

WindowBatch tumbling_windows(const LabeledTrial& trial, Index w_obs, Index w_pred, Index factor) {
    if (w_obs < 1) throw ConfigError("tumbling_windows: w_obs must be >= 1");
    if (factor < 1) throw ConfigError("tumbling_windows: factor must be >= 1");
    WindowBatch batch;
    batch.w_obs = w_obs;
    batch.w_pred = w_pred;
    batch.factor = factor;
    const Index T = trial.frames();
    for (Index start = 0; start + w_obs <= T; start += w_obs) {
        if (w_pred > 0) {
            const Index last_pred = start + w_obs + factor * (w_pred - 1);
            if (last_pred >= T) continue;  // lacks the full horizon
        }
        Window w;
        w.start = start;
        w.obs_features = Mat(w_obs, trial.features.cols);
        w.obs_labels.resize(static_cast<std::size_t>(w_obs));
        for (Index t = 0; t < w_obs; ++t) {
            std::copy(trial.features.row(start + t), trial.features.row(start + t) + trial.features.cols,
                      w.obs_features.row(t));
            w.obs_labels[static_cast<std::size_t>(t)] = trial.labels[static_cast<std::size_t>(start + t)];
        }
        // last downsampled observation frame anchors the prediction deltas
        const Index last_obs_ds = start + factor * ((w_obs - 1) / factor);
        w.last_obs_traj = Mat(1, 6);
        std::copy(trial.trajectory.row(last_obs_ds), trial.trajectory.row(last_obs_ds) + 6,
                  w.last_obs_traj.row(0));
        if (w_pred > 0) {
            w.pred_labels.resize(static_cast<std::size_t>(w_pred));
            w.pred_traj = Mat(w_pred, 6);
            for (Index k = 0; k < w_pred; ++k) {
                const Index src = start + w_obs + factor * k;
                w.pred_labels[static_cast<std::size_t>(k)] = trial.labels[static_cast<std::size_t>(src)];
                std::copy(trial.trajectory.row(src), trial.trajectory.row(src) + 6, w.pred_traj.row(k));
            }
        }
        batch.windows.push_back(std::move(w));
    }
    return batch;
}

}  // namespace surgact
