#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surgact/feature_matrix.hpp"
#include "surgact/kinematics.hpp"
#include "surgact/pca.hpp"
#include "surgact/tensor.hpp"
#include "surgact/transcript.hpp"

namespace surgact {

// Which modalities are fused, and in which canonical order:
// kinematic subset, context, then video kinds (V_Res, V_Spatial, V_Seg).
struct FeatureSelection {
    KinSubset kin = KinSubset::None;
    bool context = false;
    bool vres = false;
    bool vspatial = false;
    bool vseg = false;

    bool any() const { return kin != KinSubset::None || context || vres || vspatial || vseg; }
    std::string to_string() const;
    static FeatureSelection parse(const std::string& spec);  // e.g. "K14+C+V_Spatial"
};

// Deterministic concatenation of the selected modality vectors for one frame.
std::vector<double> fuse(const std::vector<double>& kin, const std::vector<double>& context,
                         const std::vector<double>& vres, const std::vector<double>& vspatial,
                         const std::vector<double>& vseg, const FeatureSelection& sel);

// Aligned per-frame fused features, gesture labels and end-effector
// trajectory targets (millimeters) for one task execution.
struct LabeledTrial {
    std::string trial_id;
    std::string subject_id;
    Mat features;             // T x d_in
    std::vector<int> labels;  // gesture ids per frame; kUnlabeled outside intervals
    Mat trajectory;           // T x 6 (PSM-left xyz, PSM-right xyz), mm

    Index frames() const { return features.rows; }
};

// Fuse the selected modalities frame by frame. Feature matrices may exceed
// the kinematic frame count by at most 2 (they are truncated); anything else
// is an alignment error. When the selection includes V_Seg and a PCA basis
// is given, V_Seg rows are projected before fusion.
LabeledTrial align_and_label(const std::vector<KinematicFrame>& kin, const GestureTranscript& transcript,
                             const std::vector<FeatureMatrix>& feature_matrices,
                             const FeatureSelection& sel, const PcaBasis* vseg_pca = nullptr,
                             const std::string& trial_id = "", const std::string& subject_id = "");

// Keep every factor-th frame starting at index 0, consistently across all
// per-frame arrays.
LabeledTrial downsample(const LabeledTrial& trial, Index factor);

// One observation window plus its paired prediction horizon.
struct Window {
    Index start = 0;             // first observation frame (source rate)
    Mat obs_features;            // W_obs x d_in at the source rate
    std::vector<int> obs_labels; // W_obs gesture ids
    std::vector<int> pred_labels;  // W_pred gesture ids at the downsampled rate
    Mat pred_traj;               // W_pred x 6, mm
    Mat last_obs_traj;           // 1 x 6, trajectory at the last downsampled obs frame
};

struct WindowBatch {
    Index w_obs = 0;
    Index w_pred = 0;
    Index factor = 1;
    std::vector<Window> windows;

    bool empty() const { return windows.empty(); }
};

// Non-overlapping observation windows stepping by w_obs. With w_pred > 0
// each window is paired with the immediately following w_pred prediction
// steps taken every `factor` frames, and windows lacking the full horizon
// are dropped. With w_pred == 0 all full observation windows are kept.
// A trial shorter than one window yields an empty batch.
WindowBatch tumbling_windows(const LabeledTrial& trial, Index w_obs, Index w_pred, Index factor);

}  // namespace surgact
