#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surgact/predictor.hpp"
#include "surgact/recognizer.hpp"
#include "surgact/trial.hpp"

namespace surgact {

// Experiment configuration. File format is flat key=value text ('#'
// comments); CLI flags override file values via the same keys.
struct TrainConfig {
    FeatureSelection selection = FeatureSelection::parse("K14");
    Index w_obs = 30;
    Index w_pred = 10;
    Index downsample_factor = 3;
    Index epochs = 20;
    Index batch_size = 10;
    std::uint64_t seed = 42;

    Index d_model = 60;
    Index n_enc = 3;
    Index h_enc = 2;
    Index n_dec = 2;
    Index h_dec = 4;
    Index fc_dim = 10;
    Index d_emb = 16;
    Index ffn_inner = 0;  // 0 means 4 * d_model
    Index tcn_kernel = 5;
    std::vector<Index> tcn_channels = {32, 64};

    double dropout = 0.1;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.98;
    double adam_eps = 1e-9;
    Index warmup_steps = 4000;
    double w_gesture = 1.0;
    double w_traj = 0.01;

    Index pca_components = 16;
    bool traj_delta = true;
    bool train_predictor = true;
    std::string predictor_gesture_source = "ground_truth";  // or "recognized"
    bool measure_latency = true;
    Index latency_warmup = 10;

    Index ffn_dim() const { return ffn_inner > 0 ? ffn_inner : 4 * d_model; }
    Index mem_len() const { return (w_obs + downsample_factor - 1) / downsample_factor; }

    void set(const std::string& key, const std::string& value);  // ConfigError on unknown keys
    void validate() const;
    std::string serialize() const;  // key=value lines, round-trip stable

    RecognizerConfig recognizer_config(Index d_in) const;
    PredictorConfig predictor_config(Index d_in) const;
    LossWeights loss_weights() const { return {w_gesture, w_traj}; }
};

TrainConfig load_config_file(const std::string& path);
TrainConfig parse_config_text(const std::string& text, const std::string& source_name);

// Gesture-id <-> class-index map for the fc_dim-way output head. Built from
// the training labels (ids sorted ascending); persisted with checkpoints.
struct LabelMap {
    std::vector<int> gesture_ids;  // class index -> gesture id

    static LabelMap build(const std::vector<const LabeledTrial*>& trials, Index fc_dim);

    // kUnlabeled and ids unseen at build time map to -1 (masked).
    int to_class(int gesture_id) const;
    int to_gesture(int class_index) const;  // -1 -> kUnlabeled
    Index size() const { return static_cast<Index>(gesture_ids.size()); }

    std::vector<int> classes_of(const std::vector<int>& gesture_labels) const;
    std::vector<int> gestures_of(const std::vector<int>& class_labels) const;
};

}  // namespace surgact
