#pragma once

#include <string>
#include <vector>

#include "surgact/metrics.hpp"
#include "surgact/tensor.hpp"

namespace surgact {

struct RecognitionMetrics {
    double frame_acc = 0.0;
    double window_majority_acc = 0.0;
    double edit = 0.0;
    double f1_10 = 0.0;
    double f1_25 = 0.0;
    double f1_50 = 0.0;
};

struct PredictionMetrics {
    double frame_acc = 0.0;
    double edit = 0.0;
    double f1_10 = 0.0;
    double f1_25 = 0.0;
    double f1_50 = 0.0;
};

// One LOUO fold's evaluation: recognition metrics, prediction metrics under
// both gesture sources, end-to-end trajectory errors and latency.
struct FoldReport {
    std::string subject;  // test subject; "mean" for the aggregate row
    Index train_trials = 0;
    Index test_trials = 0;
    Index obs_windows = 0;
    Index pred_windows = 0;
    RecognitionMetrics recognition;
    PredictionMetrics pred_gt;   // ground-truth observation gestures
    PredictionMetrics pred_rec;  // recognized observation gestures (end to end)
    TrajectoryErrors trajectory; // end-to-end regime, mm / percent
    LatencyStats rec_latency;
    LatencyStats e2e_latency;
};

struct EvalReport {
    std::vector<FoldReport> folds;
    FoldReport aggregate;  // unweighted mean over folds
    Index recognizer_params = 0;
    Index predictor_params = 0;
    std::string config_text;

    std::string to_csv() const;
    std::string to_json() const;
    std::string summary() const;  // human-readable table for stdout
};

FoldReport aggregate_folds(const std::vector<FoldReport>& folds);

}  // namespace surgact
