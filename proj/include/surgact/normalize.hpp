#pragma once

#include <vector>

#include "surgact/tensor.hpp"
#include "surgact/trial.hpp"

namespace surgact {

// Per-feature standardization statistics. Features whose training standard
// deviation is (near) zero are marked and passed through untouched.
struct ZScoreStats {
    Mat mean;  // 1 x d
    Mat std;   // 1 x d; 0 marks a constant feature
};

// Fit on training trials only; the caller is responsible for fold hygiene.
ZScoreStats zscore_fit(const std::vector<const LabeledTrial*>& train_trials);

Mat zscore_apply(const ZScoreStats& stats, const Mat& features);
void zscore_apply_inplace(const ZScoreStats& stats, LabeledTrial& trial);

}  // namespace surgact
