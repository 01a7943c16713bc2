#include "surgact/normalize.hpp"

#include <cmath>

#include "surgact/error.hpp"

namespace surgact {

ZScoreStats zscore_fit(const std::vector<const LabeledTrial*>& train_trials) {
    if (train_trials.empty()) throw ConfigError("zscore_fit: no training trials");
    const Index d = train_trials.front()->features.cols;
    ZScoreStats stats;
    stats.mean = Mat(1, d);
    stats.std = Mat(1, d);
    double count = 0;
    for (const auto* t : train_trials) {
        require_shape(t->features.cols == d, "zscore_fit", t->features.shape_str(),
                      stats.mean.shape_str());
        for (Index i = 0; i < t->features.rows; ++i) {
            const double* row = t->features.row(i);
            for (Index j = 0; j < d; ++j) stats.mean.at(0, j) += row[j];
        }
        count += static_cast<double>(t->features.rows);
    }
    for (Index j = 0; j < d; ++j) stats.mean.at(0, j) /= count;
    for (const auto* t : train_trials) {
        for (Index i = 0; i < t->features.rows; ++i) {
            const double* row = t->features.row(i);
            for (Index j = 0; j < d; ++j) {
                const double c = row[j] - stats.mean.at(0, j);
                stats.std.at(0, j) += c * c;
            }
        }
    }
    for (Index j = 0; j < d; ++j) {
        const double sd = std::sqrt(stats.std.at(0, j) / count);
        stats.std.at(0, j) = sd < 1e-12 ? 0.0 : sd;
    }
    return stats;
}

Mat zscore_apply(const ZScoreStats& stats, const Mat& features) {
    require_shape(features.cols == stats.mean.cols, "zscore_apply", features.shape_str(),
                  stats.mean.shape_str());
    Mat out = features;
    for (Index i = 0; i < out.rows; ++i) {
        double* row = out.row(i);
        for (Index j = 0; j < out.cols; ++j) {
            const double sd = stats.std.at(0, j);
            if (sd > 0.0) row[j] = (row[j] - stats.mean.at(0, j)) / sd;
        }
    }
    return out;
}

void zscore_apply_inplace(const ZScoreStats& stats, LabeledTrial& trial) {
    trial.features = zscore_apply(stats, trial.features);
}

}  // namespace surgact
