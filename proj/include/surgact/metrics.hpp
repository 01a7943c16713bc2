#pragma once

#include <array>
#include <vector>

#include "surgact/tensor.hpp"

namespace surgact {

// Metrics operate on integer label sequences; any value < 0 marks an
// unlabeled/masked frame and is excluded everywhere.

// Maximal run of one label, frame indices inclusive.
struct Segment {
    int label = 0;
    Index start = 0;
    Index end = 0;
};

// Maximal runs of equal labels in order; unlabeled runs are dropped.
std::vector<Segment> segments_from_labels(const std::vector<int>& labels);

// Percentage of frames (over frames whose truth label is >= 0) where the
// prediction matches. NaN when no frame is labeled.
double frame_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// 100 * (1 - Levenshtein(segment labels) / max segment count), clamped at 0.
// Identical segmentations score 100; both-empty scores 100.
double edit_score(const std::vector<int>& pred, const std::vector<int>& truth);

// Segmental F1 at an overlap threshold of k percent: each predicted segment
// is matched greedily (in order) against the best not-yet-matched true
// segment of the same label; it is a true positive iff that IoU is strictly
// greater than k/100. Unmatched true segments are false negatives.
// Empty-vs-empty scores 100.
double f1_at_k(const std::vector<Segment>& pred, const std::vector<Segment>& truth, double k_percent);
double f1_at_k(const std::vector<int>& pred, const std::vector<int>& truth, double k_percent);

struct TrajectoryErrors {
    std::array<double, 6> rmse{};  // mm
    std::array<double, 6> mae{};   // mm
    std::array<double, 6> mape{};  // percent; NaN when the truth column is all ~0
};

// Standard per-coordinate definitions. MAPE skips truth values with
// |v| < 1e-6 mm.
TrajectoryErrors trajectory_errors(const Mat& pred, const Mat& truth);

struct LatencyStats {
    double mean_ms = 0.0;
    double p50_ms = 0.0;
    double p99_ms = 0.0;
    Index samples = 0;
    bool over_budget = false;  // mean above the 33.33 ms real-time budget
};

constexpr double kRealTimeBudgetMs = 33.33;  // 30 Hz acquisition period

// Excludes the first `warmup` samples (default 10) before computing
// mean/p50/p99 over wall-clock millisecond samples.
LatencyStats latency_stats(const std::vector<double>& samples_ms, Index warmup = 10);

}  // namespace surgact
