#include "surgact/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "surgact/error.hpp"

namespace surgact {

std::vector<Segment> segments_from_labels(const std::vector<int>& labels) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < labels.size();) {
        std::size_t j = i;
        while (j < labels.size() && labels[j] == labels[i]) ++j;
        if (labels[i] >= 0)
            segs.push_back({labels[i], static_cast<Index>(i), static_cast<Index>(j - 1)});
        i = j;
    }
    return segs;
}

double frame_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size())
        throw ShapeError("frame_accuracy: length mismatch " + std::to_string(pred.size()) + " vs " +
                         std::to_string(truth.size()));
    Index valid = 0, correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0) continue;
        ++valid;
        if (pred[i] == truth[i]) ++correct;
    }
    if (valid == 0) return std::numeric_limits<double>::quiet_NaN();
    return 100.0 * static_cast<double>(correct) / static_cast<double>(valid);
}

namespace {

// Two-row Levenshtein over segment-label sequences.
std::size_t levenshtein(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::vector<int> segment_labels(const std::vector<int>& labels) {
    std::vector<int> out;
    for (const auto& s : segments_from_labels(labels)) out.push_back(s.label);
    return out;
}

}  // namespace

double edit_score(const std::vector<int>& pred, const std::vector<int>& truth) {
    const std::vector<int> ps = segment_labels(pred);
    const std::vector<int> ts = segment_labels(truth);
    if (ps.empty() && ts.empty()) return 100.0;
    const std::size_t denom = std::max(ps.size(), ts.size());
    const double score = 100.0 * (1.0 - static_cast<double>(levenshtein(ps, ts)) /
                                            static_cast<double>(denom));
    return std::max(0.0, score);
}

namespace {

double segment_iou(const Segment& a, const Segment& b) {
    const Index inter_lo = std::max(a.start, b.start);
    const Index inter_hi = std::min(a.end, b.end);
    const Index inter = std::max<Index>(0, inter_hi - inter_lo + 1);
    const Index uni = (a.end - a.start + 1) + (b.end - b.start + 1) - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double f1_at_k(const std::vector<Segment>& pred, const std::vector<Segment>& truth, double k_percent) {
    if (pred.empty() && truth.empty()) return 100.0;
    const double thresh = k_percent / 100.0;
    std::vector<bool> matched(truth.size(), false);
    Index tp = 0, fp = 0;
    for (const auto& p : pred) {
        double best = -1.0;
        std::size_t best_idx = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (matched[i] || truth[i].label != p.label) continue;
            const double iou = segment_iou(p, truth[i]);
            if (iou > best) {
                best = iou;
                best_idx = i;
            }
        }
        if (best > thresh) {
            ++tp;
            matched[best_idx] = true;
        } else {
            ++fp;
        }
    }
    Index fn = 0;
    for (bool m : matched)
        if (!m) ++fn;
    if (tp == 0 && fp == 0 && fn == 0) return 100.0;
    return 100.0 * 2.0 * static_cast<double>(tp) /
           static_cast<double>(2 * tp + fp + fn);
}

double f1_at_k(const std::vector<int>& pred, const std::vector<int>& truth, double k_percent) {
    return f1_at_k(segments_from_labels(pred), segments_from_labels(truth), k_percent);
}

TrajectoryErrors trajectory_errors(const Mat& pred, const Mat& truth) {
    require_shape(pred.same_shape(truth) && pred.cols == 6, "trajectory_errors", pred.shape_str(),
                  truth.shape_str());
    if (pred.rows < 1) throw ShapeError("trajectory_errors: empty input");
    TrajectoryErrors out;
    for (Index j = 0; j < 6; ++j) {
        double se = 0.0, ae = 0.0, ape = 0.0;
        Index ape_n = 0;
        for (Index i = 0; i < pred.rows; ++i) {
            const double d = pred.at(i, j) - truth.at(i, j);
            se += d * d;
            ae += std::abs(d);
            if (std::abs(truth.at(i, j)) >= 1e-6) {
                ape += std::abs(d / truth.at(i, j));
                ++ape_n;
            }
        }
        const double n = static_cast<double>(pred.rows);
        out.rmse[static_cast<std::size_t>(j)] = std::sqrt(se / n);
        out.mae[static_cast<std::size_t>(j)] = ae / n;
        out.mape[static_cast<std::size_t>(j)] =
            ape_n > 0 ? 100.0 * ape / static_cast<double>(ape_n)
                      : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

LatencyStats latency_stats(const std::vector<double>& samples_ms, Index warmup) {
    if (static_cast<Index>(samples_ms.size()) <= warmup)
        throw ConfigError("latency_stats: need more than " + std::to_string(warmup) +
                          " samples (warmup exclusion), got " + std::to_string(samples_ms.size()));
    std::vector<double> kept(samples_ms.begin() + warmup, samples_ms.end());
    std::sort(kept.begin(), kept.end());
    LatencyStats st;
    st.samples = static_cast<Index>(kept.size());
    double sum = 0.0;
    for (double v : kept) sum += v;
    st.mean_ms = sum / static_cast<double>(kept.size());
    auto pct = [&](double q) {
        const std::size_t idx = static_cast<std::size_t>(
            std::max<long long>(0, static_cast<long long>(std::ceil(q * static_cast<double>(kept.size()))) - 1));
        return kept[std::min(idx, kept.size() - 1)];
    };
    st.p50_ms = pct(0.50);
    st.p99_ms = pct(0.99);
    st.over_budget = st.mean_ms > kRealTimeBudgetMs;
    return st;
}

}  // namespace surgact
