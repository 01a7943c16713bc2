#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "surgact/kernels.hpp"
#include "surgact/tensor.hpp"

namespace surgact {

struct LossResult {
    double value = 0.0;
    Mat grad;  // d loss / d input of the loss (logits or predictions)
};

// Mean over frames of -log softmax(logits)[label]; gradient (softmax - onehot)/T.
// Labels must lie in [0, C). See masked_cross_entropy for sequences with
// ignored frames.
inline LossResult cross_entropy(const Mat& logits, const std::vector<int>& labels) {
    if (static_cast<Index>(labels.size()) != logits.rows)
        throw ShapeError("cross_entropy: " + std::to_string(labels.size()) + " labels for " +
                         logits.shape_str() + " logits");
    for (std::size_t t = 0; t < labels.size(); ++t)
        if (labels[t] < 0 || labels[t] >= logits.cols)
            throw DataError("cross_entropy: label " + std::to_string(labels[t]) +
                            " out of range [0," + std::to_string(logits.cols) + ") at frame " +
                            std::to_string(t));
    LossResult res;
    Mat probs = softmax_rows(logits);
    res.grad = probs;
    const double inv_t = 1.0 / static_cast<double>(logits.rows);
    double loss = 0.0;
    for (Index t = 0; t < logits.rows; ++t) {
        const int y = labels[static_cast<std::size_t>(t)];
        loss -= std::log(std::max(probs.at(t, y), 1e-300));
        res.grad.at(t, y) -= 1.0;
    }
    scale_inplace(res.grad, inv_t);
    res.value = loss * inv_t;
    return res;
}

// Cross-entropy over the frames whose label is >= 0; frames labelled with a
// negative index contribute neither loss nor gradient. valid_count reports
// how many frames participated (0 when everything was masked, in which case
// value is 0 and the gradient is all zero).
inline LossResult masked_cross_entropy(const Mat& logits, const std::vector<int>& labels,
                                       Index* valid_count = nullptr) {
    if (static_cast<Index>(labels.size()) != logits.rows)
        throw ShapeError("masked_cross_entropy: " + std::to_string(labels.size()) + " labels for " +
                         logits.shape_str() + " logits");
    Index valid = 0;
    for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t] >= logits.cols)
            throw DataError("masked_cross_entropy: label " + std::to_string(labels[t]) +
                            " out of range at frame " + std::to_string(t));
        if (labels[t] >= 0) ++valid;
    }
    if (valid_count) *valid_count = valid;
    LossResult res;
    res.grad = Mat(logits.rows, logits.cols);
    if (valid == 0) return res;
    Mat probs = softmax_rows(logits);
    const double inv = 1.0 / static_cast<double>(valid);
    double loss = 0.0;
    for (Index t = 0; t < logits.rows; ++t) {
        const int y = labels[static_cast<std::size_t>(t)];
        if (y < 0) continue;
        loss -= std::log(std::max(probs.at(t, y), 1e-300));
        for (Index c = 0; c < logits.cols; ++c)
            res.grad.at(t, c) = (probs.at(t, c) - (c == y ? 1.0 : 0.0)) * inv;
    }
    res.value = loss * inv;
    return res;
}

// Sum over window steps of the squared Euclidean distance between prediction
// and truth; gradient is 2*(pred - truth). Not averaged.
inline LossResult cumulative_l2(const Mat& pred, const Mat& truth) {
    require_shape(pred.same_shape(truth), "cumulative_l2", pred.shape_str(), truth.shape_str());
    LossResult res;
    res.grad = Mat(pred.rows, pred.cols);
    double loss = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const double d = pred.data[i] - truth.data[i];
        loss += d * d;
        res.grad.data[i] = 2.0 * d;
    }
    res.value = loss;
    return res;
}

}  // namespace surgact
