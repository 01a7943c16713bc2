#pragma once

// End-to-end inference over one observation window: recognize, build the
// decoder memory from the recognized labels, then decode autoregressively.
// One forward pipeline per window; both prediction heads are read from the
// same decoder pass. This call is the unit of the latency benchmark.

#include "surgact/predictor.hpp"
#include "surgact/recognizer.hpp"

namespace surgact {

template <class T>
struct PipelineResult {
    std::vector<int> obs_classes;   // W_obs recognized class indices
    std::vector<int> pred_classes;  // W_pred predicted class indices
    MatT<T> traj;                   // W_pred x 6, mm
    MatT<T> gesture_logits;         // W_pred x fc_dim
};

template <class T>
MatT<T> downsample_rows(const MatT<T>& x, Index factor) {
    const Index n = (x.rows + factor - 1) / factor;
    MatT<T> out(n, x.cols);
    for (Index i = 0; i < n; ++i)
        std::copy(x.row(i * factor), x.row(i * factor) + x.cols, out.row(i));
    return out;
}

template <class T>
PipelineResult<T> end_to_end_infer(const RecognizerT<T>& rec, const PredictorT<T>& pred,
                                   const MatT<T>& window, const MatT<T>& last_obs_traj) {
    typename RecognizerT<T>::Output enc = rec.forward(window);
    PipelineResult<T> res;
    res.obs_classes = argmax_rows(enc.logits);
    MatT<T> raw_ds = downsample_rows(window, pred.cfg.ds_factor);
    MatT<T> memory = pred.build_memory(enc.hidden, res.obs_classes, raw_ds);
    typename PredictorT<T>::Output out = pred.autoregressive(memory, last_obs_traj, pred.cfg.w_pred);
    res.pred_classes = argmax_rows(out.gesture_logits);
    res.gesture_logits = std::move(out.gesture_logits);
    res.traj = std::move(out.traj);
    return res;
}

}  // namespace surgact
