#pragma once

// Gesture recognition stage: TCN feature transformation, sinusoidal
// positions, a stack of transformer encoder layers (pre-norm) and a linear
// head emitting one gesture logit row per observed frame.

#include <vector>

#include "surgact/features.hpp"
#include "surgact/layers.hpp"

namespace surgact {

struct RecognizerConfig {
    Index d_in = 14;
    Index d_model = 60;
    Index n_enc = 3;
    Index heads = 2;
    Index fc_dim = 10;
    Index ffn_inner = 240;  // 4 * d_model
    Index w_obs = 30;
    Index tcn_kernel = 5;
    std::vector<Index> tcn_channels = {32, 64};
    double dropout = 0.1;
};

template <class T>
struct RecognizerCacheT {
    TcnCacheT<T> tcn;
    std::vector<EncoderLayerCacheT<T>> layers;
    LayerNormCacheT<T> final_ln;
    MatT<T> stream_in;   // TCN output + positions (input of layer 0)
    MatT<T> pre_final;   // residual stream before the final norm
    MatT<T> hidden;
};

template <class T>
struct RecognizerT {
    RecognizerConfig cfg;
    TcnEncoderT<T> tcn;
    std::vector<EncoderLayerT<T>> layers;
    LayerNormT<T> final_norm;
    LinearT<T> head;
    MatT<T> pos_table;

    void init(Rng& rng, const RecognizerConfig& config) {
        cfg = config;
        TcnPlan plan;
        plan.d_in = cfg.d_in;
        plan.d_model = cfg.d_model;
        plan.kernel_width = cfg.tcn_kernel;
        plan.channels = cfg.tcn_channels;
        tcn.init(rng, plan);
        layers.assign(static_cast<std::size_t>(cfg.n_enc), EncoderLayerT<T>{});
        for (auto& l : layers) l.init(rng, cfg.d_model, cfg.heads, cfg.ffn_inner);
        final_norm.init(cfg.d_model);
        head.init(rng, cfg.d_model, cfg.fc_dim);
        pos_table = positional_encoding<T>(cfg.w_obs, cfg.d_model);
    }

    void add_positions(MatT<T>& x) const {
        if (x.rows <= pos_table.rows) {
            for (Index i = 0; i < x.rows; ++i) {
                T* row = x.row(i);
                const T* p = pos_table.row(i);
                for (Index j = 0; j < x.cols; ++j) row[j] += p[j];
            }
        } else {
            add_inplace(x, positional_encoding<T>(x.rows, x.cols));
        }
    }

    struct Output {
        MatT<T> hidden;  // W_obs x d_model
        MatT<T> logits;  // W_obs x fc_dim
    };

    Output forward(const MatT<T>& window, Rng* rng = nullptr, bool training = false,
                   RecognizerCacheT<T>* cache = nullptr) const {
        const double rate = training ? cfg.dropout : 0.0;
        MatT<T> x = tcn.forward(window, cache ? &cache->tcn : nullptr);
        add_positions(x);
        if (cache) {
            cache->stream_in = x;
            cache->layers.resize(layers.size());
        }
        for (std::size_t i = 0; i < layers.size(); ++i)
            x = layers[i].forward(x, rate, rng, training, cache ? &cache->layers[i] : nullptr);
        if (cache) cache->pre_final = x;
        MatT<T> hidden = final_norm.forward(x, cache ? &cache->final_ln : nullptr);
        Output out;
        out.logits = head.forward(hidden);
        if (cache) cache->hidden = hidden;
        out.hidden = std::move(hidden);
        return out;
    }

    // Backpropagate the loss gradient on the logits; returns the gradient
    // w.r.t. the input window (rarely needed, but cheap to produce).
    MatT<T> backward(RecognizerCacheT<T>& cache, const MatT<T>& glogits)
        requires std::is_same_v<T, double>
    {
        MatT<T> ghidden = head.backward(cache.hidden, glogits);
        MatT<T> g = final_norm.backward(cache.final_ln, ghidden);
        for (std::size_t i = layers.size(); i-- > 0;) g = layers[i].backward(cache.layers[i], g);
        return tcn.backward(cache.tcn, g);  // positions are constants
    }

    template <class F>
    void visit_params(F&& f) {
        tcn.visit(f);
        for (auto& l : layers) l.visit(f);
        final_norm.visit(f);
        head.visit(f);
    }

    Index param_count() {
        Index n = 0;
        visit_params([&](ParamT<T>& p) { n += p.value.rows * p.value.cols; });
        return n;
    }

    template <class U>
    RecognizerT<U> cast() const {
        RecognizerT<U> out;
        out.cfg = cfg;
        RecognizerT<T>& self = const_cast<RecognizerT<T>&>(*this);
        std::vector<MatT<U>> values;
        self.visit_params([&](ParamT<T>& p) { values.push_back(p.value.template cast<U>()); });
        Rng dummy(0);
        out.init(dummy, cfg);
        std::size_t i = 0;
        out.visit_params([&](ParamT<U>& p) { p.value = std::move(values[i++]); });
        return out;
    }
};

using Recognizer = RecognizerT<double>;

// Per-frame argmax over the gesture logits; ties break toward the lowest
// class index.
template <class T>
std::vector<int> argmax_rows(const MatT<T>& logits) {
    std::vector<int> out(static_cast<std::size_t>(logits.rows));
    for (Index i = 0; i < logits.rows; ++i) {
        const T* row = logits.row(i);
        int best = 0;
        for (Index j = 1; j < logits.cols; ++j)
            if (row[j] > row[best]) best = static_cast<int>(j);
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

template <class T>
std::vector<int> recognize(const RecognizerT<T>& model, const MatT<T>& window) {
    return argmax_rows(model.forward(window).logits);
}

}  // namespace surgact
