#pragma once

// Gesture/trajectory prediction stage: a transformer decoder over a memory
// built from the recognizer's hidden states, the observed gesture labels and
// the raw fused features, with two linear heads reading the same final
// hidden states. Trajectories are predicted as deltas from the last observed
// position and re-integrated (absolute mode sits behind a config flag).

#include <vector>

#include "surgact/layers.hpp"
#include "surgact/losses.hpp"

namespace surgact {

struct PredictorConfig {
    Index d_in = 14;      // raw fused feature dim entering the memory
    Index d_model = 60;
    Index n_dec = 2;
    Index heads = 4;
    Index fc_dim = 10;
    Index d_emb = 16;
    Index ffn_inner = 240;
    Index w_pred = 10;
    Index mem_len = 10;   // W_obs'
    Index ds_factor = 3;  // encoder-output / gesture downsampling inside build_memory
    double dropout = 0.1;
    bool traj_delta = true;
};

template <class T>
struct MemoryCacheT {
    MatT<T> concat;             // mem_len x (d_model + d_emb + d_in)
    std::vector<int> emb_rows;  // embedding row used per memory frame
};

template <class T>
struct DecodeCacheT {
    MatT<T> input_concat;  // W x (d_emb + 6)
    std::vector<int> emb_rows;  // embedding row fed per step; -2 marks the start token
    std::vector<DecoderLayerCacheT<T>> layers;
    LayerNormCacheT<T> final_ln;
    MatT<T> hidden;
    MatT<T> memory;
};

template <class T>
struct PredictorT {
    PredictorConfig cfg;
    ParamT<T> gesture_embedding;  // (fc_dim + 1) x d_emb; last row embeds Unlabeled
    ParamT<T> start_token;        // 1 x d_emb
    LinearT<T> memory_proj;       // (d_model + d_emb + d_in) -> d_model
    LinearT<T> input_proj;        // (d_emb + 6) -> d_model
    std::vector<DecoderLayerT<T>> layers;
    LayerNormT<T> final_norm;
    LinearT<T> gesture_head;      // d_model -> fc_dim
    LinearT<T> traj_head;         // d_model -> 6
    MatT<T> pos_table;

    Index unlabeled_row() const { return cfg.fc_dim; }

    void init(Rng& rng, const PredictorConfig& config) {
        cfg = config;
        gesture_embedding = ParamT<T>(cfg.fc_dim + 1, cfg.d_emb);
        for (auto& v : gesture_embedding.value.data) v = static_cast<T>(rng.normal(0.0, 0.02));
        start_token = ParamT<T>(1, cfg.d_emb);
        for (auto& v : start_token.value.data) v = static_cast<T>(rng.normal(0.0, 0.02));
        memory_proj.init(rng, cfg.d_model + cfg.d_emb + cfg.d_in, cfg.d_model);
        input_proj.init(rng, cfg.d_emb + 6, cfg.d_model);
        layers.assign(static_cast<std::size_t>(cfg.n_dec), DecoderLayerT<T>{});
        for (auto& l : layers) l.init(rng, cfg.d_model, cfg.heads, cfg.ffn_inner);
        final_norm.init(cfg.d_model);
        gesture_head.init(rng, cfg.d_model, cfg.fc_dim);
        traj_head.init(rng, cfg.d_model, 6);
        pos_table = positional_encoding<T>(std::max(cfg.w_pred, cfg.mem_len), cfg.d_model);
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

    Index embedding_row(int class_index) const {
        if (class_index < 0) return unlabeled_row();
        if (class_index >= cfg.fc_dim)
            throw DataError("predictor: class index " + std::to_string(class_index) + " out of range");
        return class_index;
    }

    // Per-frame concatenation [enc_hidden (every ds_factor-th row); gesture
    // embedding; raw features], projected to d_model with positions added.
    // obs_classes are class indices (< 0 means unlabeled).
    MatT<T> build_memory(const MatT<T>& enc_hidden, const std::vector<int>& obs_classes,
                         const MatT<T>& raw_obs_features, MemoryCacheT<T>* cache = nullptr) const {
        if (static_cast<Index>(obs_classes.size()) != enc_hidden.rows)
            throw ShapeError("build_memory: " + std::to_string(obs_classes.size()) + " labels for " +
                             enc_hidden.shape_str() + " hidden rows");
        const Index mem_len = raw_obs_features.rows;
        if ((mem_len - 1) * cfg.ds_factor >= enc_hidden.rows)
            throw ShapeError("build_memory: " + std::to_string(mem_len) +
                             " raw feature rows cannot be aligned with " +
                             std::to_string(enc_hidden.rows) + " hidden rows at factor " +
                             std::to_string(cfg.ds_factor));
        require_shape(raw_obs_features.cols == cfg.d_in, "build_memory raw features",
                      raw_obs_features.shape_str(), Mat(mem_len, cfg.d_in).shape_str());
        MatT<T> concat(mem_len, cfg.d_model + cfg.d_emb + cfg.d_in);
        std::vector<int> emb_rows(static_cast<std::size_t>(mem_len));
        for (Index k = 0; k < mem_len; ++k) {
            const Index src = k * cfg.ds_factor;
            T* row = concat.row(k);
            const T* h = enc_hidden.row(src);
            for (Index j = 0; j < cfg.d_model; ++j) row[j] = h[j];
            const Index erow = embedding_row(obs_classes[static_cast<std::size_t>(src)]);
            emb_rows[static_cast<std::size_t>(k)] = static_cast<int>(erow);
            const T* e = gesture_embedding.value.row(erow);
            for (Index j = 0; j < cfg.d_emb; ++j) row[cfg.d_model + j] = e[j];
            const T* r = raw_obs_features.row(k);
            for (Index j = 0; j < cfg.d_in; ++j) row[cfg.d_model + cfg.d_emb + j] = r[j];
        }
        MatT<T> memory = memory_proj.forward(concat);
        add_positions(memory);
        if (cache) {
            cache->concat = std::move(concat);
            cache->emb_rows = std::move(emb_rows);
        }
        return memory;
    }

    struct Output {
        MatT<T> gesture_logits;  // W x fc_dim
        MatT<T> traj;            // W x 6, absolute mm
        MatT<T> raw_head;        // W x 6, head output before integration (deltas in delta mode)
    };

    // Core causal decode over assembled input rows. Row 0 is the start step;
    // row t>=1 carries the previous step's gesture (class index) and absolute
    // trajectory. prev_traj holds those same absolute positions, row 0 being
    // the last observed point, used for delta re-integration.
    Output decode(const MatT<T>& memory, const std::vector<int>& step_classes, const MatT<T>& prev_traj,
                  Rng* rng = nullptr, bool training = false, DecodeCacheT<T>* cache = nullptr) const {
        const Index w = prev_traj.rows;
        if (static_cast<Index>(step_classes.size()) != w)
            throw ShapeError("decode: step class count " + std::to_string(step_classes.size()) +
                             " != " + std::to_string(w));
        MatT<T> concat(w, cfg.d_emb + 6);
        std::vector<int> emb_rows(static_cast<std::size_t>(w));
        for (Index t = 0; t < w; ++t) {
            T* row = concat.row(t);
            const T* e;
            if (t == 0) {
                e = start_token.value.row(0);
                emb_rows[0] = -2;
            } else {
                const Index erow = embedding_row(step_classes[static_cast<std::size_t>(t)]);
                emb_rows[static_cast<std::size_t>(t)] = static_cast<int>(erow);
                e = gesture_embedding.value.row(erow);
            }
            for (Index j = 0; j < cfg.d_emb; ++j) row[j] = e[j];
            const T* tr = prev_traj.row(t);
            for (Index j = 0; j < 6; ++j) row[cfg.d_emb + j] = tr[j];
        }
        MatT<T> x = input_proj.forward(concat);
        add_positions(x);
        const double rate = training ? cfg.dropout : 0.0;
        if (cache) {
            cache->input_concat = concat;
            cache->emb_rows = emb_rows;
            cache->layers.resize(layers.size());
            cache->memory = memory;
        }
        for (std::size_t i = 0; i < layers.size(); ++i)
            x = layers[i].forward(x, memory, rate, rng, training, cache ? &cache->layers[i] : nullptr);
        MatT<T> hidden = final_norm.forward(x, cache ? &cache->final_ln : nullptr);
        if (cache) cache->hidden = hidden;
        Output out;
        out.gesture_logits = gesture_head.forward(hidden);
        out.raw_head = traj_head.forward(hidden);
        if (cfg.traj_delta) {
            out.traj = MatT<T>(w, 6);
            for (Index t = 0; t < w; ++t)
                for (Index j = 0; j < 6; ++j) out.traj.at(t, j) = prev_traj.at(t, j) + out.raw_head.at(t, j);
        } else {
            out.traj = out.raw_head;
        }
        return out;
    }

    // Teacher-forced pass: step t>=1 is fed the ground-truth gesture and
    // trajectory of step t-1; step 0 is fed the start token and the last
    // observed trajectory point.
    Output teacher_forced(const MatT<T>& memory, const std::vector<int>& target_classes,
                          const MatT<T>& target_traj, const MatT<T>& last_obs_traj,
                          Rng* rng = nullptr, bool training = false,
                          DecodeCacheT<T>* cache = nullptr) const {
        const Index w = target_traj.rows;
        std::vector<int> step_classes(static_cast<std::size_t>(w), -1);
        MatT<T> prev(w, 6);
        for (Index j = 0; j < 6; ++j) prev.at(0, j) = last_obs_traj.at(0, j);
        for (Index t = 1; t < w; ++t) {
            step_classes[static_cast<std::size_t>(t)] = target_classes[static_cast<std::size_t>(t - 1)];
            for (Index j = 0; j < 6; ++j) prev.at(t, j) = target_traj.at(t - 1, j);
        }
        return decode(memory, step_classes, prev, rng, training, cache);
    }

    // Autoregressive decoding: each step feeds back the argmax gesture and
    // the re-integrated trajectory of the previous step.
    Output autoregressive(const MatT<T>& memory, const MatT<T>& last_obs_traj, Index w_pred) const {
        std::vector<int> step_classes;
        MatT<T> prev(1, 6);
        for (Index j = 0; j < 6; ++j) prev.at(0, j) = last_obs_traj.at(0, j);
        step_classes.push_back(-1);
        Output full;
        full.gesture_logits = MatT<T>(w_pred, cfg.fc_dim);
        full.traj = MatT<T>(w_pred, 6);
        full.raw_head = MatT<T>(w_pred, 6);
        for (Index t = 0; t < w_pred; ++t) {
            Output step = decode(memory, step_classes, prev);
            const Index last = step.gesture_logits.rows - 1;
            for (Index j = 0; j < cfg.fc_dim; ++j)
                full.gesture_logits.at(t, j) = step.gesture_logits.at(last, j);
            for (Index j = 0; j < 6; ++j) {
                full.traj.at(t, j) = step.traj.at(last, j);
                full.raw_head.at(t, j) = step.raw_head.at(last, j);
            }
            if (t + 1 < w_pred) {
                int cls = 0;
                for (Index j = 1; j < cfg.fc_dim; ++j)
                    if (full.gesture_logits.at(t, j) > full.gesture_logits.at(t, cls)) cls = static_cast<int>(j);
                step_classes.push_back(cls);
                MatT<T> next(prev.rows + 1, 6);
                std::copy(prev.data.begin(), prev.data.end(), next.data.begin());
                for (Index j = 0; j < 6; ++j) next.at(prev.rows, j) = full.traj.at(t, j);
                prev = std::move(next);
            }
        }
        return full;
    }

    // Backward through a cached teacher-forced decode. ggesture/gtraj are
    // loss gradients on the logits and the *absolute* trajectory output.
    // Gradients flowing into the memory are handed back for the memory
    // builder to consume.
    void decode_backward(DecodeCacheT<T>& cache, const MatT<T>& ggesture, const MatT<T>& gtraj_abs,
                         MatT<T>& gmemory)
        requires std::is_same_v<T, double>
    {
        MatT<T> ghidden = gesture_head.backward(cache.hidden, ggesture);
        // in delta mode d(abs)/d(raw_head) = 1; in absolute mode likewise
        MatT<T> gh2 = traj_head.backward(cache.hidden, gtraj_abs);
        add_inplace(ghidden, gh2);
        MatT<T> g = final_norm.backward(cache.final_ln, ghidden);
        gmemory = MatT<T>(cache.memory.rows, cache.memory.cols);
        for (std::size_t i = layers.size(); i-- > 0;) g = layers[i].backward(cache.layers[i], g, gmemory);
        MatT<T> gconcat = input_proj.backward(cache.input_concat, g);
        for (Index t = 0; t < gconcat.rows; ++t) {
            const int erow = cache.emb_rows[static_cast<std::size_t>(t)];
            T* dst = erow == -2 ? start_token.grad.row(0) : gesture_embedding.grad.row(erow);
            const T* src = gconcat.row(t);
            for (Index j = 0; j < cfg.d_emb; ++j) dst[j] += src[j];
        }
        // trajectory slice of the input is ground truth; no gradient consumer
    }

    void memory_backward(MemoryCacheT<T>& cache, const MatT<T>& gmemory)
        requires std::is_same_v<T, double>
    {
        MatT<T> gconcat = memory_proj.backward(cache.concat, gmemory);
        for (Index k = 0; k < gconcat.rows; ++k) {
            const int erow = cache.emb_rows[static_cast<std::size_t>(k)];
            T* dst = gesture_embedding.grad.row(erow);
            const T* src = gconcat.row(k) + cfg.d_model;
            for (Index j = 0; j < cfg.d_emb; ++j) dst[j] += src[j];
        }
        // encoder hidden states and raw features are inputs of the separately
        // trained recognition stage; their gradient is dropped by design
    }

    template <class F>
    void visit_params(F&& f) {
        f(gesture_embedding);
        f(start_token);
        memory_proj.visit(f);
        input_proj.visit(f);
        for (auto& l : layers) l.visit(f);
        final_norm.visit(f);
        gesture_head.visit(f);
        traj_head.visit(f);
    }

    Index param_count() {
        Index n = 0;
        visit_params([&](ParamT<T>& p) { n += p.value.rows * p.value.cols; });
        return n;
    }

    template <class U>
    PredictorT<U> cast() const {
        PredictorT<U> out;
        PredictorT<T>& self = const_cast<PredictorT<T>&>(*this);
        std::vector<MatT<U>> values;
        self.visit_params([&](ParamT<T>& p) { values.push_back(p.value.template cast<U>()); });
        Rng dummy(0);
        out.init(dummy, cfg);
        std::size_t i = 0;
        out.visit_params([&](ParamT<U>& p) { p.value = std::move(values[i++]); });
        return out;
    }
};

using Predictor = PredictorT<double>;

struct LossWeights {
    double gesture = 1.0;
    double traj = 0.01;
};

struct MultitaskLoss {
    double total = 0.0;
    double gesture = 0.0;
    double traj = 0.0;
    Mat ggesture;  // d total / d gesture_logits
    Mat gtraj;     // d total / d traj output
};

// total = w.gesture * masked cross-entropy + w.traj * cumulative L2.
inline MultitaskLoss multitask_loss(const Mat& gesture_logits, const std::vector<int>& gesture_targets,
                                    const Mat& traj, const Mat& traj_targets, const LossWeights& w) {
    if (w.gesture < 0 || w.traj < 0 || (w.gesture == 0 && w.traj == 0))
        throw ConfigError("multitask_loss: weights must be non-negative and not both zero");
    MultitaskLoss out;
    LossResult ce = masked_cross_entropy(gesture_logits, gesture_targets);
    LossResult l2 = cumulative_l2(traj, traj_targets);
    out.gesture = ce.value;
    out.traj = l2.value;
    out.total = w.gesture * ce.value + w.traj * l2.value;
    out.ggesture = std::move(ce.grad);
    scale_inplace(out.ggesture, w.gesture);
    out.gtraj = std::move(l2.grad);
    scale_inplace(out.gtraj, w.traj);
    return out;
}

}  // namespace surgact
