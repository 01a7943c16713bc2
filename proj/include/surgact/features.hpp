#pragma once

// Feature transformation stage: the temporal-convolutional encoder that maps
// a fused observation window to one d_model vector per frame. Each layer is
// conv -> ReLU -> max pool; the stack output is upsampled back to the input
// length so the transformer sees per-frame resolution.

#include <vector>

#include "surgact/layers.hpp"
#include "surgact/rng.hpp"

namespace surgact {

struct TcnPlan {
    Index d_in = 14;
    Index d_model = 60;
    Index kernel_width = 5;
    std::vector<Index> channels = {32, 64};  // hidden plan; final layer emits d_model
    Index n_layers() const { return static_cast<Index>(channels.size()) + 1; }
};

template <class T>
struct TcnCacheT {
    struct Layer {
        MatT<T> input;
        MatT<T> pre_act;
        MatT<T> act;
        std::vector<Index> pool_argmax;
        Index act_rows = 0;
    };
    std::vector<Layer> layers;
    Index pooled_rows = 0;
};

template <class T>
struct TcnEncoderT {
    std::vector<Conv1dT<T>> convs;
    Index d_model = 0;

    void init(Rng& rng, const TcnPlan& plan) {
        d_model = plan.d_model;
        convs.clear();
        Index din = plan.d_in;
        for (Index c : plan.channels) {
            Conv1dT<T> conv;
            conv.init(rng, plan.kernel_width, din, c);
            convs.push_back(std::move(conv));
            din = c;
        }
        Conv1dT<T> last;
        last.init(rng, plan.kernel_width, din, plan.d_model);
        convs.push_back(std::move(last));
    }

    MatT<T> forward(const MatT<T>& window, TcnCacheT<T>* cache = nullptr) const {
        const Index w = window.rows;
        const Index min_len = Index(1) << convs.size();
        if (w < min_len)
            throw ConfigError("tcn_encode: window of " + std::to_string(w) +
                              " frames is shorter than 2^" + std::to_string(convs.size()) +
                              "; pooling would vanish");
        if (cache) cache->layers.resize(convs.size());
        MatT<T> x = window;
        for (std::size_t i = 0; i < convs.size(); ++i) {
            MatT<T> pre = convs[i].forward(x);
            MatT<T> act = relu(pre);
            std::vector<Index> argmax;
            MatT<T> pooled = max_pool1d(act, cache ? &argmax : nullptr);
            if (cache) {
                auto& lc = cache->layers[i];
                lc.input = std::move(x);
                lc.pre_act = std::move(pre);
                lc.act_rows = act.rows;
                lc.pool_argmax = std::move(argmax);
            }
            x = std::move(pooled);
        }
        if (cache) cache->pooled_rows = x.rows;
        return upsample_repeat(x, w);
    }

    // Returns the gradient w.r.t. the input window.
    MatT<T> backward(TcnCacheT<T>& cache, const MatT<T>& gout)
        requires std::is_same_v<T, double>
    {
        MatT<T> g = upsample_repeat_backward(cache.pooled_rows, gout);
        for (std::size_t i = convs.size(); i-- > 0;) {
            auto& lc = cache.layers[i];
            MatT<T> gact = max_pool1d_backward(lc.act_rows, lc.pool_argmax, g);
            MatT<T> gpre = relu_backward(lc.pre_act, gact);
            g = convs[i].backward(lc.input, gpre);
        }
        return g;
    }

    template <class F>
    void visit(F&& f) {
        for (auto& c : convs) c.visit(f);
    }
};

using TcnEncoder = TcnEncoderT<double>;

}  // namespace surgact
