#pragma once

// Differentiable layers. Every layer implements forward and an explicit
// backward; there is no general autodiff. forward(x, cache) stashes the
// intermediates backward needs only when a cache is supplied, so the
// inference path allocates nothing beyond its activations.
//
// backward() accumulates into ParamT::grad and returns the gradient with
// respect to the layer input.

#include <limits>
#include <optional>
#include <vector>

#include "surgact/kernels.hpp"
#include "surgact/rng.hpp"
#include "surgact/tensor.hpp"

namespace surgact {

// ---------------------------------------------------------------------------
// Linear

template <class T>
struct LinearT {
    ParamT<T> w;  // din x dout
    ParamT<T> b;  // 1 x dout

    void init(Rng& rng, Index din, Index dout) {
        w = ParamT<T>(din, dout);
        b = ParamT<T>(1, dout);
        w.init_xavier(rng, static_cast<double>(din), static_cast<double>(dout));
    }

    MatT<T> forward(const MatT<T>& x) const {
        require_shape(x.cols == w.value.rows, "linear", x.shape_str(), w.value.shape_str());
        MatT<T> out = matmul(x, w.value);
        add_row_broadcast(out, b.value);
        return out;
    }

    // x is the forward input.
    MatT<T> backward(const MatT<T>& x, const MatT<T>& gout) {
        matmul_tn_acc(x, gout, w.grad);
        for (Index i = 0; i < gout.rows; ++i) {
            const T* gr = gout.row(i);
            T* bg = b.grad.row(0);
            for (Index j = 0; j < gout.cols; ++j) bg[j] += gr[j];
        }
        return matmul_nt(gout, w.value);
    }

    template <class F>
    void visit(F&& f) {
        f(w);
        f(b);
    }
};

using Linear = LinearT<double>;

template <class T>
MatT<T> linear_forward(const MatT<T>& x, const ParamT<T>& w, const ParamT<T>& b) {
    require_shape(x.cols == w.value.rows, "linear_forward", x.shape_str(), w.value.shape_str());
    MatT<T> out = matmul(x, w.value);
    add_row_broadcast(out, b.value);
    return out;
}

// ---------------------------------------------------------------------------
// LayerNorm (row-wise)

template <class T>
struct LayerNormCacheT {
    MatT<T> xhat;
    std::vector<T> inv_std;
};

template <class T>
struct LayerNormT {
    ParamT<T> gain;  // 1 x d
    ParamT<T> bias;  // 1 x d
    T eps = T(1e-5);

    void init(Index d) {
        gain = ParamT<T>(1, d);
        bias = ParamT<T>(1, d);
        gain.value.fill(T(1));
    }

    MatT<T> forward(const MatT<T>& x, LayerNormCacheT<T>* cache = nullptr) const {
        const Index d = x.cols;
        MatT<T> out(x.rows, d);
        if (cache) {
            cache->xhat = MatT<T>(x.rows, d);
            cache->inv_std.assign(static_cast<std::size_t>(x.rows), T(0));
        }
        for (Index i = 0; i < x.rows; ++i) {
            const T* xr = x.row(i);
            T mean = T(0);
            for (Index j = 0; j < d; ++j) mean += xr[j];
            mean /= static_cast<T>(d);
            T var = T(0);
            for (Index j = 0; j < d; ++j) {
                const T c = xr[j] - mean;
                var += c * c;
            }
            var /= static_cast<T>(d);
            const T inv = T(1) / std::sqrt(var + eps);
            T* orow = out.row(i);
            const T* g = gain.value.row(0);
            const T* bb = bias.value.row(0);
            for (Index j = 0; j < d; ++j) {
                const T xh = (xr[j] - mean) * inv;
                orow[j] = xh * g[j] + bb[j];
                if (cache) cache->xhat.at(i, j) = xh;
            }
            if (cache) cache->inv_std[static_cast<std::size_t>(i)] = inv;
        }
        return out;
    }

    MatT<T> backward(const LayerNormCacheT<T>& cache, const MatT<T>& gout) {
        const Index d = gout.cols;
        MatT<T> gin(gout.rows, d);
        for (Index i = 0; i < gout.rows; ++i) {
            const T* gr = gout.row(i);
            const T* xh = cache.xhat.row(i);
            const T inv = cache.inv_std[static_cast<std::size_t>(i)];
            const T* g = gain.value.row(0);
            T* gg = gain.grad.row(0);
            T* gb = bias.grad.row(0);
            T mean_gxh = T(0), mean_gxh_xh = T(0);
            for (Index j = 0; j < d; ++j) {
                const T gxh = gr[j] * g[j];
                mean_gxh += gxh;
                mean_gxh_xh += gxh * xh[j];
                gg[j] += gr[j] * xh[j];
                gb[j] += gr[j];
            }
            mean_gxh /= static_cast<T>(d);
            mean_gxh_xh /= static_cast<T>(d);
            T* out = gin.row(i);
            for (Index j = 0; j < d; ++j) {
                const T gxh = gr[j] * g[j];
                out[j] = inv * (gxh - mean_gxh - xh[j] * mean_gxh_xh);
            }
        }
        return gin;
    }

    template <class F>
    void visit(F&& f) {
        f(gain);
        f(bias);
    }
};

using LayerNorm = LayerNormT<double>;

// ---------------------------------------------------------------------------
// Dropout (inverted scaling; identity when not training)

template <class T>
struct DropoutCacheT {
    MatT<T> mask;  // empty when dropout was a no-op
};

template <class T>
MatT<T> dropout_forward(const MatT<T>& x, double rate, Rng* rng, bool training,
                        DropoutCacheT<T>* cache) {
    if (!training || rate <= 0.0 || rng == nullptr) {
        if (cache) cache->mask = MatT<T>();
        return x;
    }
    MatT<T> out(x.rows, x.cols);
    MatT<T> mask(x.rows, x.cols);
    const T keep_scale = static_cast<T>(1.0 / (1.0 - rate));
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const T m = rng->uniform() >= rate ? keep_scale : T(0);
        mask.data[i] = m;
        out.data[i] = x.data[i] * m;
    }
    if (cache) cache->mask = std::move(mask);
    return out;
}

template <class T>
MatT<T> dropout_backward(const DropoutCacheT<T>& cache, const MatT<T>& gout) {
    if (cache.mask.data.empty()) return gout;
    MatT<T> gin(gout.rows, gout.cols);
    for (std::size_t i = 0; i < gout.data.size(); ++i) gin.data[i] = gout.data[i] * cache.mask.data[i];
    return gin;
}

// ---------------------------------------------------------------------------
// Scaled dot-product attention (functional form, used by MHA per head)

template <class T>
MatT<T> attention_scores(const MatT<T>& q, const MatT<T>& k, bool causal) {
    require_shape(q.cols == k.cols, "attention q/k", q.shape_str(), k.shape_str());
    MatT<T> scores = matmul_nt(q, k);
    const T scale = static_cast<T>(1.0 / std::sqrt(static_cast<double>(q.cols)));
    scale_inplace(scores, scale);
    if (causal) {
        const T neg = -std::numeric_limits<T>::infinity();
        for (Index i = 0; i < scores.rows; ++i) {
            T* row = scores.row(i);
            for (Index j = i + 1; j < scores.cols; ++j) row[j] = neg;
        }
    }
    return scores;
}

template <class T>
MatT<T> scaled_dot_attention(const MatT<T>& q, const MatT<T>& k, const MatT<T>& v, bool causal = false,
                             MatT<T>* weights_out = nullptr) {
    require_shape(k.rows == v.rows, "attention k/v", k.shape_str(), v.shape_str());
    MatT<T> attn = softmax_rows(attention_scores(q, k, causal));
    if (weights_out) *weights_out = attn;
    return matmul(attn, v);
}

// ---------------------------------------------------------------------------
// Multi-head attention

template <class T>
struct MhaCacheT {
    MatT<T> q_in, k_in, v_in;
    MatT<T> q, k, v;                          // projected, T x d_model
    std::vector<MatT<T>> attn;                // per head, post-softmax pre-dropout
    std::vector<DropoutCacheT<T>> attn_drop;  // per head
    MatT<T> concat;                           // heads concatenated, pre output proj
};

template <class T>
struct MhaT {
    Index d_model = 0;
    Index heads = 1;
    LinearT<T> proj_q, proj_k, proj_v, proj_out;

    void init(Rng& rng, Index d_model_, Index heads_) {
        if (heads_ < 1 || d_model_ % heads_ != 0)
            throw ConfigError("multi_head_attention: d_model " + std::to_string(d_model_) +
                              " not divisible by heads " + std::to_string(heads_));
        d_model = d_model_;
        heads = heads_;
        proj_q.init(rng, d_model, d_model);
        proj_k.init(rng, d_model, d_model);
        proj_v.init(rng, d_model, d_model);
        proj_out.init(rng, d_model, d_model);
    }

    static MatT<T> head_slice(const MatT<T>& m, Index h, Index dh) {
        MatT<T> out(m.rows, dh);
        for (Index i = 0; i < m.rows; ++i) {
            const T* src = m.row(i) + h * dh;
            T* dst = out.row(i);
            for (Index j = 0; j < dh; ++j) dst[j] = src[j];
        }
        return out;
    }

    static void head_place(MatT<T>& dst, const MatT<T>& part, Index h, Index dh) {
        for (Index i = 0; i < part.rows; ++i) {
            T* d = dst.row(i) + h * dh;
            const T* s = part.row(i);
            for (Index j = 0; j < dh; ++j) d[j] += s[j];
        }
    }

    MatT<T> forward(const MatT<T>& q_in, const MatT<T>& k_in, const MatT<T>& v_in, bool causal,
                    double attn_dropout = 0.0, Rng* rng = nullptr, bool training = false,
                    MhaCacheT<T>* cache = nullptr) const {
        const Index dh = d_model / heads;
        MatT<T> q = proj_q.forward(q_in);
        MatT<T> k = proj_k.forward(k_in);
        MatT<T> v = proj_v.forward(v_in);
        MatT<T> concat(q.rows, d_model);
        if (cache) {
            cache->q_in = q_in;
            cache->k_in = k_in;
            cache->v_in = v_in;
            cache->q = q;
            cache->k = k;
            cache->v = v;
            cache->attn.resize(static_cast<std::size_t>(heads));
            cache->attn_drop.resize(static_cast<std::size_t>(heads));
        }
        for (Index h = 0; h < heads; ++h) {
            MatT<T> qh = head_slice(q, h, dh);
            MatT<T> kh = head_slice(k, h, dh);
            MatT<T> vh = head_slice(v, h, dh);
            MatT<T> attn = softmax_rows(attention_scores(qh, kh, causal));
            if (cache) cache->attn[static_cast<std::size_t>(h)] = attn;
            MatT<T> attn_used = dropout_forward(attn, attn_dropout, rng, training,
                                                cache ? &cache->attn_drop[static_cast<std::size_t>(h)]
                                                      : nullptr);
            MatT<T> oh = matmul(attn_used, vh);
            head_place(concat, oh, h, dh);
        }
        if (cache) cache->concat = concat;
        return proj_out.forward(concat);
    }

    // Returns gradients w.r.t. (q_in, k_in, v_in); the caller decides how to
    // combine them (summed for self-attention, split for cross-attention).
    void backward(MhaCacheT<T>& cache, const MatT<T>& gout, MatT<T>& gq_in, MatT<T>& gk_in,
                  MatT<T>& gv_in) {
        const Index dh = d_model / heads;
        MatT<T> gconcat = proj_out.backward(cache.concat, gout);
        MatT<T> gq(cache.q.rows, d_model), gk(cache.k.rows, d_model), gv(cache.v.rows, d_model);
        const T scale = static_cast<T>(1.0 / std::sqrt(static_cast<double>(dh)));
        for (Index h = 0; h < heads; ++h) {
            MatT<T> goh = head_slice(gconcat, h, dh);
            MatT<T> qh = head_slice(cache.q, h, dh);
            MatT<T> kh = head_slice(cache.k, h, dh);
            MatT<T> vh = head_slice(cache.v, h, dh);
            const MatT<T>& attn = cache.attn[static_cast<std::size_t>(h)];
            auto& drop = cache.attn_drop[static_cast<std::size_t>(h)];

            // attn_used = dropout(attn); oh = attn_used * vh
            MatT<T> attn_used = attn;
            if (!drop.mask.data.empty())
                for (std::size_t i = 0; i < attn_used.data.size(); ++i)
                    attn_used.data[i] *= drop.mask.data[i];

            MatT<T> gattn_used = matmul_nt(goh, vh);
            MatT<T> gvh(vh.rows, dh);
            matmul_tn_acc(attn_used, goh, gvh);
            MatT<T> gattn = dropout_backward(drop, gattn_used);
            MatT<T> gscores = softmax_rows_backward(attn, gattn);
            scale_inplace(gscores, scale);
            MatT<T> gqh = matmul(gscores, kh);
            MatT<T> gkh(kh.rows, dh);
            matmul_tn_acc(gscores, qh, gkh);
            head_place(gq, gqh, h, dh);
            head_place(gk, gkh, h, dh);
            head_place(gv, gvh, h, dh);
        }
        gq_in = proj_q.backward(cache.q_in, gq);
        gk_in = proj_k.backward(cache.k_in, gk);
        gv_in = proj_v.backward(cache.v_in, gv);
    }

    template <class F>
    void visit(F&& f) {
        proj_q.visit(f);
        proj_k.visit(f);
        proj_v.visit(f);
        proj_out.visit(f);
    }
};

using Mha = MhaT<double>;

// ---------------------------------------------------------------------------
// Position-wise feed-forward (linear, ReLU, linear, dropout on output)

template <class T>
struct FfnCacheT {
    MatT<T> x;
    MatT<T> pre_act;
    MatT<T> act;
    DropoutCacheT<T> drop;
};

template <class T>
struct FfnT {
    LinearT<T> lin1, lin2;

    void init(Rng& rng, Index d_model, Index d_inner) {
        lin1.init(rng, d_model, d_inner);
        lin2.init(rng, d_inner, d_model);
    }

    MatT<T> forward(const MatT<T>& x, double dropout = 0.0, Rng* rng = nullptr, bool training = false,
                    FfnCacheT<T>* cache = nullptr) const {
        MatT<T> pre = lin1.forward(x);
        MatT<T> act = relu(pre);
        MatT<T> out = lin2.forward(act);
        if (cache) {
            cache->x = x;
            cache->pre_act = pre;
            cache->act = act;
        }
        return dropout_forward(out, dropout, rng, training, cache ? &cache->drop : nullptr);
    }

    MatT<T> backward(FfnCacheT<T>& cache, const MatT<T>& gout) {
        MatT<T> g = dropout_backward(cache.drop, gout);
        MatT<T> gact = lin2.backward(cache.act, g);
        MatT<T> gpre = relu_backward(cache.pre_act, gact);
        return lin1.backward(cache.x, gpre);
    }

    template <class F>
    void visit(F&& f) {
        lin1.visit(f);
        lin2.visit(f);
    }
};

using Ffn = FfnT<double>;

// ---------------------------------------------------------------------------
// Transformer encoder layer, pre-norm residual wiring:
//   u = x + MHA(LN1(x));  y = u + FFN(LN2(u))

template <class T>
struct EncoderLayerCacheT {
    LayerNormCacheT<T> ln1, ln2;
    MhaCacheT<T> mha;
    FfnCacheT<T> ffn;
};

template <class T>
struct EncoderLayerT {
    MhaT<T> self_attn;
    FfnT<T> ffn;
    LayerNormT<T> norm1, norm2;

    void init(Rng& rng, Index d_model, Index heads, Index d_inner) {
        self_attn.init(rng, d_model, heads);
        ffn.init(rng, d_model, d_inner);
        norm1.init(d_model);
        norm2.init(d_model);
    }

    MatT<T> forward(const MatT<T>& x, double dropout, Rng* rng, bool training,
                    EncoderLayerCacheT<T>* cache = nullptr) const {
        MatT<T> n1 = norm1.forward(x, cache ? &cache->ln1 : nullptr);
        MatT<T> a = self_attn.forward(n1, n1, n1, /*causal=*/false, dropout, rng, training,
                                      cache ? &cache->mha : nullptr);
        add_inplace(a, x);
        MatT<T> n2 = norm2.forward(a, cache ? &cache->ln2 : nullptr);
        MatT<T> f = ffn.forward(n2, dropout, rng, training, cache ? &cache->ffn : nullptr);
        add_inplace(f, a);
        return f;
    }

    MatT<T> backward(EncoderLayerCacheT<T>& cache, const MatT<T>& gout) {
        MatT<T> gffn = ffn.backward(cache.ffn, gout);
        MatT<T> gu = norm2.backward(cache.ln2, gffn);
        add_inplace(gu, gout);
        MatT<T> gq, gk, gv;
        self_attn.backward(cache.mha, gu, gq, gk, gv);
        add_inplace(gq, gk);
        add_inplace(gq, gv);
        MatT<T> gx = norm1.backward(cache.ln1, gq);
        add_inplace(gx, gu);
        return gx;
    }

    template <class F>
    void visit(F&& f) {
        self_attn.visit(f);
        ffn.visit(f);
        norm1.visit(f);
        norm2.visit(f);
    }
};

using EncoderLayer = EncoderLayerT<double>;

// ---------------------------------------------------------------------------
// Transformer decoder layer, pre-norm:
//   u = x + SelfMHA(LN1(x), causal)
//   v = u + CrossMHA(LN2(u), memory)
//   y = v + FFN(LN3(v))

template <class T>
struct DecoderLayerCacheT {
    LayerNormCacheT<T> ln1, ln2, ln3;
    MhaCacheT<T> self_mha, cross_mha;
    FfnCacheT<T> ffn;
};

template <class T>
struct DecoderLayerT {
    MhaT<T> self_attn;
    MhaT<T> cross_attn;
    FfnT<T> ffn;
    LayerNormT<T> norm1, norm2, norm3;

    void init(Rng& rng, Index d_model, Index heads, Index d_inner) {
        self_attn.init(rng, d_model, heads);
        cross_attn.init(rng, d_model, heads);
        ffn.init(rng, d_model, d_inner);
        norm1.init(d_model);
        norm2.init(d_model);
        norm3.init(d_model);
    }

    MatT<T> forward(const MatT<T>& x, const MatT<T>& memory, double dropout, Rng* rng, bool training,
                    DecoderLayerCacheT<T>* cache = nullptr) const {
        MatT<T> n1 = norm1.forward(x, cache ? &cache->ln1 : nullptr);
        MatT<T> a = self_attn.forward(n1, n1, n1, /*causal=*/true, dropout, rng, training,
                                      cache ? &cache->self_mha : nullptr);
        add_inplace(a, x);
        MatT<T> n2 = norm2.forward(a, cache ? &cache->ln2 : nullptr);
        MatT<T> c = cross_attn.forward(n2, memory, memory, /*causal=*/false, dropout, rng, training,
                                       cache ? &cache->cross_mha : nullptr);
        add_inplace(c, a);
        MatT<T> n3 = norm3.forward(c, cache ? &cache->ln3 : nullptr);
        MatT<T> f = ffn.forward(n3, dropout, rng, training, cache ? &cache->ffn : nullptr);
        add_inplace(f, c);
        return f;
    }

    // gmemory accumulates the gradient flowing into the cross-attention memory.
    MatT<T> backward(DecoderLayerCacheT<T>& cache, const MatT<T>& gout, MatT<T>& gmemory) {
        MatT<T> gffn = ffn.backward(cache.ffn, gout);
        MatT<T> gv = norm3.backward(cache.ln3, gffn);
        add_inplace(gv, gout);
        MatT<T> gq, gk, gval;
        cross_attn.backward(cache.cross_mha, gv, gq, gk, gval);
        add_inplace(gk, gval);
        add_inplace(gmemory, gk);
        MatT<T> gu = norm2.backward(cache.ln2, gq);
        add_inplace(gu, gv);
        MatT<T> sq, sk, sv;
        self_attn.backward(cache.self_mha, gu, sq, sk, sv);
        add_inplace(sq, sk);
        add_inplace(sq, sv);
        MatT<T> gx = norm1.backward(cache.ln1, sq);
        add_inplace(gx, gu);
        return gx;
    }

    template <class F>
    void visit(F&& f) {
        self_attn.visit(f);
        cross_attn.visit(f);
        ffn.visit(f);
        norm1.visit(f);
        norm2.visit(f);
        norm3.visit(f);
    }
};

using DecoderLayer = DecoderLayerT<double>;

// ---------------------------------------------------------------------------
// Temporal ops for the TCN stage

// Same-length 1D convolution over time. Kernel taps live in a single
// (k*din) x dout parameter, tap-major; width must be odd so the symmetric
// zero padding is well defined.
template <class T>
struct Conv1dT {
    Index width = 0;  // k
    Index din = 0;
    Index dout = 0;
    ParamT<T> kernel;  // (k*din) x dout
    ParamT<T> bias;    // 1 x dout

    void init(Rng& rng, Index k, Index din_, Index dout_) {
        if (k % 2 == 0) throw ConfigError("temporal_conv1d: kernel width must be odd, got " + std::to_string(k));
        width = k;
        din = din_;
        dout = dout_;
        kernel = ParamT<T>(k * din_, dout_);
        bias = ParamT<T>(1, dout_);
        kernel.init_xavier(rng, static_cast<double>(k * din_), static_cast<double>(dout_));
    }

    MatT<T> forward(const MatT<T>& x) const {
        require_shape(x.cols == din, "temporal_conv1d", x.shape_str(), kernel.value.shape_str());
        const Index half = width / 2;
        MatT<T> out(x.rows, dout);
        for (Index j = 0; j < width; ++j) {
            // tap j reads x[t + j - half]
            const Index shift = j - half;
            const Index t_lo = std::max<Index>(0, -shift);
            const Index t_hi = std::min<Index>(x.rows, x.rows - shift);
            for (Index t = t_lo; t < t_hi; ++t) {
                const T* xr = x.row(t + shift);
                T* orow = out.row(t);
                const MatT<T>& kv = kernel.value;
                for (Index ci = 0; ci < din; ++ci) {
                    const T xv = xr[ci];
                    const T* krow = kv.row(j * din + ci);
                    for (Index co = 0; co < dout; ++co) orow[co] += xv * krow[co];
                }
            }
        }
        add_row_broadcast(out, bias.value);
        return out;
    }

    MatT<T> backward(const MatT<T>& x, const MatT<T>& gout) {
        const Index half = width / 2;
        MatT<T> gin(x.rows, din);
        for (Index j = 0; j < width; ++j) {
            const Index shift = j - half;
            const Index t_lo = std::max<Index>(0, -shift);
            const Index t_hi = std::min<Index>(x.rows, x.rows - shift);
            for (Index t = t_lo; t < t_hi; ++t) {
                const T* xr = x.row(t + shift);
                const T* gr = gout.row(t);
                T* gx = gin.row(t + shift);
                for (Index ci = 0; ci < din; ++ci) {
                    const T* krow = kernel.value.row(j * din + ci);
                    T* kgrow = kernel.grad.row(j * din + ci);
                    T acc = T(0);
                    const T xv = xr[ci];
                    for (Index co = 0; co < dout; ++co) {
                        acc += gr[co] * krow[co];
                        kgrow[co] += xv * gr[co];
                    }
                    gx[ci] += acc;
                }
            }
        }
        for (Index t = 0; t < gout.rows; ++t) {
            const T* gr = gout.row(t);
            T* bg = bias.grad.row(0);
            for (Index co = 0; co < dout; ++co) bg[co] += gr[co];
        }
        return gin;
    }

    template <class F>
    void visit(F&& f) {
        f(kernel);
        f(bias);
    }
};

using Conv1d = Conv1dT<double>;

// Channel-wise max over non-overlapping pairs of frames; an odd trailing
// frame passes through unchanged.
template <class T>
MatT<T> max_pool1d(const MatT<T>& x, std::vector<Index>* argmax = nullptr) {
    if (x.rows < 1) throw ShapeError("max_pool1d: empty input");
    const Index out_rows = (x.rows + 1) / 2;
    MatT<T> out(out_rows, x.cols);
    if (argmax) argmax->assign(static_cast<std::size_t>(out_rows * x.cols), 0);
    for (Index p = 0; p < out_rows; ++p) {
        const Index a = 2 * p;
        const Index b = std::min(a + 1, x.rows - 1);
        const T* ra = x.row(a);
        const T* rb = x.row(b);
        T* orow = out.row(p);
        for (Index c = 0; c < x.cols; ++c) {
            if (rb[c] > ra[c]) {
                orow[c] = rb[c];
                if (argmax) (*argmax)[static_cast<std::size_t>(p * x.cols + c)] = b;
            } else {
                orow[c] = ra[c];
                if (argmax) (*argmax)[static_cast<std::size_t>(p * x.cols + c)] = a;
            }
        }
    }
    return out;
}

template <class T>
MatT<T> max_pool1d_backward(Index in_rows, const std::vector<Index>& argmax, const MatT<T>& gout) {
    MatT<T> gin(in_rows, gout.cols);
    for (Index p = 0; p < gout.rows; ++p) {
        const T* gr = gout.row(p);
        for (Index c = 0; c < gout.cols; ++c)
            gin.at(argmax[static_cast<std::size_t>(p * gout.cols + c)], c) += gr[c];
    }
    return gin;
}

// Split points for nearest-neighbour upsampling: source frame i covers
// output rows [bound(i), bound(i+1)) with bound(i) = round(i*target/len).
inline Index upsample_bound(Index i, Index in_len, Index target_len) {
    return static_cast<Index>(std::llround(static_cast<double>(i) * static_cast<double>(target_len) /
                                           static_cast<double>(in_len)));
}

template <class T>
MatT<T> upsample_repeat(const MatT<T>& x, Index target_len) {
    if (target_len < x.rows)
        throw ShapeError("upsample_repeat: target length " + std::to_string(target_len) +
                         " < input length " + std::to_string(x.rows));
    MatT<T> out(target_len, x.cols);
    for (Index i = 0; i < x.rows; ++i) {
        const Index lo = upsample_bound(i, x.rows, target_len);
        const Index hi = upsample_bound(i + 1, x.rows, target_len);
        for (Index t = lo; t < hi; ++t)
            std::copy(x.row(i), x.row(i) + x.cols, out.row(t));
    }
    return out;
}

template <class T>
MatT<T> upsample_repeat_backward(Index in_rows, const MatT<T>& gout) {
    MatT<T> gin(in_rows, gout.cols);
    for (Index i = 0; i < in_rows; ++i) {
        const Index lo = upsample_bound(i, in_rows, gout.rows);
        const Index hi = upsample_bound(i + 1, in_rows, gout.rows);
        T* grow = gin.row(i);
        for (Index t = lo; t < hi; ++t) {
            const T* gr = gout.row(t);
            for (Index c = 0; c < gout.cols; ++c) grow[c] += gr[c];
        }
    }
    return gin;
}

}  // namespace surgact
