#pragma once

// Low-level dense kernels shared by the double-precision training path and
// the single-precision inference path. Loops are ordered row-major ikj so
// the compiler can vectorize the innermost accumulation.

#include <algorithm>
#include <cmath>

#include "surgact/tensor.hpp"

namespace surgact {

template <class T>
MatT<T> matmul(const MatT<T>& a, const MatT<T>& b) {
    require_shape(a.cols == b.rows, "matmul", a.shape_str(), b.shape_str());
    MatT<T> out(a.rows, b.cols);
    for (Index i = 0; i < a.rows; ++i) {
        const T* arow = a.row(i);
        T* orow = out.row(i);
        for (Index k = 0; k < a.cols; ++k) {
            const T aik = arow[k];
            const T* brow = b.row(k);
            for (Index j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

// out += scale * a^T b   (a: k x m, b: k x n, out: m x n)
template <class T>
void matmul_tn_acc(const MatT<T>& a, const MatT<T>& b, MatT<T>& out, T scale = T(1)) {
    require_shape(a.rows == b.rows && out.rows == a.cols && out.cols == b.cols, "matmul_tn",
                  a.shape_str(), b.shape_str());
    for (Index k = 0; k < a.rows; ++k) {
        const T* arow = a.row(k);
        const T* brow = b.row(k);
        for (Index i = 0; i < a.cols; ++i) {
            const T aik = scale * arow[i];
            T* orow = out.row(i);
            for (Index j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
        }
    }
}

// a b^T   (a: m x k, b: n x k) -> m x n
template <class T>
MatT<T> matmul_nt(const MatT<T>& a, const MatT<T>& b) {
    require_shape(a.cols == b.cols, "matmul_nt", a.shape_str(), b.shape_str());
    MatT<T> out(a.rows, b.rows);
    for (Index i = 0; i < a.rows; ++i) {
        const T* arow = a.row(i);
        T* orow = out.row(i);
        for (Index j = 0; j < b.rows; ++j) {
            const T* brow = b.row(j);
            T acc = T(0);
            for (Index k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
            orow[j] = acc;
        }
    }
    return out;
}

template <class T>
void add_inplace(MatT<T>& a, const MatT<T>& b) {
    require_shape(a.same_shape(b), "add", a.shape_str(), b.shape_str());
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
}

template <class T>
void add_row_broadcast(MatT<T>& a, const MatT<T>& bias) {
    require_shape(bias.rows == 1 && bias.cols == a.cols, "bias add", a.shape_str(), bias.shape_str());
    for (Index i = 0; i < a.rows; ++i) {
        T* arow = a.row(i);
        const T* b = bias.row(0);
        for (Index j = 0; j < a.cols; ++j) arow[j] += b[j];
    }
}

template <class T>
void scale_inplace(MatT<T>& a, T s) {
    for (auto& v : a.data) v *= s;
}

// Row-wise softmax with max subtraction; rows come out non-negative and
// summing to 1 regardless of input magnitude.
template <class T>
MatT<T> softmax_rows(const MatT<T>& x) {
    MatT<T> out(x.rows, x.cols);
    for (Index i = 0; i < x.rows; ++i) {
        const T* xr = x.row(i);
        T* orow = out.row(i);
        T mx = xr[0];
        for (Index j = 1; j < x.cols; ++j) mx = std::max(mx, xr[j]);
        T sum = T(0);
        for (Index j = 0; j < x.cols; ++j) {
            orow[j] = std::exp(xr[j] - mx);
            sum += orow[j];
        }
        const T inv = T(1) / sum;
        for (Index j = 0; j < x.cols; ++j) orow[j] *= inv;
    }
    return out;
}

// Given s = softmax_rows(x) and dL/ds, return dL/dx.
template <class T>
MatT<T> softmax_rows_backward(const MatT<T>& s, const MatT<T>& gout) {
    require_shape(s.same_shape(gout), "softmax backward", s.shape_str(), gout.shape_str());
    MatT<T> gin(s.rows, s.cols);
    for (Index i = 0; i < s.rows; ++i) {
        const T* sr = s.row(i);
        const T* gr = gout.row(i);
        T dot = T(0);
        for (Index j = 0; j < s.cols; ++j) dot += sr[j] * gr[j];
        T* out = gin.row(i);
        for (Index j = 0; j < s.cols; ++j) out[j] = sr[j] * (gr[j] - dot);
    }
    return gin;
}

template <class T>
MatT<T> relu(const MatT<T>& x) {
    MatT<T> out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.data.size(); ++i) out.data[i] = x.data[i] > T(0) ? x.data[i] : T(0);
    return out;
}

template <class T>
MatT<T> relu_backward(const MatT<T>& x, const MatT<T>& gout) {
    MatT<T> gin(x.rows, x.cols);
    for (std::size_t i = 0; i < x.data.size(); ++i) gin.data[i] = x.data[i] > T(0) ? gout.data[i] : T(0);
    return gin;
}

// Sinusoidal position table: pe[t, 2i] = sin(t / 10000^(2i/d)),
// pe[t, 2i+1] = cos of the same argument.
template <class T>
MatT<T> positional_encoding(Index len, Index d) {
    MatT<T> pe(len, d);
    for (Index t = 0; t < len; ++t) {
        T* row = pe.row(t);
        for (Index j = 0; j < d; j += 2) {
            const double expo = static_cast<double>(j) / static_cast<double>(d);
            const double inv = std::pow(10000.0, -expo);
            row[j] = static_cast<T>(std::sin(t * inv));
            if (j + 1 < d) row[j + 1] = static_cast<T>(std::cos(t * inv));
        }
    }
    return pe;
}

}  // namespace surgact
