#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "surgact/error.hpp"
#include "surgact/rng.hpp"

namespace surgact {

using Index = std::ptrdiff_t;

// Dense row-major matrix. A sequence of T frames with d features is T x d.
template <class T>
struct MatT {
    Index rows = 0;
    Index cols = 0;
    std::vector<T> data;

    MatT() = default;
    MatT(Index r, Index c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), T(0)) {}

    static MatT zeros(Index r, Index c) { return MatT(r, c); }

    T* row(Index r) { return data.data() + r * cols; }
    const T* row(Index r) const { return data.data() + r * cols; }

    T& at(Index r, Index c) { return data[static_cast<std::size_t>(r * cols + c)]; }
    const T& at(Index r, Index c) const { return data[static_cast<std::size_t>(r * cols + c)]; }

    bool same_shape(const MatT& o) const { return rows == o.rows && cols == o.cols; }

    std::string shape_str() const {
        return std::to_string(rows) + "x" + std::to_string(cols);
    }

    void fill(T v) { std::fill(data.begin(), data.end(), v); }

    bool all_finite() const {
        for (T v : data)
            if (!std::isfinite(static_cast<double>(v))) return false;
        return true;
    }

    template <class U>
    MatT<U> cast() const {
        MatT<U> out(rows, cols);
        for (std::size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
        return out;
    }
};

using Mat = MatT<double>;
using MatF = MatT<float>;

// Learnable tensor: value plus gradient storage of identical shape.
template <class T>
struct ParamT {
    MatT<T> value;
    MatT<T> grad;

    ParamT() = default;
    ParamT(Index r, Index c) : value(r, c), grad(r, c) {}

    void zero_grad() { grad.fill(T(0)); }

    void init_xavier(Rng& rng, double fan_in, double fan_out) {
        double bound = std::sqrt(6.0 / (fan_in + fan_out));
        for (auto& v : value.data) v = static_cast<T>(rng.uniform(-bound, bound));
    }
};

using Param = ParamT<double>;

inline void require_shape(bool ok, const std::string& what, const std::string& a, const std::string& b) {
    if (!ok) throw ShapeError(what + ": incompatible shapes " + a + " vs " + b);
}

template <class T>
void check_finite(const MatT<T>& m, const char* where) {
    if (!m.all_finite()) throw NumericError(std::string("non-finite value in ") + where);
}

}  // namespace surgact
