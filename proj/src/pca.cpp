#include "surgact/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "surgact/error.hpp"
#include "surgact/kernels.hpp"

namespace surgact {

void jacobi_eigen_symmetric(const Mat& sym, std::vector<double>& eigenvalues, Mat& eigenvectors) {
    require_shape(sym.rows == sym.cols, "jacobi_eigen", sym.shape_str(), sym.shape_str());
    const Index n = sym.rows;
    Mat a = sym;
    Mat v(n, n);
    for (Index i = 0; i < n; ++i) v.at(i, i) = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off < 1e-22) break;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Index i = 0; i < n; ++i) {
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (Index i = 0; i < n; ++i) {
                    const double api = a.at(p, i), aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
                for (Index i = 0; i < n; ++i) {
                    const double vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * viq;
                    v.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index(0));
    std::sort(order.begin(), order.end(), [&](Index i, Index j) { return a.at(i, i) > a.at(j, j); });
    eigenvalues.resize(static_cast<std::size_t>(n));
    eigenvectors = Mat(n, n);
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        eigenvalues[static_cast<std::size_t>(k)] = a.at(src, src);
        for (Index i = 0; i < n; ++i) eigenvectors.at(i, k) = v.at(i, src);
    }
}

PcaBasis pca_fit(const Mat& data, Index components) {
    const Index n = data.rows, d = data.cols;
    if (components > d)
        throw ConfigError("pca_fit: " + std::to_string(components) + " components > " +
                          std::to_string(d) + " input dims");
    if (n <= components)
        throw ConfigError("pca_fit: need more samples (" + std::to_string(n) + ") than components (" +
                          std::to_string(components) + ")");

    PcaBasis basis;
    basis.mean = Mat(1, d);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < d; ++j) basis.mean.at(0, j) += data.at(i, j);
    for (Index j = 0; j < d; ++j) basis.mean.at(0, j) /= static_cast<double>(n);

    Mat cov(d, d);
    for (Index i = 0; i < n; ++i) {
        for (Index a = 0; a < d; ++a) {
            const double ca = data.at(i, a) - basis.mean.at(0, a);
            for (Index b = a; b < d; ++b)
                cov.at(a, b) += ca * (data.at(i, b) - basis.mean.at(0, b));
        }
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    for (Index a = 0; a < d; ++a)
        for (Index b = a; b < d; ++b) {
            cov.at(a, b) *= inv;
            cov.at(b, a) = cov.at(a, b);
        }

    std::vector<double> eigvals;
    Mat eigvecs;
    jacobi_eigen_symmetric(cov, eigvals, eigvecs);

    basis.components = Mat(d, components);
    basis.eigenvalues.assign(eigvals.begin(), eigvals.begin() + components);
    for (Index j = 0; j < components; ++j)
        for (Index i = 0; i < d; ++i) basis.components.at(i, j) = eigvecs.at(i, j);
    return basis;
}

Mat pca_transform(const PcaBasis& basis, const Mat& x) {
    require_shape(x.cols == basis.in_dim(), "pca_transform", x.shape_str(),
                  basis.components.shape_str());
    Mat centered = x;
    for (Index i = 0; i < x.rows; ++i)
        for (Index j = 0; j < x.cols; ++j) centered.at(i, j) -= basis.mean.at(0, j);
    return matmul(centered, basis.components);
}

}  // namespace surgact
