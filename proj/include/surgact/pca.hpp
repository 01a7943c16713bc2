#pragma once

#include <vector>

#include "surgact/tensor.hpp"

namespace surgact {

// Principal component basis: per-feature mean and the top-k eigenvectors of
// the covariance, columns ordered by descending explained variance.
struct PcaBasis {
    Mat mean;                        // 1 x d
    Mat components;                  // d x k, orthonormal columns
    std::vector<double> eigenvalues; // k entries, descending

    Index in_dim() const { return components.rows; }
    Index out_dim() const { return components.cols; }
};

// Eigendecomposition of the sample covariance via cyclic Jacobi rotations.
// Requires N > components and components <= d.
PcaBasis pca_fit(const Mat& data, Index components);

// (x - mean) projected onto the basis columns; x is N x d.
Mat pca_transform(const PcaBasis& basis, const Mat& x);

// Full eigendecomposition of a symmetric matrix (ascending order not
// guaranteed; pairs are returned sorted descending by eigenvalue).
// Exposed for reuse; pca_fit is the intended entry point.
void jacobi_eigen_symmetric(const Mat& sym, std::vector<double>& eigenvalues, Mat& eigenvectors);

}  // namespace surgact
