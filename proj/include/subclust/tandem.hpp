#pragma once

#include <cstddef>
#include <vector>

#include "subclust/core_model.hpp"
#include "subclust/kmeans.hpp"

namespace subclust {

struct PcaResult {
    /// Top-q eigenvectors of the covariance (denominator n).
    Loading loading;
    /// X_centered·A.
    Matrix scores;
    /// All p covariance eigenvalues, descending.
    std::vector<double> eigenvalues;
    std::vector<double> center;

    /// Sum of the top-q eigenvalues.
    double explained_variance() const;
    /// explained_variance() / trace of the covariance.
    double explained_ratio() const;
};

/// Principal components of the column-centered data. InfeasibleError for q ≥ p.
PcaResult pca(const DataMatrix& x, std::size_t q);

/// PCA to q dimensions, then k-means on the scores. The returned loss is the
/// k-means loss in score space, which equals fkm_objective on the centered data
/// at the returned (loading, centroids).
FitResult tandem_fit(const DataMatrix& x, std::size_t k, std::size_t q, const KMeansConfig& cfg);

}  // namespace subclust
