#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subclust/core_model.hpp"
#include "subclust/matrix.hpp"

namespace subclust {

enum class KMeansInit { random_partition, plusplus };

struct KMeansConfig {
    std::size_t k = 2;
    int max_iter = 500;
    /// Stop when the relative loss decrease falls below this.
    double tol = 1e-10;
    int restarts = 50;
    KMeansInit init = KMeansInit::plusplus;
    std::uint64_t seed = 0;

    void validate() const;
};

struct KMeansResult {
    Centroids centroids;
    Membership labels;
    /// (1/n) Σ min_j ‖y_i − f_j‖² at the returned centroids.
    double loss = 0.0;
    int iterations = 0;
    int restarts_used = 0;
    /// Loss after every (assign, recenter) pair of the winning restart.
    std::vector<double> trace;
    double max_objective_increase = 0.0;
};

/// Lloyd's algorithm, best of cfg.restarts seeded runs (lowest loss, then
/// lowest restart index). Assignment ties go to the lowest cluster index; an
/// empty cluster is reseeded at the point farthest from its center.
///
/// Throws InfeasibleError for n < k and DomainError for non-finite input.
KMeansResult kmeans_fit(const Matrix& y, const KMeansConfig& cfg);

}  // namespace subclust
