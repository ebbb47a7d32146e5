#include "detail/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "subclust/error.hpp"
#include "subclust/kernels.hpp"

namespace subclust::detail {

std::vector<std::size_t> balanced_partition(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i % k;
    // Fisher–Yates with our own index draw so the permutation is the same on
    // every standard library.
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(labels[i - 1], labels[std::min(j, i - 1)]);
    }
    return labels;
}

std::vector<std::size_t> distinct_indices(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n - i));
        std::swap(pool[i], pool[std::min(j, n - 1)]);
    }
    pool.resize(k);
    return pool;
}

std::size_t repair_empty_clusters(std::vector<std::size_t>& labels, std::vector<double>& dist,
                                  std::size_t k) {
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t l : labels) ++counts[l];
    std::size_t moves = 0;
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] != 0) continue;
        std::size_t best = labels.size();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (counts[labels[i]] < 2) continue;
            if (best == labels.size() || dist[i] > dist[best]) best = i;
        }
        if (best == labels.size()) throw EmptyClusterError("cannot fill empty cluster: fewer objects than clusters");
        --counts[labels[best]];
        labels[best] = j;
        counts[j] = 1;
        dist[best] = 0.0;
        ++moves;
    }
    return moves;
}

Matrix cluster_means(const Matrix& rows, const std::vector<std::size_t>& labels, std::size_t k) {
    const auto& kern = kernels::active();
    Matrix sums(k, rows.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        kern.axpy(1.0, rows.row(i).data(), sums.row(labels[i]).data(), rows.cols());
        ++counts[labels[i]];
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] == 0) throw EmptyClusterError("cluster " + std::to_string(j + 1) + " has no members");
        const double inv = static_cast<double>(counts[j]);
        for (double& v : sums.row(j)) v /= inv;
    }
    return sums;
}

void assign_nearest(const Matrix& points, const Matrix& centers, std::vector<std::size_t>& labels,
                    std::vector<double>& dist) {
    const auto& kern = kernels::active();
    labels.resize(points.rows());
    dist.resize(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        labels[i] = kern.nearest(points.row(i).data(), centers.data(), centers.rows(), centers.cols(), &dist[i]);
    }
}

}  // namespace subclust::detail
