#pragma once

// Helpers shared by kmeans, fkm, rkm and tandem.

#include <cstddef>
#include <vector>

#include "subclust/core_model.hpp"
#include "subclust/matrix.hpp"
#include "subclust/random.hpp"

namespace subclust::detail {

/// Labels i mod k, shuffled: cluster sizes differ by at most one.
std::vector<std::size_t> balanced_partition(std::size_t n, std::size_t k, Rng& rng);

/// k distinct indices drawn uniformly from 0..n-1, in draw order.
std::vector<std::size_t> distinct_indices(std::size_t n, std::size_t k, Rng& rng);

/// Moves points into empty clusters until every cluster has a member. Each empty
/// cluster (lowest index first) receives the point with the largest `dist` among
/// clusters that keep at least one member; ties go to the lowest point index.
/// `dist` is the per-point squared distance to its current center; a moved point
/// gets 0. Returns the number of moves.
std::size_t repair_empty_clusters(std::vector<std::size_t>& labels, std::vector<double>& dist,
                                  std::size_t k);

/// k×cols matrix of row means per cluster. EmptyClusterError if a cluster has
/// no member.
Matrix cluster_means(const Matrix& rows, const std::vector<std::size_t>& labels, std::size_t k);

/// Nearest row of `centers` for every row of `points`; fills labels and dist.
void assign_nearest(const Matrix& points, const Matrix& centers, std::vector<std::size_t>& labels,
                    std::vector<double>& dist);

}  // namespace subclust::detail
