#pragma once

// Settings and iterate hooks shared by the two alternating least-squares
// methods (factorial and reduced k-means).

#include <cstddef>
#include <cstdint>
#include <functional>

#include "subclust/core_model.hpp"

namespace subclust {

struct AlsConfig {
    std::size_t k = 2;
    std::size_t q = 1;
    int max_iter = 500;
    /// Converged once the objective decreases by less than tol·(previous value).
    double tol = 1e-10;
    int restarts = 50;
    std::uint64_t seed = 0;
    /// Subtract column means before fitting.
    bool center_columns = true;

    /// InfeasibleError unless 1 ≤ k ≤ n and 1 ≤ q < min(p, n); DomainError for
    /// non-positive max_iter, tol or restarts.
    void validate(std::size_t n, std::size_t p) const;
};

using FkmConfig = AlsConfig;
using RkmConfig = AlsConfig;

/// State after Step 3 (iteration 0) or after a Step-4 check (iteration ≥ 1).
struct AlsIterate {
    int restart;
    int iteration;
    const DataMatrix& data;  ///< the data actually fitted (centered if requested)
    const Loading& loading;
    const Centroids& centroids;
    const Membership& labels;
    double objective;
};

/// Called for every iterate of every restart. When an observer is supplied the
/// restarts run sequentially on the calling thread.
using AlsObserver = std::function<void(const AlsIterate&)>;

}  // namespace subclust
