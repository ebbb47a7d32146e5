#include "subclust/kmeans.hpp"

#include <algorithm>
#include <optional>

#include "detail/clustering.hpp"
#include "subclust/error.hpp"
#include "subclust/kernels.hpp"
#include "subclust/parallel.hpp"
#include "subclust/random.hpp"

namespace subclust {

void KMeansConfig::validate() const {
    if (k < 1) throw InfeasibleError("kmeans: k must be >= 1");
    if (max_iter < 1) throw DomainError("kmeans: max_iter must be >= 1");
    if (!(tol > 0.0)) throw DomainError("kmeans: tol must be > 0");
    if (restarts < 1) throw DomainError("kmeans: restarts must be >= 1");
}

namespace {

struct Run {
    Matrix centers;
    std::vector<std::size_t> labels;
    double loss = 0.0;
    int iterations = 0;
    std::vector<double> trace;
    double max_increase = 0.0;
};

Matrix plusplus_centers(const Matrix& y, std::size_t k, Rng& rng) {
    const auto& kern = kernels::active();
    const std::size_t n = y.rows();
    Matrix centers(k, y.cols());
    std::vector<double> d2(n);
    auto pick = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    pick = std::min(pick, n - 1);
    std::copy_n(y.row(pick).begin(), y.cols(), centers.row(0).begin());
    for (std::size_t i = 0; i < n; ++i) d2[i] = kern.squared_distance(y.row(i).data(), centers.data(), y.cols());
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (double d : d2) total += d;
        if (total > 0.0) {
            const double target = uniform01(rng) * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)), n - 1);
        }
        std::copy_n(y.row(pick).begin(), y.cols(), centers.row(c).begin());
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], kern.squared_distance(y.row(i).data(), centers.row(c).data(), y.cols()));
        }
    }
    return centers;
}

double labelled_loss(const Matrix& y, const Matrix& centers, const std::vector<std::size_t>& labels) {
    const auto& kern = kernels::active();
    double sum = 0.0;
    for (std::size_t i = 0; i < y.rows(); ++i) {
        sum += kern.squared_distance(y.row(i).data(), centers.row(labels[i]).data(), y.cols());
    }
    return sum / static_cast<double>(y.rows());
}

Run lloyd(const Matrix& y, const KMeansConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    Run run;
    std::vector<double> dist;
    if (cfg.init == KMeansInit::plusplus) {
        run.centers = plusplus_centers(y, cfg.k, rng);
    } else {
        run.labels = detail::balanced_partition(y.rows(), cfg.k, rng);
        run.centers = detail::cluster_means(y, run.labels, cfg.k);
    }

    double prev = -1.0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        detail::assign_nearest(y, run.centers, run.labels, dist);
        detail::repair_empty_clusters(run.labels, dist, cfg.k);
        run.centers = detail::cluster_means(y, run.labels, cfg.k);
        const double loss = labelled_loss(y, run.centers, run.labels);
        run.trace.push_back(loss);
        run.iterations = it;
        if (prev >= 0.0) {
            run.max_increase = std::max(run.max_increase, loss - prev);
            if (prev - loss < cfg.tol * prev) break;
        }
        if (loss == 0.0) break;
        prev = loss;
    }
    detail::assign_nearest(y, run.centers, run.labels, dist);
    double sum = 0.0;
    for (double d : dist) sum += d;
    run.loss = sum / static_cast<double>(y.rows());
    return run;
}

}  // namespace

KMeansResult kmeans_fit(const Matrix& y, const KMeansConfig& cfg) {
    cfg.validate();
    if (y.rows() == 0 || y.cols() == 0) throw DimensionError("kmeans: empty input");
    if (!y.all_finite()) throw DomainError("kmeans: non-finite input");
    if (y.rows() < cfg.k) throw InfeasibleError("kmeans: n < k");

    const auto restarts = static_cast<std::size_t>(cfg.restarts);
    std::vector<std::optional<Run>> runs(restarts);
    parallel_for(restarts, [&](std::size_t r) { runs[r] = lloyd(y, cfg, derive_seed(cfg.seed, r)); });

    std::size_t best = 0;
    double max_increase = 0.0;
    for (std::size_t r = 0; r < restarts; ++r) {
        if (runs[r]->loss < runs[best]->loss) best = r;
        max_increase = std::max(max_increase, runs[r]->max_increase);
    }
    Run& win = *runs[best];
    return KMeansResult{
        .centroids = Centroids(std::move(win.centers)),
        .labels = Membership(std::move(win.labels), cfg.k),
        .loss = win.loss,
        .iterations = win.iterations,
        .restarts_used = cfg.restarts,
        .trace = std::move(win.trace),
        .max_objective_increase = max_increase,
    };
}

}  // namespace subclust
