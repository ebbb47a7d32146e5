#include "subclust/tandem.hpp"

#include <numeric>

#include "detail/als_engine.hpp"
#include "subclust/error.hpp"
#include "subclust/linalg.hpp"

namespace subclust {

double PcaResult::explained_variance() const {
    return std::accumulate(eigenvalues.begin(), eigenvalues.begin() + static_cast<std::ptrdiff_t>(loading.q()), 0.0);
}

double PcaResult::explained_ratio() const {
    const double total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
    return total > 0.0 ? explained_variance() / total : 0.0;
}

PcaResult pca(const DataMatrix& x, std::size_t q) {
    if (q < 1 || q >= x.p()) throw InfeasibleError("pca: need 1 <= q < p");
    std::vector<double> center = x.column_means();
    const DataMatrix centered = x.shifted(center);

    // Covariance as the scatter of rows about a single zero mean.
    const Matrix zero_mean(1, x.p());
    const std::vector<std::size_t> one_cluster(x.n(), 0);
    Matrix cov = detail::within_scatter(centered.values(), zero_mean, one_cluster);
    const double inv_n = 1.0 / static_cast<double>(x.n());
    for (double& v : cov.values()) v *= inv_n;

    SymEigResult eig = sym_eig(cov);
    Loading loading(eig.leading(q));
    Matrix scores = project_rows(centered, loading);
    return PcaResult{std::move(loading), std::move(scores), std::move(eig.eigenvalues), std::move(center)};
}

FitResult tandem_fit(const DataMatrix& x, std::size_t k, std::size_t q, const KMeansConfig& cfg) {
    PcaResult p = pca(x, q);
    KMeansConfig kcfg = cfg;
    kcfg.k = k;
    KMeansResult km = kmeans_fit(p.scores, kcfg);
    return FitResult{
        .loading = std::move(p.loading),
        .centroids = std::move(km.centroids),
        .labels = std::move(km.labels),
        .loss = km.loss,
        .iterations = km.iterations,
        .restarts_used = km.restarts_used,
        .seed = cfg.seed,
        .center = std::move(p.center),
        .trace = std::move(km.trace),
        .max_objective_increase = km.max_objective_increase,
    };
}

}  // namespace subclust
