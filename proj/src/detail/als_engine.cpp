#include "detail/als_engine.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "detail/clustering.hpp"
#include "subclust/error.hpp"
#include "subclust/kernels.hpp"
#include "subclust/linalg.hpp"
#include "subclust/parallel.hpp"
#include "subclust/random.hpp"

namespace subclust {

void AlsConfig::validate(std::size_t n, std::size_t p) const {
    if (k < 1) throw InfeasibleError("k must be >= 1");
    if (n < k) throw InfeasibleError("n < k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    if (q < 1 || q >= std::min(p, n)) {
        throw InfeasibleError("q must satisfy 1 <= q < min(p, n) (q=" + std::to_string(q) +
                              ", p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
    }
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
    if (restarts < 1) throw DomainError("restarts must be >= 1");
}

namespace detail {

Matrix within_scatter(const Matrix& x, const Matrix& means, const std::vector<std::size_t>& labels) {
    const std::size_t p = x.cols();
    const auto& kern = kernels::active();
    Matrix w(p, p);
    std::vector<double> r(p);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto xi = x.row(i);
        const auto mi = means.row(labels[i]);
        for (std::size_t j = 0; j < p; ++j) r[j] = xi[j] - mi[j];
        // Upper triangle only; mirrored below.
        for (std::size_t a = 0; a < p; ++a) {
            if (r[a] != 0.0) kern.axpy(r[a], r.data() + a, w.row(a).data() + a, p - a);
        }
    }
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < a; ++b) w(a, b) = w(b, a);
    return w;
}

Matrix between_scatter(const Matrix& means, const std::vector<std::size_t>& counts) {
    const std::size_t p = means.cols();
    const auto& kern = kernels::active();
    Matrix b(p, p);
    for (std::size_t j = 0; j < means.rows(); ++j) {
        const auto m = means.row(j);
        const double nj = static_cast<double>(counts[j]);
        for (std::size_t a = 0; a < p; ++a) {
            if (m[a] != 0.0) kern.axpy(nj * m[a], m.data(), b.row(a).data(), p);
        }
    }
    return b;
}

Loading update_loading(AlsMethod method, const Matrix& x, const Matrix& means,
                       const std::vector<std::size_t>& labels, std::size_t q) {
    if (method == AlsMethod::fkm) {
        Matrix m = within_scatter(x, means, labels);
        for (double& v : m.values()) v = -v;
        return Loading(sym_eig(m).leading(q));
    }
    std::vector<std::size_t> counts(means.rows(), 0);
    for (std::size_t l : labels) ++counts[l];
    return Loading(sym_eig(between_scatter(means, counts)).leading(q));
}

namespace {

struct Run {
    std::optional<Loading> loading;
    std::optional<Centroids> centroids;
    std::vector<std::size_t> labels;
    double loss = 0.0;
    int iterations = 0;
    std::vector<double> trace;
    double max_increase = 0.0;
};

void assign(AlsMethod method, const DataMatrix& x, const Loading& a, const Centroids& f,
            std::vector<std::size_t>& labels, std::vector<double>& dist) {
    if (method == AlsMethod::fkm) {
        assign_nearest(project_rows(x, a), f.values(), labels, dist);
    } else {
        assign_nearest(x.values(), f.values() * a.transposed(), labels, dist);
    }
}

double objective_at(AlsMethod method, const DataMatrix& x, const Loading& a, const Centroids& f,
                    const Membership& u) {
    return method == AlsMethod::fkm ? fkm_objective_at(x, a, f, u) : rkm_objective_at(x, a, f, u);
}

Run single_run(AlsMethod method, const DataMatrix& x, const AlsConfig& cfg, int restart,
               const AlsObserver& observer) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    Run run;
    // Step 0: random orthonormal A; centers are the projections of k distinct
    // objects drawn at random.
    run.loading.emplace(random_loading(x.p(), cfg.q, rng));
    Matrix seeds(cfg.k, x.p());
    const auto picks = distinct_indices(x.n(), cfg.k, rng);
    for (std::size_t j = 0; j < cfg.k; ++j) std::copy_n(x.row(picks[j]).begin(), x.p(), seeds.row(j).begin());
    run.centroids.emplace(seeds * run.loading->values());

    std::vector<double> dist;
    assign(method, x, *run.loading, *run.centroids, run.labels, dist);
    double objective = objective_at(method, x, *run.loading, *run.centroids, Membership(run.labels, cfg.k));
    run.trace.push_back(objective);
    if (observer) {
        const Membership u(run.labels, cfg.k);
        observer({restart, 0, x, *run.loading, *run.centroids, u, objective});
    }

    Matrix means;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        if (it > 1) assign(method, x, *run.loading, *run.centroids, run.labels, dist);  // Step 1
        repair_empty_clusters(run.labels, dist, cfg.k);
        means = cluster_means(x.values(), run.labels, cfg.k);
        run.loading.emplace(update_loading(method, x.values(), means, run.labels, cfg.q));  // Step 2
        run.centroids.emplace(means * run.loading->values());                                // Step 3

        const Membership u(run.labels, cfg.k);
        const double next = objective_at(method, x, *run.loading, *run.centroids, u);  // Step 4
        run.trace.push_back(next);
        run.iterations = it;
        run.max_increase = std::max(run.max_increase, next - objective);
        if (observer) observer({restart, it, x, *run.loading, *run.centroids, u, next});
        const bool converged = next == 0.0 || objective - next < cfg.tol * objective;
        objective = next;
        if (converged) break;
    }

    assign(method, x, *run.loading, *run.centroids, run.labels, dist);
    run.loss = method == AlsMethod::fkm ? fkm_objective(x, *run.loading, *run.centroids)
                                        : rkm_objective(x, *run.loading, *run.centroids);
    return run;
}

}  // namespace

FitResult als_fit(AlsMethod method, const DataMatrix& data, const AlsConfig& cfg, const AlsObserver& observer) {
    cfg.validate(data.n(), data.p());
    std::vector<double> center(data.p(), 0.0);
    if (cfg.center_columns) center = data.column_means();
    const DataMatrix x = cfg.center_columns ? data.shifted(center) : data;

    const auto restarts = static_cast<std::size_t>(cfg.restarts);
    std::vector<Run> runs(restarts);
    auto body = [&](std::size_t r) { runs[r] = single_run(method, x, cfg, static_cast<int>(r), observer); };
    if (observer) {
        for (std::size_t r = 0; r < restarts; ++r) body(r);
    } else {
        parallel_for(restarts, body);
    }

    std::size_t best = 0;
    double max_increase = 0.0;
    for (std::size_t r = 0; r < restarts; ++r) {
        if (runs[r].loss < runs[best].loss) best = r;
        max_increase = std::max(max_increase, runs[r].max_increase);
    }
    Run& win = runs[best];
    return FitResult{
        .loading = std::move(*win.loading),
        .centroids = std::move(*win.centroids),
        .labels = Membership(std::move(win.labels), cfg.k),
        .loss = win.loss,
        .iterations = win.iterations,
        .restarts_used = cfg.restarts,
        .seed = cfg.seed,
        .center = std::move(center),
        .trace = std::move(win.trace),
        .max_objective_increase = max_increase,
    };
}

}  // namespace detail
}  // namespace subclust
