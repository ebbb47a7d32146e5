#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "subclust/error.hpp"
#include "subclust/fkm.hpp"
#include "subclust/linalg.hpp"
#include "subclust/metrics.hpp"
#include "subclust/rkm.hpp"

using namespace subclust;

namespace {

RkmConfig config(std::size_t k, std::size_t q, std::uint64_t seed = 0, int restarts = 50) {
    RkmConfig cfg;
    cfg.k = k;
    cfg.q = q;
    cfg.seed = seed;
    cfg.restarts = restarts;
    return cfg;
}

}  // namespace

TEST_CASE("rkm_assign") {
    const Loading a(Matrix{{1}, {0}});
    const Centroids f(Matrix{{1}, {-1}});
    CHECK(rkm_assign(DataMatrix(Matrix{{1, 1}, {-1, 1}}), a, f).labels() == std::vector<std::size_t>{0, 1});
    CHECK(rkm_assign(DataMatrix(Matrix{{-1, 0}}), a, f)[0] == 1);
    CHECK(rkm_assign(DataMatrix(Matrix{{4, 4}, {2, 2}}), a, Centroids(Matrix{{0}})).labels() ==
          std::vector<std::size_t>{0, 0});
}

TEST_CASE("rkm_update exact model") {
    std::mt19937_64 rng(5);
    const Loading a(oracle::orthonormal_columns(4, 2, rng));
    const Centroids f(oracle::gaussian(3, 2, rng));
    const Membership u({0, 1, 2, 0, 1, 2, 2}, 3);
    const DataMatrix x(u.indicator() * f.values() * a.values().transposed());
    const auto up = rkm_update(x, u, 2);
    CHECK(rkm_objective_at(x, up.loading, up.centroids, u) <= 1e-20);
}

TEST_CASE("rkm_update with one cluster") {
    std::mt19937_64 rng(6);
    const DataMatrix x(oracle::gaussian(9, 3, rng));
    const Membership u(std::vector<std::size_t>(9, 0), 1);
    const auto up = rkm_update(x, u, 1);
    const auto means = x.column_means();
    Matrix outer(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) outer(i, j) = 9.0 * means[i] * means[j];
    const auto eig = sym_eig(outer);
    double align = 0, proj = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        align += eig.eigenvectors(i, 0) * up.loading.values()(i, 0);
        proj += means[i] * up.loading.values()(i, 0);
    }
    CHECK(std::abs(align) == doctest::Approx(1.0));
    CHECK(up.centroids.values()(0, 0) == doctest::Approx(proj));
}

TEST_CASE("rkm_update beats random parameters for the same membership") {
    std::mt19937_64 rng(7);
    const DataMatrix x(oracle::gaussian(10, 4, rng));
    const Membership u({0, 1, 2, 0, 1, 2, 0, 1, 2, 0}, 3);
    const auto up = rkm_update(x, u, 2);
    const double best = rkm_objective_at(x, up.loading, up.centroids, u);
    for (int t = 0; t < 1000; ++t) {
        const Loading a(oracle::orthonormal_columns(4, 2, rng));
        const Centroids f(oracle::gaussian(3, 2, rng));
        CHECK(best <= rkm_objective_at(x, a, f, u) + 1e-12);
    }
}

TEST_CASE("rkm_fit noise-free data") {
    std::mt19937_64 rng(8);
    const Loading a(oracle::orthonormal_columns(5, 2, rng));
    const Centroids f(Matrix{{4, 0}, {-4, 1}, {0, 5}});
    std::vector<std::size_t> labels(30);
    for (std::size_t i = 0; i < 30; ++i) labels[i] = i % 3;
    const Membership u(labels, 3);
    const DataMatrix x(u.indicator() * f.values() * a.values().transposed());
    const auto fit = rkm_fit(x, config(3, 2));
    CHECK(fit.loss <= 1e-20);
    CHECK(adjusted_rand_index(fit.labels, u) == 1.0);
}

TEST_CASE("rkm identity holds at every iterate") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        const DataMatrix x(oracle::gaussian(25, 5, rng));
        int checks = 0;
        const auto fit = rkm_fit(x, config(3, 2, static_cast<std::uint64_t>(t), 3), [&](const AlsIterate& it) {
            const auto d = rkm_decomposition_check(it.data, it.loading, it.centroids, it.labels);
            CHECK(d.holds());
            CHECK(it.objective == doctest::Approx(d.total / static_cast<double>(it.data.n())).epsilon(1e-12));
            // RKM loss minus the PCA term is the FKM loss at the same (A, F, U)
            CHECK(d.total - d.pca_term ==
                  doctest::Approx(fkm_objective_at(it.data, it.loading, it.centroids, it.labels) *
                                  static_cast<double>(it.data.n()))
                      .epsilon(1e-8)
                      .scale(1 + d.total));
            ++checks;
        });
        CHECK(checks > 0);
        CHECK(fit.max_objective_increase <= 1e-12);
        const DataMatrix xc = x.shifted(fit.center);
        CHECK(fit.loss == doctest::Approx(rkm_objective(xc, fit.loading, fit.centroids)).epsilon(1e-12));
    }
}

TEST_CASE("rkm_fit reaches the exhaustive optimum on tiny instances") {
    std::mt19937_64 rng(78);
    int hits = 0;
    for (int t = 0; t < 100; ++t) {
        const Matrix m = oracle::gaussian(7, 3, rng);
        const auto fit = rkm_fit(DataMatrix(m), config(2, 1, static_cast<std::uint64_t>(t)));
        const double best = oracle::rkm_global_optimum(oracle::centered(m), 2, 1);
        CHECK(fit.loss >= best - 1e-12);
        if (std::abs(fit.loss - best) <= 1e-9) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("rkm_fit errors") {
    const DataMatrix x(Matrix{{1, 2}, {3, 4}, {5, 7}});
    CHECK_THROWS_AS(rkm_fit(x, config(4, 1)), InfeasibleError);
    CHECK_THROWS_AS(rkm_fit(x, config(2, 2)), InfeasibleError);
}
