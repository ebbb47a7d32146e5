#pragma once

// Independent reimplementations used as test oracles. They share no code with
// the library beyond the Matrix container.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "subclust/matrix.hpp"

namespace oracle {

inline Eigen::MatrixXd to_eigen(const subclust::Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline subclust::Matrix from_eigen(const Eigen::MatrixXd& e) {
    subclust::Matrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

inline Eigen::MatrixXd centered(const subclust::Matrix& x) {
    Eigen::MatrixXd e = to_eigen(x);
    return e.rowwise() - e.colwise().mean();
}

// Calls f(labels) for every labelling of n objects into exactly k nonempty,
// canonically numbered groups (first occurrence order), so each partition once.
template <class F>
void for_each_partition(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> labels(n, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
        if (n - i < k - used) return;
        if (i == n) {
            if (used == k) f(labels);
            return;
        }
        for (std::size_t c = 0; c <= std::min(used, k - 1); ++c) {
            labels[i] = c;
            self(self, i + 1, std::max(used, c + 1));
        }
    };
    rec(rec, 0, 0);
}

inline Eigen::MatrixXd projector(const std::vector<std::size_t>& labels, std::size_t k) {
    const std::size_t n = labels.size();
    std::vector<double> counts(k, 0.0);
    for (auto l : labels) counts[l] += 1.0;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (labels[i] == labels[j]) p(i, j) = 1.0 / counts[labels[i]];
    return p;
}

// Global FKM optimum over all partitions for centered data xc:
// min_U (1/n)·(sum of the q smallest eigenvalues of Xᵀ(I − P_U)X).
inline double fkm_global_optimum(const Eigen::MatrixXd& xc, std::size_t k, std::size_t q) {
    const std::size_t n = xc.rows();
    double best = std::numeric_limits<double>::infinity();
    for_each_partition(n, k, [&](const std::vector<std::size_t>& labels) {
        const Eigen::MatrixXd w = xc.transpose() * (Eigen::MatrixXd::Identity(n, n) - projector(labels, k)) * xc;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
        double s = 0.0;
        for (std::size_t i = 0; i < q; ++i) s += es.eigenvalues()(i);
        best = std::min(best, s / static_cast<double>(n));
    });
    return best;
}

// Global RKM optimum: min_U (1/n)·(‖X‖² − sum of the q largest eigenvalues of XᵀP_U X).
inline double rkm_global_optimum(const Eigen::MatrixXd& xc, std::size_t k, std::size_t q) {
    const std::size_t n = xc.rows();
    const double total = xc.squaredNorm();
    double best = std::numeric_limits<double>::infinity();
    for_each_partition(n, k, [&](const std::vector<std::size_t>& labels) {
        const Eigen::MatrixXd b = xc.transpose() * projector(labels, k) * xc;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
        double s = 0.0;
        for (std::size_t i = 0; i < q; ++i) s += es.eigenvalues()(b.rows() - 1 - i);
        best = std::min(best, (total - s) / static_cast<double>(n));
    });
    return best;
}

// Global k-means optimum on raw rows.
inline double kmeans_global_optimum(const Eigen::MatrixXd& y, std::size_t k) {
    const std::size_t n = y.rows();
    double best = std::numeric_limits<double>::infinity();
    for_each_partition(n, k, [&](const std::vector<std::size_t>& labels) {
        Eigen::MatrixXd means = Eigen::MatrixXd::Zero(k, y.cols());
        std::vector<double> counts(k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            means.row(labels[i]) += y.row(i);
            counts[labels[i]] += 1.0;
        }
        for (std::size_t j = 0; j < k; ++j) means.row(j) /= counts[j];
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += (y.row(i) - means.row(labels[i])).squaredNorm();
        best = std::min(best, s / static_cast<double>(n));
    });
    return best;
}

// Pair-counting Rand index adjusted by its permutation expectation, computed
// from the four pair categories directly.
inline double ari_pairs(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    const std::size_t n = a.size();
    double both = 0, only_a = 0, only_b = 0, neither = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool sa = a[i] == a[j];
            const bool sb = b[i] == b[j];
            if (sa && sb) both += 1;
            else if (sa) only_a += 1;
            else if (sb) only_b += 1;
            else neither += 1;
        }
    const double pairs = both + only_a + only_b + neither;
    const double pa = both + only_a;
    const double pb = both + only_b;
    const double expected = pa * pb / pairs;
    const double max_index = 0.5 * (pa + pb);
    if (max_index == expected) return 1.0;
    return (both - expected) / (max_index - expected);
}

inline double directed_hausdorff(const subclust::Matrix& f1, const subclust::Matrix& f2) {
    double worst = 0.0;
    for (std::size_t a = 0; a < f1.rows(); ++a) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < f2.rows(); ++b) {
            double s = 0.0;
            for (std::size_t c = 0; c < f1.cols(); ++c) {
                const double d = f1(a, c) - f2(b, c);
                s += d * d;
            }
            nearest = std::min(nearest, std::sqrt(s));
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

inline double frobenius(const subclust::Matrix& a, const subclust::Matrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
    return std::sqrt(s);
}

// Haar orthogonal matrix from the QR of a Gaussian draw (sign-corrected).
inline subclust::Matrix haar_orthogonal(std::size_t q, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd g(q, q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd qm = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < q; ++j)
        if (r(j, j) < 0) qm.col(j) *= -1.0;
    return from_eigen(qm);
}

inline subclust::Matrix gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double sd = 1.0) {
    std::normal_distribution<double> normal(0.0, sd);
    subclust::Matrix m(rows, cols);
    for (double& v : m.values()) v = normal(rng);
    return m;
}

inline subclust::Matrix orthonormal_columns(std::size_t p, std::size_t q, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(to_eigen(gaussian(p, q, rng)));
    Eigen::MatrixXd qm = qr.householderQ() * Eigen::MatrixXd::Identity(p, q);
    return from_eigen(qm);
}

}  // namespace oracle
