#include "subclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "subclust/error.hpp"
#include "subclust/kernels.hpp"
#include "subclust/linalg.hpp"

namespace subclust {

ParamPoint::ParamPoint(Loading a, Centroids f) : loading(std::move(a)), centroids(std::move(f)) {
    if (loading.q() != centroids.q()) throw DimensionError("ParamPoint: loading and centroids disagree on q");
}

double frobenius_distance(const Loading& a1, const Loading& a2) {
    if (a1.p() != a2.p() || a1.q() != a2.q()) throw DimensionError("frobenius_distance: shape mismatch");
    return frobenius_norm(a1.values() - a2.values());
}

double hausdorff_distance(const Centroids& f1, const Centroids& f2) {
    if (f1.q() != f2.q()) throw DimensionError("hausdorff_distance: centers differ in dimension");
    const auto& kern = kernels::active();
    double worst = 0.0;
    for (std::size_t a = 0; a < f1.k(); ++a) {
        double d2 = 0.0;
        kern.nearest(f1.row(a).data(), f2.values().data(), f2.k(), f2.q(), &d2);
        worst = std::max(worst, d2);
    }
    return std::sqrt(worst);
}

double symmetric_hausdorff_distance(const Centroids& f1, const Centroids& f2) {
    return std::max(hausdorff_distance(f1, f2), hausdorff_distance(f2, f1));
}

double product_distance(const ParamPoint& t1, const ParamPoint& t2, HausdorffKind kind) {
    const double df = frobenius_distance(t1.loading, t2.loading);
    const double dh = kind == HausdorffKind::directed ? hausdorff_distance(t1.centroids, t2.centroids)
                                                      : symmetric_hausdorff_distance(t1.centroids, t2.centroids);
    return std::sqrt(df * df + dh * dh);
}

ParamPoint rotate(const ParamPoint& t, const Matrix& r) {
    const std::size_t q = t.loading.q();
    if (r.rows() != q || r.cols() != q) throw DimensionError("rotate: R must be q x q");
    const Matrix rt = r.transposed();
    // Rows of F are centers, so f ↦ Rf is F ↦ FRᵀ.
    return ParamPoint(Loading(t.loading.values() * rt), Centroids(t.centroids.values() * rt));
}

double aligned_distance(const ParamPoint& t1, const ParamPoint& t2, HausdorffKind kind) {
    if (t1.loading.p() != t2.loading.p() || t1.loading.q() != t2.loading.q()) {
        throw DimensionError("aligned_distance: parameter shapes differ");
    }
    const double at_identity = product_distance(t1, t2, kind);
    if (t1.loading.q() == 1) {
        const double flipped = product_distance(rotate(t1, Matrix{{-1.0}}), t2, kind);
        return std::min(at_identity, flipped);
    }
    const Matrix r = procrustes_rotation(t2.loading, t1.loading);
    return std::min(at_identity, product_distance(rotate(t1, r), t2, kind));
}

namespace {
inline double choose2(double m) { return 0.5 * m * (m - 1.0); }
}  // namespace

double adjusted_rand_index(const Membership& a, const Membership& b) {
    if (a.size() != b.size()) throw DimensionError("adjusted_rand_index: label vectors differ in length");
    const std::size_t n = a.size();
    std::vector<double> table(a.k() * b.k(), 0.0);
    for (std::size_t i = 0; i < n; ++i) table[a[i] * b.k() + b[i]] += 1.0;

    double index = 0.0;
    for (double c : table) index += choose2(c);
    double sum_a = 0.0;
    for (std::size_t r = 0; r < a.k(); ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < b.k(); ++c) row += table[r * b.k() + c];
        sum_a += choose2(row);
    }
    double sum_b = 0.0;
    for (std::size_t c = 0; c < b.k(); ++c) {
        double col = 0.0;
        for (std::size_t r = 0; r < a.k(); ++r) col += table[r * b.k() + c];
        sum_b += choose2(col);
    }
    const double pairs = choose2(static_cast<double>(n));
    if (pairs == 0.0) return 1.0;
    const double expected = sum_a * sum_b / pairs;
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace subclust
