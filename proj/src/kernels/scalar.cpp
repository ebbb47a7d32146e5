#include "subclust/kernels.hpp"

namespace subclust::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

std::size_t nearest(const double* point, const double* centers, std::size_t k, std::size_t dim,
                    double* best) {
    std::size_t arg = 0;
    double min = squared_distance(point, centers, dim);
    for (std::size_t j = 1; j < k; ++j) {
        const double d = squared_distance(point, centers + j * dim, dim);
        if (d < min) {
            min = d;
            arg = j;
        }
    }
    if (best != nullptr) *best = min;
    return arg;
}

}  // namespace subclust::kernels::scalar
