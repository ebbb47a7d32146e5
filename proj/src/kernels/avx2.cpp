// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "subclust/kernels.hpp"

namespace subclust::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s = std::fma(a[i], b[i], s);
    return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    if (i + 4 <= n) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        i += 4;
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s = std::fma(d, d, s);
    }
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

std::size_t nearest(const double* point, const double* centers, std::size_t k, std::size_t dim,
                    double* best) {
    // Low-dimensional reduced spaces (q = 1..3) are the common case; there the
    // vector path cannot fill a register, so compare four centers at once instead.
    if (dim < 4 && k >= 4) {
        alignas(32) double dist[4];
        std::size_t arg = 0;
        double min = 0.0;
        std::size_t j = 0;
        for (; j + 4 <= k; j += 4) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t c = 0; c < dim; ++c) {
                const __m256d cv = _mm256_set_pd(centers[(j + 3) * dim + c], centers[(j + 2) * dim + c],
                                                 centers[(j + 1) * dim + c], centers[j * dim + c]);
                const __m256d d = _mm256_sub_pd(_mm256_set1_pd(point[c]), cv);
                acc = _mm256_fmadd_pd(d, d, acc);
            }
            _mm256_store_pd(dist, acc);
            for (std::size_t t = 0; t < 4; ++t) {
                if ((j == 0 && t == 0) || dist[t] < min) {
                    min = dist[t];
                    arg = j + t;
                }
            }
        }
        for (; j < k; ++j) {
            const double d = squared_distance(point, centers + j * dim, dim);
            if (d < min) {
                min = d;
                arg = j;
            }
        }
        if (best != nullptr) *best = min;
        return arg;
    }

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

}  // namespace subclust::kernels::avx2
