#pragma once

// Inner-loop arithmetic used by every clustering method: dot products,
// squared distances, axpy updates and nearest-center search.
//
// Each kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at first use from the
// running CPU's capabilities. Setting SUBCLUST_SIMD=scalar in the environment
// forces the reference path.

#include <cstddef>
#include <string_view>

namespace subclust::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    /// Σ a[i]·b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// Σ (a[i] − b[i])²
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    /// y[i] += alpha·x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// Index of the row of `centers` (k rows of length dim, row-major) closest to
    /// `point` in squared Euclidean distance. Ties go to the lowest index.
    /// The winning squared distance is written to *best.
    std::size_t (*nearest)(const double* point, const double* centers, std::size_t k,
                           std::size_t dim, double* best);
};

/// Table for the best ISA supported by this CPU (or the SUBCLUST_SIMD override).
const KernelTable& active() noexcept;

/// Table for a specific ISA. Only call when `available(isa)` is true.
const KernelTable& table(Isa isa) noexcept;

/// Compiled in and supported by the running CPU.
bool available(Isa isa) noexcept;

std::string_view name(Isa isa) noexcept;

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
std::size_t nearest(const double* point, const double* centers, std::size_t k, std::size_t dim,
                    double* best);
}  // namespace scalar

#if defined(SUBCLUST_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
std::size_t nearest(const double* point, const double* centers, std::size_t k, std::size_t dim,
                    double* best);
}  // namespace avx2
#endif

}  // namespace subclust::kernels
