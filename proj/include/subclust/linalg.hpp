#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subclust/core_model.hpp"
#include "subclust/matrix.hpp"
#include "subclust/random.hpp"

namespace subclust {

/// Spectral decomposition S = V diag(λ) Vᵀ.
struct SymEigResult {
    /// Sorted descending.
    std::vector<double> eigenvalues;
    /// Column i pairs with eigenvalues[i].
    Matrix eigenvectors;
    int sweeps = 0;

    /// First q columns of `eigenvectors` (the q algebraically largest).
    Matrix leading(std::size_t q) const;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Stops once the off-diagonal Frobenius mass drops to 1e−12·‖S‖_F (at most 100
/// sweeps). Output is deterministic: every eigenvector has its first nonzero
/// component positive, and within a group of tied eigenvalues the vectors are
/// ordered lexicographically, largest first, so a multiple of the identity
/// yields e_1, e_2, … in order.
///
/// Throws DomainError for non-finite entries or ‖S − Sᵀ‖_F > 1e−8·(1 + ‖S‖_F).
SymEigResult sym_eig(const Matrix& s);

/// Modified Gram–Schmidt with one re-orthogonalization pass, column order kept.
/// Throws DomainError when a column's residual falls below 1e−10 of its
/// original norm (rank deficiency).
Matrix gram_schmidt(const Matrix& m);

/// Orthonormal basis for the column space of a full-column-rank p×q matrix.
Loading orthonormalize(const Matrix& m);

/// Gram–Schmidt of a seeded p×q standard-Gaussian draw; uniform on the Stiefel
/// manifold.
Loading random_loading(std::size_t p, std::size_t q, std::uint64_t seed);
Loading random_loading(std::size_t p, std::size_t q, Rng& rng);

/// Haar-distributed q×q orthogonal matrix (reflections included).
Matrix random_orthogonal(std::size_t q, Rng& rng);

/// B = U diag(σ) Vᵀ for a square matrix, by one-sided Jacobi.
struct SvdResult {
    Matrix u;
    std::vector<double> singular_values;
    Matrix v;
};
SvdResult svd_square(const Matrix& b);

/// Orthogonal R minimizing ‖A1 − A2Rᵀ‖_F: R = UVᵀ where A1ᵀA2 = UΣVᵀ.
Matrix procrustes_rotation(const Loading& a1, const Loading& a2);

}  // namespace subclust
