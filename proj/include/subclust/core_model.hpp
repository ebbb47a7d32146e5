#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "subclust/matrix.hpp"

namespace subclust {

/// n×p observations, one object per row. All entries finite, n, p ≥ 1.
class DataMatrix {
public:
    explicit DataMatrix(Matrix values);

    std::size_t n() const noexcept { return values_.rows(); }
    std::size_t p() const noexcept { return values_.cols(); }
    const Matrix& values() const noexcept { return values_; }
    std::span<const double> row(std::size_t i) const noexcept { return values_.row(i); }

    std::vector<double> column_means() const;
    /// Copy with `means` subtracted from every row.
    DataMatrix shifted(std::span<const double> means) const;

private:
    Matrix values_;
};

/// p×q column-wise orthonormal projection, 1 ≤ q < p.
///
/// Inputs with ‖AᵀA − I‖_F ≤ 1e−10 are stored as given; inputs within 1e−6 are
/// re-orthonormalized (Gram–Schmidt, column order kept); anything worse is
/// rejected with DomainError.
class Loading {
public:
    static constexpr double kTolerance = 1e-10;
    static constexpr double kRepairTolerance = 1e-6;

    explicit Loading(Matrix values);

    std::size_t p() const noexcept { return values_.rows(); }
    std::size_t q() const noexcept { return values_.cols(); }
    const Matrix& values() const noexcept { return values_; }
    /// Aᵀ, kept alongside so projections can run row-by-row.
    const Matrix& transposed() const noexcept { return transposed_; }

    /// Aᵀx for a length-p vector, written into `out` (length q).
    void project(std::span<const double> x, std::span<double> out) const;

private:
    Matrix values_;
    Matrix transposed_;
};

/// k×q matrix whose rows are cluster centers in the reduced space.
class Centroids {
public:
    explicit Centroids(Matrix values);

    std::size_t k() const noexcept { return values_.rows(); }
    std::size_t q() const noexcept { return values_.cols(); }
    const Matrix& values() const noexcept { return values_; }
    std::span<const double> row(std::size_t j) const noexcept { return values_.row(j); }

private:
    Matrix values_;
};

/// Cluster labels for n objects. Stored 0-based; the 1-based form used in files
/// is available through one_based() and from_one_based().
class Membership {
public:
    Membership(std::vector<std::size_t> labels, std::size_t k);
    static Membership from_one_based(std::span<const int> labels, std::size_t k);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t k() const noexcept { return k_; }
    std::size_t operator[](std::size_t i) const noexcept { return labels_[i]; }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }

    std::vector<std::size_t> counts() const;
    bool has_empty_cluster() const;
    std::vector<int> one_based() const;
    /// Binary n×k indicator matrix U.
    Matrix indicator() const;

    friend bool operator==(const Membership&, const Membership&) = default;

private:
    std::vector<std::size_t> labels_;
    std::size_t k_;
};

/// ψ(r) = r^s with s ∈ [1, 4]. ψ(2r) ≤ λψ(r) holds with λ = 2^s.
struct LossSpec {
    double exponent = 2.0;

    double lambda() const;
    /// Throws DomainError unless 1 ≤ s ≤ 4.
    void validate() const;
};

/// Output of a fitting method. `loss` is the objective of the method evaluated
/// at (loading, centroids) on the data with `center` subtracted, each object
/// taking its nearest center; `labels` are those nearest-center assignments.
struct FitResult {
    Loading loading;
    Centroids centroids;
    Membership labels;
    double loss = 0.0;
    int iterations = 0;
    int restarts_used = 0;
    std::uint64_t seed = 0;
    /// Column means removed before fitting (all zeros when centering is off).
    std::vector<double> center;
    /// Objective after Step 3 of the initial state and at every Step-4 check
    /// of the winning restart.
    std::vector<double> trace;
    /// Largest increase between consecutive Step-4 checks over all restarts.
    double max_objective_increase = 0.0;
};

/// ψ(r) for r ≥ 0; DomainError for negative r.
double psi_eval(double r, const LossSpec& spec = {});

/// (1/n) Σ_i min_j ψ(‖Aᵀx_i − f_j‖).
double fkm_objective(const DataMatrix& x, const Loading& a, const Centroids& f,
                     const LossSpec& spec = {});

/// (1/n) Σ_i min_j ‖x_i − A f_j‖².
double rkm_objective(const DataMatrix& x, const Loading& a, const Centroids& f);

/// (1/n)‖XA − UF‖²_F: the least-squares FKM objective at a given membership.
double fkm_objective_at(const DataMatrix& x, const Loading& a, const Centroids& f,
                        const Membership& u);

/// (1/n)‖X − UFAᵀ‖²_F.
double rkm_objective_at(const DataMatrix& x, const Loading& a, const Centroids& f,
                        const Membership& u);

/// Unnormalized terms of ‖X − UFAᵀ‖² = ‖X − XAAᵀ‖² + ‖XA − UF‖².
struct RkmDecomposition {
    double total = 0.0;
    double pca_term = 0.0;
    double fkm_term = 0.0;

    double residual() const noexcept { return total - pca_term - fkm_term; }
    /// |total − pca − fkm| ≤ 1e−8·(1 + total).
    bool holds() const noexcept;
};

RkmDecomposition rkm_decomposition_check(const DataMatrix& x, const Loading& a,
                                         const Centroids& f, const Membership& u);

/// XA, the n×q matrix of projected objects.
Matrix project_rows(const DataMatrix& x, const Loading& a);

}  // namespace subclust
