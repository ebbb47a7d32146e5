#include "subclust/core_model.hpp"

#include <cmath>
#include <string>

#include "subclust/error.hpp"
#include "subclust/kernels.hpp"
#include "subclust/linalg.hpp"

namespace subclust {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() == 0 || values_.cols() == 0) throw DimensionError("DataMatrix: n and p must be >= 1");
    if (!values_.all_finite()) throw DomainError("DataMatrix: non-finite entry");
}

std::vector<double> DataMatrix::column_means() const {
    std::vector<double> means(p(), 0.0);
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < n(); ++i) k.axpy(1.0, row(i).data(), means.data(), p());
    for (double& m : means) m /= static_cast<double>(n());
    return means;
}

DataMatrix DataMatrix::shifted(std::span<const double> means) const {
    if (means.size() != p()) throw DimensionError("DataMatrix::shifted: wrong mean length");
    Matrix out = values_;
    for (std::size_t i = 0; i < n(); ++i) {
        auto r = out.row(i);
        for (std::size_t j = 0; j < p(); ++j) r[j] -= means[j];
    }
    return DataMatrix(std::move(out));
}

Loading::Loading(Matrix values) : values_(std::move(values)) {
    if (values_.cols() < 1 || values_.cols() >= values_.rows()) {
        throw DimensionError("Loading: need 1 <= q < p, got p=" + std::to_string(values_.rows()) +
                             " q=" + std::to_string(values_.cols()));
    }
    if (!values_.all_finite()) throw DomainError("Loading: non-finite entry");
    const double err = orthonormality_error(values_);
    if (err > kRepairTolerance) {
        throw DomainError("Loading: columns are not orthonormal (||A'A - I||_F = " + std::to_string(err) + ")");
    }
    if (err > kTolerance) values_ = gram_schmidt(values_);
    transposed_ = values_.transposed();
}

void Loading::project(std::span<const double> x, std::span<double> out) const {
    const auto& k = kernels::active();
    for (std::size_t j = 0; j < q(); ++j) out[j] = k.dot(x.data(), transposed_.row(j).data(), p());
}

Centroids::Centroids(Matrix values) : values_(std::move(values)) {
    if (values_.rows() == 0 || values_.cols() == 0) throw DimensionError("Centroids: k and q must be >= 1");
    if (!values_.all_finite()) throw DomainError("Centroids: non-finite entry");
}

Membership::Membership(std::vector<std::size_t> labels, std::size_t k) : labels_(std::move(labels)), k_(k) {
    if (k_ == 0) throw DimensionError("Membership: k must be >= 1");
    for (std::size_t l : labels_) {
        if (l >= k_) throw DomainError("Membership: label out of range");
    }
}

Membership Membership::from_one_based(std::span<const int> labels, std::size_t k) {
    std::vector<std::size_t> zero_based;
    zero_based.reserve(labels.size());
    for (int l : labels) {
        if (l < 1 || static_cast<std::size_t>(l) > k) throw DomainError("Membership: label out of [1, k]");
        zero_based.push_back(static_cast<std::size_t>(l - 1));
    }
    return Membership(std::move(zero_based), k);
}

std::vector<std::size_t> Membership::counts() const {
    std::vector<std::size_t> c(k_, 0);
    for (std::size_t l : labels_) ++c[l];
    return c;
}

bool Membership::has_empty_cluster() const {
    for (std::size_t c : counts())
        if (c == 0) return true;
    return false;
}

std::vector<int> Membership::one_based() const {
    std::vector<int> out;
    out.reserve(labels_.size());
    for (std::size_t l : labels_) out.push_back(static_cast<int>(l) + 1);
    return out;
}

Matrix Membership::indicator() const {
    Matrix u(labels_.size(), k_);
    for (std::size_t i = 0; i < labels_.size(); ++i) u(i, labels_[i]) = 1.0;
    return u;
}

double LossSpec::lambda() const { return std::pow(2.0, exponent); }

void LossSpec::validate() const {
    if (!(exponent >= 1.0 && exponent <= 4.0)) {
        throw DomainError("LossSpec: exponent must lie in [1, 4]");
    }
}

double psi_eval(double r, const LossSpec& spec) {
    spec.validate();
    if (!(r >= 0.0)) throw DomainError("psi_eval: r must be >= 0");
    if (spec.exponent == 2.0) return r * r;
    return std::pow(r, spec.exponent);
}

namespace {

// ψ(√d2) without taking the root when the loss is the squared norm.
inline double psi_of_squared(double d2, double exponent) {
    if (exponent == 2.0) return d2;
    return std::pow(d2, 0.5 * exponent);
}

void check_fkm_shapes(const DataMatrix& x, const Loading& a, const Centroids& f) {
    if (x.p() != a.p()) throw DimensionError("objective: X has p=" + std::to_string(x.p()) +
                                             " but A has p=" + std::to_string(a.p()));
    if (f.q() != a.q()) throw DimensionError("objective: F has q=" + std::to_string(f.q()) +
                                             " but A has q=" + std::to_string(a.q()));
}

void check_membership(const DataMatrix& x, const Centroids& f, const Membership& u) {
    if (u.size() != x.n()) throw DimensionError("membership length differs from n");
    if (u.k() != f.k()) throw DimensionError("membership k differs from centroid count");
}

}  // namespace

Matrix project_rows(const DataMatrix& x, const Loading& a) {
    if (x.p() != a.p()) throw DimensionError("project_rows: X and A disagree on p");
    Matrix y(x.n(), a.q());
    for (std::size_t i = 0; i < x.n(); ++i) a.project(x.row(i), y.row(i));
    return y;
}

double fkm_objective(const DataMatrix& x, const Loading& a, const Centroids& f, const LossSpec& spec) {
    spec.validate();
    check_fkm_shapes(x, a, f);
    const auto& kern = kernels::active();
    std::vector<double> y(a.q());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.n(); ++i) {
        a.project(x.row(i), y);
        double d2 = 0.0;
        kern.nearest(y.data(), f.values().data(), f.k(), f.q(), &d2);
        sum += psi_of_squared(d2, spec.exponent);
    }
    return sum / static_cast<double>(x.n());
}

double rkm_objective(const DataMatrix& x, const Loading& a, const Centroids& f) {
    check_fkm_shapes(x, a, f);
    const Matrix reconstructed = f.values() * a.transposed();  // rows A f_j
    const auto& kern = kernels::active();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.n(); ++i) {
        double d2 = 0.0;
        kern.nearest(x.row(i).data(), reconstructed.data(), f.k(), x.p(), &d2);
        sum += d2;
    }
    return sum / static_cast<double>(x.n());
}

double fkm_objective_at(const DataMatrix& x, const Loading& a, const Centroids& f, const Membership& u) {
    check_fkm_shapes(x, a, f);
    check_membership(x, f, u);
    const auto& kern = kernels::active();
    std::vector<double> y(a.q());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.n(); ++i) {
        a.project(x.row(i), y);
        sum += kern.squared_distance(y.data(), f.row(u[i]).data(), a.q());
    }
    return sum / static_cast<double>(x.n());
}

double rkm_objective_at(const DataMatrix& x, const Loading& a, const Centroids& f, const Membership& u) {
    check_fkm_shapes(x, a, f);
    check_membership(x, f, u);
    const Matrix reconstructed = f.values() * a.transposed();
    const auto& kern = kernels::active();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.n(); ++i) {
        sum += kern.squared_distance(x.row(i).data(), reconstructed.row(u[i]).data(), x.p());
    }
    return sum / static_cast<double>(x.n());
}

bool RkmDecomposition::holds() const noexcept {
    return std::abs(residual()) <= 1e-8 * (1.0 + total);
}

RkmDecomposition rkm_decomposition_check(const DataMatrix& x, const Loading& a, const Centroids& f,
                                         const Membership& u) {
    check_fkm_shapes(x, a, f);
    check_membership(x, f, u);
    const Matrix& xv = x.values();
    const Matrix u_mat = u.indicator();
    const Matrix uf = u_mat * f.values();
    const Matrix xa = xv * a.values();
    RkmDecomposition d;
    d.total = squared_frobenius_norm(xv - uf * a.transposed());
    d.pca_term = squared_frobenius_norm(xv - xa * a.transposed());
    d.fkm_term = squared_frobenius_norm(xa - uf);
    return d;
}

}  // namespace subclust
