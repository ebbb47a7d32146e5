#include "subclust/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "subclust/error.hpp"

namespace subclust {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;
constexpr double kRankThreshold = 1e-10;

double off_diagonal_mass(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

// Flip v so its first component with magnitude above `eps` is positive.
void fix_sign(Matrix& v, std::size_t col, double eps) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double x = v(i, col);
        if (std::abs(x) > eps) {
            if (x < 0.0)
                for (std::size_t r = 0; r < v.rows(); ++r) v(r, col) = -v(r, col);
            return;
        }
    }
}

}  // namespace

Matrix SymEigResult::leading(std::size_t q) const {
    if (q > eigenvectors.cols()) throw DimensionError("SymEigResult::leading: q exceeds dimension");
    Matrix out(eigenvectors.rows(), q);
    for (std::size_t i = 0; i < eigenvectors.rows(); ++i)
        for (std::size_t j = 0; j < q; ++j) out(i, j) = eigenvectors(i, j);
    return out;
}

SymEigResult sym_eig(const Matrix& s) {
    const std::size_t m = s.rows();
    if (m == 0 || s.cols() != m) throw DimensionError("sym_eig: matrix must be square and non-empty");
    if (!s.all_finite()) throw DomainError("sym_eig: non-finite entry");
    const double norm = frobenius_norm(s);
    if (frobenius_norm(s - s.transposed()) > 1e-8 * (1.0 + norm)) {
        throw DomainError("sym_eig: matrix is not symmetric");
    }

    Matrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
    Matrix v = Matrix::identity(m);

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_mass(a) <= kOffDiagonalTolerance * norm) break;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - sn * akq;
                    a(k, q) = a(q, k) = sn * akp + c * akq;
                }
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == kMaxSweeps && off_diagonal_mass(a) > kOffDiagonalTolerance * norm) {
        throw std::runtime_error("sym_eig: Jacobi iteration did not converge in 100 sweeps");
    }

    for (std::size_t j = 0; j < m; ++j) fix_sign(v, j, 1e-12);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    // Within tied eigenvalues, order the vectors lexicographically, largest first.
    const double tie = 1e-12 * std::max(1.0, norm);
    auto lex_greater = [&](std::size_t x, std::size_t y) {
        for (std::size_t r = 0; r < m; ++r) {
            if (v(r, x) != v(r, y)) return v(r, x) > v(r, y);
        }
        return false;
    };
    for (std::size_t begin = 0; begin < m;) {
        std::size_t end = begin + 1;
        while (end < m && a(order[end - 1], order[end - 1]) - a(order[end], order[end]) <= tie) ++end;
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                         order.begin() + static_cast<std::ptrdiff_t>(end), lex_greater);
        begin = end;
    }

    SymEigResult result;
    result.sweeps = sweep;
    result.eigenvalues.resize(m);
    result.eigenvectors = Matrix(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        result.eigenvalues[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < m; ++i) result.eigenvectors(i, j) = v(i, order[j]);
    }
    return result;
}

Matrix gram_schmidt(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (cols > rows) throw DomainError("gram_schmidt: more columns than rows");
    Matrix q = m;
    for (std::size_t j = 0; j < cols; ++j) {
        double original = 0.0;
        for (std::size_t i = 0; i < rows; ++i) original += q(i, j) * q(i, j);
        original = std::sqrt(original);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                double proj = 0.0;
                for (std::size_t i = 0; i < rows; ++i) proj += q(i, k) * q(i, j);
                for (std::size_t i = 0; i < rows; ++i) q(i, j) -= proj * q(i, k);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        if (original == 0.0 || !(norm > kRankThreshold * original)) {
            throw DomainError("orthonormalize: matrix is rank-deficient (column " + std::to_string(j) + ")");
        }
        for (std::size_t i = 0; i < rows; ++i) q(i, j) /= norm;
    }
    return q;
}

Loading orthonormalize(const Matrix& m) { return Loading(gram_schmidt(m)); }

Loading random_loading(std::size_t p, std::size_t q, Rng& rng) {
    if (q < 1 || q >= p) throw InfeasibleError("random_loading: need 1 <= q < p");
    // A Gaussian draw is rank-deficient with probability zero; redraw just in case.
    for (;;) {
        Matrix g = gaussian_matrix(p, q, rng);
        try {
            return Loading(gram_schmidt(g));
        } catch (const DomainError&) {
        }
    }
}

Loading random_loading(std::size_t p, std::size_t q, std::uint64_t seed) {
    Rng rng(seed);
    return random_loading(p, q, rng);
}

Matrix random_orthogonal(std::size_t q, Rng& rng) {
    for (;;) {
        Matrix g = gaussian_matrix(q, q, rng);
        try {
            return gram_schmidt(g);
        } catch (const DomainError&) {
        }
    }
}

SvdResult svd_square(const Matrix& b) {
    const std::size_t n = b.rows();
    if (b.cols() != n) throw DimensionError("svd_square: matrix must be square");
    Matrix w = b;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    alpha += w(r, i) * w(r, i);
                    beta += w(r, j) * w(r, j);
                    gamma += w(r, i) * w(r, j);
                }
                if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < n; ++r) {
                    const double wi = w(r, i);
                    const double wj = w(r, j);
                    w(r, i) = c * wi - s * wj;
                    w(r, j) = s * wi + c * wj;
                    const double vi = v(r, i);
                    const double vj = v(r, j);
                    v(r, i) = c * vi - s * vj;
                    v(r, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }

    SvdResult out;
    out.singular_values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += w(r, j) * w(r, j);
        out.singular_values[j] = std::sqrt(s);
    }

    // Left vectors: normalized columns of BV, taken in order of decreasing σ so
    // columns for tiny σ are completed against the well-determined ones.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return out.singular_values[x] > out.singular_values[y];
    });
    const double smax = n == 0 ? 0.0 : out.singular_values[order[0]];
    Matrix u(n, n);
    std::size_t basis = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t j = order[idx];
        std::vector<double> col(n);
        const bool usable = out.singular_values[j] > 1e-12 * std::max(1.0, smax);
        for (;;) {
            if (usable) {
                for (std::size_t r = 0; r < n; ++r) col[r] = w(r, j);
            } else {
                std::fill(col.begin(), col.end(), 0.0);
                col[basis++] = 1.0;
            }
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t prev = 0; prev < idx; ++prev) {
                    const std::size_t pj = order[prev];
                    double proj = 0.0;
                    for (std::size_t r = 0; r < n; ++r) proj += u(r, pj) * col[r];
                    for (std::size_t r = 0; r < n; ++r) col[r] -= proj * u(r, pj);
                }
            }
            double norm = 0.0;
            for (double x : col) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 1e-8 || usable) {
                for (std::size_t r = 0; r < n; ++r) u(r, j) = col[r] / norm;
                break;
            }
        }
    }
    out.u = std::move(u);
    out.v = std::move(v);
    return out;
}

Matrix procrustes_rotation(const Loading& a1, const Loading& a2) {
    if (a1.p() != a2.p() || a1.q() != a2.q()) throw DimensionError("procrustes_rotation: loadings differ in shape");
    const Matrix b = transpose_times(a1.values(), a2.values());
    const SvdResult svd = svd_square(b);
    return svd.u * svd.v.transposed();
}

}  // namespace subclust
