#pragma once

#include <vector>

#include "subclust/als.hpp"
#include "subclust/core_model.hpp"
#include "subclust/matrix.hpp"

namespace subclust::detail {

enum class AlsMethod { fkm, rkm };

/// Σ_i (x_i − m_{c(i)})(x_i − m_{c(i)})ᵀ, accumulated from residuals so that
/// clusters of identical rows contribute exactly zero.
Matrix within_scatter(const Matrix& x, const Matrix& means, const std::vector<std::size_t>& labels);

/// Σ_j n_j m_j m_jᵀ = XᵀP_U X.
Matrix between_scatter(const Matrix& means, const std::vector<std::size_t>& counts);

Loading update_loading(AlsMethod method, const Matrix& x, const Matrix& means,
                       const std::vector<std::size_t>& labels, std::size_t q);

FitResult als_fit(AlsMethod method, const DataMatrix& x, const AlsConfig& cfg, const AlsObserver& observer);

}  // namespace subclust::detail
