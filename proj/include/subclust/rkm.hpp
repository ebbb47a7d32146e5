#pragma once

#include <cstddef>

#include "subclust/als.hpp"
#include "subclust/core_model.hpp"

namespace subclust {

/// label_i = argmin_j ‖x_i − A f_j‖², ties to the lowest j.
Membership rkm_assign(const DataMatrix& x, const Loading& a, const Centroids& f);

struct RkmUpdate {
    Loading loading;
    Centroids centroids;
};

/// Minimizer of ‖X − UFAᵀ‖² for fixed U: A spans the top-q eigenvectors of
/// XᵀP_U X = Σ_j n_j m_j m_jᵀ and F = (UᵀU)⁻¹UᵀXA.
RkmUpdate rkm_update(const DataMatrix& x, const Membership& u, std::size_t q);

/// Reduced k-means with the same restart, repair, centering and convergence
/// rules as fkm_fit. The Step-4 objective is (1/n)‖X − UFAᵀ‖².
FitResult rkm_fit(const DataMatrix& x, const RkmConfig& cfg, const AlsObserver& observer = {});

}  // namespace subclust
