#pragma once

#include <cstddef>

#include "subclust/als.hpp"
#include "subclust/core_model.hpp"

namespace subclust {

/// Step 1: label_i = argmin_j ‖Aᵀx_i − f_j‖², ties to the lowest j.
Membership fkm_assign(const DataMatrix& x, const Loading& a, const Centroids& f);

/// Step 2: the q eigenvectors with the algebraically largest eigenvalues of
/// Xᵀ(P_U − I)X = −Σ_i (x_i − m_{c(i)})(x_i − m_{c(i)})ᵀ, i.e. the directions of
/// least within-cluster scatter. EmptyClusterError if U leaves a cluster empty.
Loading fkm_update_loading(const DataMatrix& x, const Membership& u, std::size_t q);

/// Step 3: F = (UᵀU)⁻¹UᵀXA, the per-cluster means of the projected objects.
Centroids fkm_update_centroids(const DataMatrix& x, const Loading& a, const Membership& u);

/// Factorial k-means by alternating least squares from cfg.restarts random
/// starts (random orthonormal A, centers at the projections of k distinct
/// random objects).
/// Each cycle runs Step 1 (with empty-cluster repair), Step 2, Step 3 and
/// records the Step-4 objective (1/n)‖XA − UF‖². The best restart wins (lowest
/// loss, then lowest index).
FitResult fkm_fit(const DataMatrix& x, const FkmConfig& cfg, const AlsObserver& observer = {});

}  // namespace subclust
