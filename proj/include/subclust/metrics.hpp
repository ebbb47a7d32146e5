#pragma once

#include "subclust/core_model.hpp"
#include "subclust/matrix.hpp"

namespace subclust {

/// A fitted parameter θ = (F, A): centers in the reduced space plus the loading.
struct ParamPoint {
    ParamPoint(Loading a, Centroids f);

    Loading loading;
    Centroids centroids;
};

enum class HausdorffKind {
    /// max_{a ∈ F1} min_{b ∈ F2} ‖a − b‖; F1 is the max side.
    directed,
    /// max of both directed distances.
    symmetric,
};

/// ‖A1 − A2‖_F.
double frobenius_distance(const Loading& a1, const Loading& a2);

/// Directed: max over rows a of F1 of the distance from a to the nearest row of F2.
/// Zero exactly when every row of F1 also occurs in F2.
double hausdorff_distance(const Centroids& f1, const Centroids& f2);

/// max(hausdorff_distance(F1, F2), hausdorff_distance(F2, F1)).
double symmetric_hausdorff_distance(const Centroids& f1, const Centroids& f2);

/// √(d_F² + d_H²), with t1's centers on the max side of a directed d_H.
double product_distance(const ParamPoint& t1, const ParamPoint& t2,
                        HausdorffKind kind = HausdorffKind::directed);

/// The same solution seen through a q×q orthogonal R: loading ARᵀ and every
/// center f mapped to Rf. The objective is unchanged.
ParamPoint rotate(const ParamPoint& t, const Matrix& r);

/// Product distance after removing the rotational ambiguity of t1.
///
/// R comes from Procrustes on the loadings (the orthogonal R minimizing
/// ‖A1Rᵀ − A2‖_F); the result is the smaller of the product distances at R and
/// at the identity. For q = 1 the orbit is {+1, −1} and both are evaluated.
/// This is an upper bound on the minimum over the whole orbit and is zero
/// whenever t1 is an exact rotation of t2.
double aligned_distance(const ParamPoint& t1, const ParamPoint& t2,
                        HausdorffKind kind = HausdorffKind::directed);

/// Hubert–Arabie adjusted Rand index. Two partitions that are both a single
/// cluster, or both all singletons, score 1.
double adjusted_rand_index(const Membership& a, const Membership& b);

}  // namespace subclust
