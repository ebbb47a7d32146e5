#include "subclust/fkm.hpp"

#include "detail/als_engine.hpp"
#include "detail/clustering.hpp"
#include "subclust/error.hpp"

namespace subclust {

Membership fkm_assign(const DataMatrix& x, const Loading& a, const Centroids& f) {
    if (x.p() != a.p() || f.q() != a.q()) throw DimensionError("fkm_assign: shapes of X, A, F disagree");
    std::vector<std::size_t> labels;
    std::vector<double> dist;
    detail::assign_nearest(project_rows(x, a), f.values(), labels, dist);
    return Membership(std::move(labels), f.k());
}

Loading fkm_update_loading(const DataMatrix& x, const Membership& u, std::size_t q) {
    if (u.size() != x.n()) throw DimensionError("fkm_update_loading: membership length differs from n");
    if (q < 1 || q >= x.p()) throw InfeasibleError("fkm_update_loading: need 1 <= q < p");
    const Matrix means = detail::cluster_means(x.values(), u.labels(), u.k());
    return detail::update_loading(detail::AlsMethod::fkm, x.values(), means, u.labels(), q);
}

Centroids fkm_update_centroids(const DataMatrix& x, const Loading& a, const Membership& u) {
    if (u.size() != x.n()) throw DimensionError("fkm_update_centroids: membership length differs from n");
    if (x.p() != a.p()) throw DimensionError("fkm_update_centroids: X and A disagree on p");
    return Centroids(detail::cluster_means(x.values(), u.labels(), u.k()) * a.values());
}

FitResult fkm_fit(const DataMatrix& x, const FkmConfig& cfg, const AlsObserver& observer) {
    return detail::als_fit(detail::AlsMethod::fkm, x, cfg, observer);
}

}  // namespace subclust
