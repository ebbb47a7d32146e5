#include "subclust/rkm.hpp"

#include "detail/als_engine.hpp"
#include "detail/clustering.hpp"
#include "subclust/error.hpp"

namespace subclust {

Membership rkm_assign(const DataMatrix& x, const Loading& a, const Centroids& f) {
    if (x.p() != a.p() || f.q() != a.q()) throw DimensionError("rkm_assign: shapes of X, A, F disagree");
    std::vector<std::size_t> labels;
    std::vector<double> dist;
    detail::assign_nearest(x.values(), f.values() * a.transposed(), labels, dist);
    return Membership(std::move(labels), f.k());
}

RkmUpdate rkm_update(const DataMatrix& x, const Membership& u, std::size_t q) {
    if (u.size() != x.n()) throw DimensionError("rkm_update: membership length differs from n");
    if (q < 1 || q >= x.p()) throw InfeasibleError("rkm_update: need 1 <= q < p");
    const Matrix means = detail::cluster_means(x.values(), u.labels(), u.k());
    Loading a = detail::update_loading(detail::AlsMethod::rkm, x.values(), means, u.labels(), q);
    Centroids f(means * a.values());
    return RkmUpdate{std::move(a), std::move(f)};
}

FitResult rkm_fit(const DataMatrix& x, const RkmConfig& cfg, const AlsObserver& observer) {
    return detail::als_fit(detail::AlsMethod::rkm, x, cfg, observer);
}

}  // namespace subclust
