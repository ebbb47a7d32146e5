#pragma once

// Monte Carlo checks of the large-sample behaviour of factorial k-means:
// convergence of the optimal risk and of the fitted parameters (modulo
// rotation) as n grows, and uniform convergence of the empirical risk over a
// bounded parameter set.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subclust/als.hpp"
#include "subclust/core_model.hpp"
#include "subclust/metrics.hpp"
#include "subclust/synthdata.hpp"

namespace subclust {

/// Ψ(F, A, P) = Σ_m probs_m · min_j ψ(‖Aᵀatom_m − f_j‖), exact for finite support.
double population_risk(const DiscretePopulation& pop, const ParamPoint& t, const LossSpec& spec = {});

/// Ψ(F, A, P_n) for the empirical measure with the given atom counts.
double empirical_risk(const DiscretePopulation& pop, const std::vector<std::size_t>& counts,
                      const ParamPoint& t, const LossSpec& spec = {});

struct ConsistencyConfig {
    Population population;
    std::size_t k = 3;
    std::size_t q = 2;
    std::vector<std::size_t> sample_sizes;
    int replications = 30;
    std::size_t reference_n = 100000;
    /// Restarts for the reference fit that stands in for the population optimizer.
    int reference_restarts = 200;
    /// Fit settings per replication; k, q and seed are overridden.
    FkmConfig fit;
    std::uint64_t seed = 0;
    HausdorffKind hausdorff = HausdorffKind::symmetric;
    /// Required gap m_j − m_{j+1} on the reference sample, j = 1..k−1.
    double identification_margin = 1e-6;
    /// When false a failed identification check is recorded in the report
    /// instead of raising IdentificationError.
    bool require_identification = true;

    void validate() const;
};

struct IdentificationCheck {
    /// risks[j − 1] = fitted optimal risk with j clusters on the reference sample.
    std::vector<double> risks;
    double margin = 0.0;
    bool passed = false;

    std::string diagnostic() const;
};

/// Thrown when the population fails the identification check.
class IdentificationError : public std::runtime_error {
public:
    explicit IdentificationError(IdentificationCheck check);
    const IdentificationCheck& check() const noexcept { return check_; }

private:
    IdentificationCheck check_;
};

struct SizeSummary {
    std::size_t n = 0;
    double loss_mean = 0.0;
    double loss_sd = 0.0;
    double distance_mean = 0.0;
    double distance_sd = 0.0;
    double ari_mean = 0.0;
    /// Per replication, in replication order.
    std::vector<double> losses;
    std::vector<double> distances;
    std::vector<double> aris;
};

struct ConsistencyReport {
    std::vector<SizeSummary> rows;
    double reference_loss = 0.0;
    std::optional<ParamPoint> reference;
    IdentificationCheck identification;
    int replications = 0;
    HausdorffKind hausdorff = HausdorffKind::symmetric;
    std::uint64_t seed = 0;
};

/// Fits j = 1..k clusters on `x` and checks the risks decrease strictly by
/// more than `margin`. The j = k fit uses `top_restarts`.
IdentificationCheck check_identification(const DataMatrix& x, std::size_t k, const FkmConfig& fit,
                                         int top_restarts, double margin);

/// Reference fit on reference_n draws (proxy for the population optimizer),
/// identification check, then for every sample size and replication an FKM
/// fit on fresh draws, recording its loss, its aligned distance to the
/// reference and its ARI against the generating labels.
/// Throws IdentificationError when the check fails and cfg.require_identification is set.
ConsistencyReport run_consistency(const ConsistencyConfig& cfg);

struct SllnCheckConfig {
    std::size_t k = 2;
    std::size_t q = 2;
    std::size_t grid_size = 100;
    /// Centers are drawn uniformly from the closed q-ball of this radius.
    double ball_radius = 5.0;
    std::vector<std::size_t> sample_sizes;
    std::uint64_t seed = 0;

    void validate(std::size_t p) const;
};

struct SllnRow {
    std::size_t n = 0;
    /// max over the grid of |Ψ(θ, P_n) − Ψ(θ, P)|.
    double sup_gap = 0.0;
};

/// Parameter grid for run_slln_check: random loadings × uniform centers in the ball.
std::vector<ParamPoint> slln_grid(std::size_t p, const SllnCheckConfig& cfg);

/// Sup-gap over a seeded parameter grid for each sample size.
std::vector<SllnRow> run_slln_check(const DiscretePopulation& pop, const SllnCheckConfig& cfg,
                                    const LossSpec& spec = {});

/// Least-squares slope of log(sup_gap) on log(n). Rows with zero gap are rejected.
double log_log_slope(const std::vector<SllnRow>& rows);

}  // namespace subclust
