#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "subclust/core_model.hpp"
#include "subclust/matrix.hpp"

namespace subclust {

/// Gaussian mixture whose cluster means differ only in the first
/// `informative_dims` coordinates. Informative coordinates have within-cluster
/// sd `cluster_sd`; the remaining coordinates are independent N(mean, noise_sd²)
/// noise shared by all clusters.
struct MixturePopulation {
    std::vector<double> weights;
    Matrix means;  ///< k×p
    double cluster_sd = 1.0;
    double noise_sd = 1.0;
    std::size_t informative_dims = 2;

    std::size_t k() const noexcept { return means.rows(); }
    std::size_t p() const noexcept { return means.cols(); }
    std::size_t noise_dims() const noexcept { return p() - informative_dims; }
    void validate() const;
};

/// Finite support: atom m (row of `atoms`) has probability probs[m].
struct DiscretePopulation {
    Matrix atoms;  ///< m×p
    std::vector<double> probs;

    std::size_t support_size() const noexcept { return atoms.rows(); }
    std::size_t p() const noexcept { return atoms.cols(); }
    void validate() const;
};

using Population = std::variant<MixturePopulation, DiscretePopulation>;

struct Sample {
    DataMatrix data;
    /// Mixture component (or atom index) each row was drawn from.
    Membership truth;
};

/// Defaults for the two-informative-plus-noise scenario.
struct ScenarioDefaults {
    static constexpr std::size_t n = 300;
    static constexpr std::size_t k = 3;
    static constexpr double separation = 6.0;
    static constexpr std::size_t noise_dims = 10;
    /// Noise variance (36) exceeds the per-coordinate variance of the informative
    /// plane (separation²/2 + 1 = 19), so the leading principal plane is noise.
    static constexpr double noise_sd = 6.0;
};

/// k equally weighted clusters with unit within-cluster sd, centered on a circle
/// of radius `separation` in two informative coordinates, followed by
/// `noise_dims` noise coordinates with sd `noise_sd`.
MixturePopulation paper_scenario_population(std::size_t k, double separation, std::size_t noise_dims,
                                            double noise_sd = ScenarioDefaults::noise_sd);

/// n draws from paper_scenario_population(k, separation, noise_dims, noise_sd).
/// InfeasibleError for n < k.
Sample generate_paper_scenario(std::size_t n, std::size_t k, double separation, std::size_t noise_dims,
                               std::uint64_t seed, double noise_sd = ScenarioDefaults::noise_sd);

/// n i.i.d. draws; deterministic per seed.
Sample sample(const MixturePopulation& pop, std::size_t n, std::uint64_t seed);
Sample sample(const DiscretePopulation& pop, std::size_t n, std::uint64_t seed);
Sample sample(const Population& pop, std::size_t n, std::uint64_t seed);

/// Multinomial atom counts of n draws (the sufficient statistic of the
/// empirical measure). Uses the same draws as sample(pop, n, seed).
std::vector<std::size_t> sample_counts(const DiscretePopulation& pop, std::size_t n, std::uint64_t seed);

}  // namespace subclust
