#include "subclust/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "subclust/error.hpp"
#include "subclust/random.hpp"

namespace subclust {
namespace {

void validate_simplex(const std::vector<double>& w, const char* what) {
    if (w.empty()) throw DomainError(std::string(what) + ": empty probability vector");
    double sum = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + ": negative or non-finite probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError(std::string(what) + ": probabilities must sum to 1");
}

// Categorical draw by inversion of the cumulative weights.
std::size_t draw_index(const std::vector<double>& cumulative, Rng& rng) {
    const double u = uniform01(rng) * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> cumulative_sum(const std::vector<double>& w) {
    std::vector<double> c(w.size());
    std::partial_sum(w.begin(), w.end(), c.begin());
    return c;
}

}  // namespace

void MixturePopulation::validate() const {
    if (means.rows() == 0 || means.cols() == 0) throw DimensionError("MixturePopulation: empty means");
    if (weights.size() != means.rows()) throw DimensionError("MixturePopulation: weights and means disagree on k");
    validate_simplex(weights, "MixturePopulation");
    if (!means.all_finite()) throw DomainError("MixturePopulation: non-finite mean");
    if (!(cluster_sd > 0.0) || !(noise_sd > 0.0)) throw DomainError("MixturePopulation: sd must be > 0");
    if (informative_dims > means.cols()) throw DimensionError("MixturePopulation: informative_dims exceeds p");
    for (std::size_t j = 1; j < means.rows(); ++j)
        for (std::size_t c = informative_dims; c < means.cols(); ++c)
            if (means(j, c) != means(0, c)) {
                throw DomainError("MixturePopulation: cluster means must agree outside the informative dims");
            }
}

void DiscretePopulation::validate() const {
    if (atoms.rows() == 0 || atoms.cols() == 0) throw DimensionError("DiscretePopulation: empty support");
    if (probs.size() != atoms.rows()) throw DimensionError("DiscretePopulation: probs and atoms disagree");
    validate_simplex(probs, "DiscretePopulation");
    if (!atoms.all_finite()) throw DomainError("DiscretePopulation: non-finite atom");
}

MixturePopulation paper_scenario_population(std::size_t k, double separation, std::size_t noise_dims,
                                            double noise_sd) {
    if (k < 1) throw InfeasibleError("scenario: k must be >= 1");
    if (!(separation >= 0.0)) throw DomainError("scenario: separation must be >= 0");
    MixturePopulation pop;
    pop.weights.assign(k, 1.0 / static_cast<double>(k));
    // Renormalize so the simplex check is exact for any k.
    const double sum = std::accumulate(pop.weights.begin(), pop.weights.end(), 0.0);
    for (double& w : pop.weights) w /= sum;
    pop.means = Matrix(k, 2 + noise_dims);
    for (std::size_t j = 0; j < k; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
        pop.means(j, 0) = separation * std::cos(angle);
        pop.means(j, 1) = separation * std::sin(angle);
    }
    pop.cluster_sd = 1.0;
    pop.noise_sd = noise_sd;
    pop.informative_dims = 2;
    pop.validate();
    return pop;
}

Sample generate_paper_scenario(std::size_t n, std::size_t k, double separation, std::size_t noise_dims,
                               std::uint64_t seed, double noise_sd) {
    if (n < k) throw InfeasibleError("scenario: n < k");
    return sample(paper_scenario_population(k, separation, noise_dims, noise_sd), n, seed);
}

Sample sample(const MixturePopulation& pop, std::size_t n, std::uint64_t seed) {
    pop.validate();
    if (n < 1) throw DomainError("sample: n must be >= 1");
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto cumulative = cumulative_sum(pop.weights);
    Matrix x(n, pop.p());
    std::vector<std::size_t> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = draw_index(cumulative, rng);
        truth[i] = j;
        auto row = x.row(i);
        for (std::size_t c = 0; c < pop.p(); ++c) {
            const double sd = c < pop.informative_dims ? pop.cluster_sd : pop.noise_sd;
            row[c] = pop.means(j, c) + sd * normal(rng);
        }
    }
    return Sample{DataMatrix(std::move(x)), Membership(std::move(truth), pop.k())};
}

Sample sample(const DiscretePopulation& pop, std::size_t n, std::uint64_t seed) {
    pop.validate();
    if (n < 1) throw DomainError("sample: n must be >= 1");
    Rng rng(seed);
    const auto cumulative = cumulative_sum(pop.probs);
    Matrix x(n, pop.p());
    std::vector<std::size_t> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = draw_index(cumulative, rng);
        truth[i] = m;
        std::copy_n(pop.atoms.row(m).begin(), pop.p(), x.row(i).begin());
    }
    return Sample{DataMatrix(std::move(x)), Membership(std::move(truth), pop.support_size())};
}

Sample sample(const Population& pop, std::size_t n, std::uint64_t seed) {
    return std::visit([&](const auto& p) { return sample(p, n, seed); }, pop);
}

std::vector<std::size_t> sample_counts(const DiscretePopulation& pop, std::size_t n, std::uint64_t seed) {
    pop.validate();
    Rng rng(seed);
    const auto cumulative = cumulative_sum(pop.probs);
    std::vector<std::size_t> counts(pop.support_size(), 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[draw_index(cumulative, rng)];
    return counts;
}

}  // namespace subclust
