#include "subclust/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subclust/error.hpp"
#include "subclust/fkm.hpp"
#include "subclust/kernels.hpp"
#include "subclust/linalg.hpp"
#include "subclust/random.hpp"

namespace subclust {
namespace {

// Seed streams under the master seed.
constexpr std::uint64_t kReferenceStream = 0;
constexpr std::uint64_t kGridStream = 1;
constexpr std::uint64_t kSampleStream = 2;

std::vector<double> atom_losses(const DiscretePopulation& pop, const ParamPoint& t, const LossSpec& spec) {
    if (pop.p() != t.loading.p()) throw DimensionError("risk: population and loading disagree on p");
    spec.validate();
    const auto& kern = kernels::active();
    std::vector<double> y(t.loading.q());
    std::vector<double> out(pop.support_size());
    for (std::size_t m = 0; m < pop.support_size(); ++m) {
        t.loading.project(pop.atoms.row(m), y);
        double d2 = 0.0;
        kern.nearest(y.data(), t.centroids.values().data(), t.centroids.k(), t.centroids.q(), &d2);
        out[m] = spec.exponent == 2.0 ? d2 : std::pow(d2, 0.5 * spec.exponent);
    }
    return out;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::size_t population_p(const Population& pop) {
    return std::visit([](const auto& p) { return p.p(); }, pop);
}

}  // namespace

double population_risk(const DiscretePopulation& pop, const ParamPoint& t, const LossSpec& spec) {
    pop.validate();
    const auto losses = atom_losses(pop, t, spec);
    double s = 0.0;
    for (std::size_t m = 0; m < losses.size(); ++m) s += pop.probs[m] * losses[m];
    return s;
}

double empirical_risk(const DiscretePopulation& pop, const std::vector<std::size_t>& counts,
                      const ParamPoint& t, const LossSpec& spec) {
    if (counts.size() != pop.support_size()) throw DimensionError("empirical_risk: counts length differs from support");
    std::size_t n = 0;
    for (std::size_t c : counts) n += c;
    if (n == 0) throw DomainError("empirical_risk: no observations");
    const auto losses = atom_losses(pop, t, spec);
    double s = 0.0;
    for (std::size_t m = 0; m < losses.size(); ++m) s += static_cast<double>(counts[m]) * losses[m];
    return s / static_cast<double>(n);
}

void ConsistencyConfig::validate() const {
    std::visit([](const auto& p) { p.validate(); }, population);
    if (sample_sizes.empty()) throw DomainError("consistency: sample_sizes is empty");
    for (std::size_t i = 1; i < sample_sizes.size(); ++i) {
        if (sample_sizes[i] <= sample_sizes[i - 1]) throw DomainError("consistency: sample_sizes must be ascending");
    }
    if (reference_n <= sample_sizes.back()) throw DomainError("consistency: reference_n must exceed every sample size");
    if (replications < 1) throw DomainError("consistency: replications must be >= 1");
    if (reference_restarts < 1) throw DomainError("consistency: reference_restarts must be >= 1");
    if (!(identification_margin >= 0.0)) throw DomainError("consistency: identification margin must be >= 0");
    AlsConfig check = fit;
    check.k = k;
    check.q = q;
    check.validate(sample_sizes.front(), population_p(population));
}

std::string IdentificationCheck::diagnostic() const {
    std::ostringstream os;
    os << "identification check " << (passed ? "passed" : "failed") << ": fitted risks m_1..m_" << risks.size()
       << " =";
    for (double r : risks) os << ' ' << r;
    os << " (required strict decrease by more than " << margin << ")";
    return os.str();
}

IdentificationError::IdentificationError(IdentificationCheck check)
    : std::runtime_error(check.diagnostic()), check_(std::move(check)) {}

IdentificationCheck check_identification(const DataMatrix& x, std::size_t k, const FkmConfig& fit,
                                         int top_restarts, double margin) {
    IdentificationCheck check;
    check.margin = margin;
    check.passed = true;
    for (std::size_t j = 1; j <= k; ++j) {
        FkmConfig cfg = fit;
        cfg.k = j;
        if (j == k) cfg.restarts = top_restarts;
        check.risks.push_back(fkm_fit(x, cfg).loss);
        if (j > 1 && !(check.risks[j - 2] - check.risks[j - 1] > margin)) check.passed = false;
    }
    return check;
}

ConsistencyReport run_consistency(const ConsistencyConfig& cfg) {
    cfg.validate();
    ConsistencyReport report;
    report.replications = cfg.replications;
    report.hausdorff = cfg.hausdorff;
    report.seed = cfg.seed;

    FkmConfig base = cfg.fit;
    base.k = cfg.k;
    base.q = cfg.q;
    base.seed = derive_seed(cfg.seed, kReferenceStream);

    // Reference fit on a large sample; its j = k fit doubles as the top rung
    // of the identification check.
    const Sample reference = sample(cfg.population, cfg.reference_n, derive_seed(base.seed, 0));
    FkmConfig top = base;
    top.restarts = cfg.reference_restarts;
    const FitResult ref_fit = fkm_fit(reference.data, top);

    IdentificationCheck check;
    check.margin = cfg.identification_margin;
    check.passed = true;
    for (std::size_t j = 1; j < cfg.k; ++j) {
        FkmConfig lower = base;
        lower.k = j;
        check.risks.push_back(fkm_fit(reference.data, lower).loss);
    }
    check.risks.push_back(ref_fit.loss);
    for (std::size_t j = 1; j < check.risks.size(); ++j) {
        if (!(check.risks[j - 1] - check.risks[j] > check.margin)) check.passed = false;
    }
    if (!check.passed && cfg.require_identification) throw IdentificationError(std::move(check));
    report.identification = std::move(check);
    report.reference_loss = ref_fit.loss;
    report.reference.emplace(ref_fit.loading, ref_fit.centroids);

    const std::uint64_t sample_root = derive_seed(cfg.seed, kSampleStream);
    for (std::size_t t = 0; t < cfg.sample_sizes.size(); ++t) {
        SizeSummary row;
        row.n = cfg.sample_sizes[t];
        const std::uint64_t size_root = derive_seed(sample_root, t);
        for (int r = 0; r < cfg.replications; ++r) {
            const std::uint64_t rep_seed = derive_seed(size_root, static_cast<std::uint64_t>(r));
            const Sample s = sample(cfg.population, row.n, derive_seed(rep_seed, 0));
            FkmConfig fit = base;
            fit.seed = derive_seed(rep_seed, 1);
            std::optional<FitResult> res;
            try {
                res.emplace(fkm_fit(s.data, fit));
            } catch (const std::exception& e) {
                throw std::runtime_error("consistency: fit failed at n=" + std::to_string(row.n) +
                                         " replication " + std::to_string(r) + ": " + e.what());
            }
            const ParamPoint estimate(res->loading, res->centroids);
            row.losses.push_back(res->loss);
            row.distances.push_back(aligned_distance(estimate, *report.reference, cfg.hausdorff));
            row.aris.push_back(adjusted_rand_index(res->labels, s.truth));
        }
        row.loss_mean = mean(row.losses);
        row.loss_sd = sample_sd(row.losses);
        row.distance_mean = mean(row.distances);
        row.distance_sd = sample_sd(row.distances);
        row.ari_mean = mean(row.aris);
        report.rows.push_back(std::move(row));
    }
    return report;
}

void SllnCheckConfig::validate(std::size_t p) const {
    if (k < 1) throw DomainError("slln: k must be >= 1");
    if (q < 1 || q >= p) throw DomainError("slln: need 1 <= q < p");
    if (grid_size < 1) throw DomainError("slln: grid_size must be >= 1");
    if (!(ball_radius > 0.0)) throw DomainError("slln: ball radius must be > 0");
    if (sample_sizes.empty()) throw DomainError("slln: sample_sizes is empty");
    for (std::size_t n : sample_sizes)
        if (n < 1) throw DomainError("slln: sample sizes must be >= 1");
}

std::vector<ParamPoint> slln_grid(std::size_t p, const SllnCheckConfig& cfg) {
    cfg.validate(p);
    std::vector<ParamPoint> grid;
    grid.reserve(cfg.grid_size);
    const std::uint64_t root = derive_seed(cfg.seed, kGridStream);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t g = 0; g < cfg.grid_size; ++g) {
        Rng rng(derive_seed(root, g));
        Loading a = random_loading(p, cfg.q, rng);
        Matrix centers(cfg.k, cfg.q);
        for (std::size_t j = 0; j < cfg.k; ++j) {
            // Uniform in the ball: isotropic direction, radius M·U^{1/q}.
            auto row = centers.row(j);
            double norm = 0.0;
            do {
                norm = 0.0;
                for (double& v : row) {
                    v = normal(rng);
                    norm += v * v;
                }
            } while (norm == 0.0);
            norm = std::sqrt(norm);
            const double radius = cfg.ball_radius * std::pow(uniform01(rng), 1.0 / static_cast<double>(cfg.q));
            for (double& v : row) v *= radius / norm;
        }
        grid.emplace_back(std::move(a), Centroids(std::move(centers)));
    }
    return grid;
}

std::vector<SllnRow> run_slln_check(const DiscretePopulation& pop, const SllnCheckConfig& cfg, const LossSpec& spec) {
    pop.validate();
    spec.validate();
    const auto grid = slln_grid(pop.p(), cfg);

    std::vector<std::vector<double>> losses;
    std::vector<double> population;
    losses.reserve(grid.size());
    for (const auto& t : grid) {
        losses.push_back(atom_losses(pop, t, spec));
        double s = 0.0;
        for (std::size_t m = 0; m < pop.support_size(); ++m) s += pop.probs[m] * losses.back()[m];
        population.push_back(s);
    }

    std::vector<SllnRow> rows;
    const std::uint64_t root = derive_seed(cfg.seed, kSampleStream);
    for (std::size_t t = 0; t < cfg.sample_sizes.size(); ++t) {
        const std::size_t n = cfg.sample_sizes[t];
        const auto counts = sample_counts(pop, n, derive_seed(root, t));
        double sup = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            double s = 0.0;
            for (std::size_t m = 0; m < counts.size(); ++m) s += static_cast<double>(counts[m]) * losses[g][m];
            sup = std::max(sup, std::abs(s / static_cast<double>(n) - population[g]));
        }
        rows.push_back({n, sup});
    }
    return rows;
}

double log_log_slope(const std::vector<SllnRow>& rows) {
    if (rows.size() < 2) throw DomainError("log_log_slope: need at least two rows");
    double mx = 0.0, my = 0.0;
    for (const auto& r : rows) {
        if (!(r.sup_gap > 0.0)) throw DomainError("log_log_slope: sup_gap must be > 0");
        mx += std::log(static_cast<double>(r.n));
        my += std::log(r.sup_gap);
    }
    mx /= static_cast<double>(rows.size());
    my /= static_cast<double>(rows.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& r : rows) {
        const double dx = std::log(static_cast<double>(r.n)) - mx;
        sxy += dx * (std::log(r.sup_gap) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace subclust
