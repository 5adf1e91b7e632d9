#include "mmax/simulation.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "mmax/classical.hpp"
#include "mmax/evt.hpp"
#include "mmax/rng.hpp"

namespace mmax {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Slot {
    std::string name;
    int k;
};

// One replicate's values for every estimator slot and bound slot.
struct RepValues {
    std::vector<double> estimates;  // NaN = failed, +inf = no finite endpoint
    std::vector<double> bounds;     // NaN = failed, +inf covers
};

std::vector<Slot> estimator_slots(const StudyConfig& cfg) {
    std::vector<Slot> slots;
    for (int k : cfg.k_grid) slots.push_back({"tgpd", k});
    for (int k : cfg.k_grid) slots.push_back({"tpareto", k});
    slots.push_back({"npg", 0});
    slots.push_back({"npos", 0});
    for (int k : cfg.k_grid) slots.push_back({"fl", k});
    slots.push_back({"fl", cfg.sample_size});
    for (int k : cfg.k_grid) slots.push_back({"efl", k});
    slots.push_back({"efl", cfg.sample_size});
    slots.push_back({"rw", 0});
    slots.push_back({"rwc", 0});
    slots.push_back({"ks", 0});
    return slots;
}

std::vector<Slot> bound_slots(const StudyConfig& cfg) {
    std::vector<Slot> slots;
    for (int k : cfg.k_grid) slots.push_back({"tgpd", k});
    for (int k : cfg.k_grid) slots.push_back({"tpareto", k});
    slots.push_back({"npos", 0});
    slots.push_back({"pisarenko", 0});
    return slots;
}

RepValues one_replicate(const StudyConfig& cfg, std::uint64_t seed) {
    MagnitudeSample sample;
    sample.values = sample_truncated_gr(cfg.params, cfg.sample_size, seed);
    sample.t_m = cfg.params.t_m;

    const std::size_t n = sample.n();
    std::vector<double> energies;
    energies.reserve(n);
    for (double m : sample.values) energies.push_back(magnitude_to_energy(m));

    RepValues rep;
    auto est = [&](auto&& fn) {
        try {
            rep.estimates.push_back(fn());
        } catch (const std::exception&) {
            rep.estimates.push_back(kNaN);
        }
    };
    auto bnd = [&](auto&& fn) {
        try {
            rep.bounds.push_back(fn());
        } catch (const std::exception&) {
            rep.bounds.push_back(kNaN);
        }
    };

    // Per-k EVT fits, shared between the estimate and bound slots.
    std::vector<std::optional<TruncatedGPDFit>> gpd_fits;
    std::vector<std::optional<TruncatedParetoFit>> par_fits;
    for (int k : cfg.k_grid) {
        try {
            gpd_fits.push_back(fit_truncated_gpd(sample, k));
        } catch (const std::exception&) {
            gpd_fits.push_back(std::nullopt);
        }
        try {
            par_fits.push_back(fit_truncated_pareto(energies, k));
        } catch (const std::exception&) {
            par_fits.push_back(std::nullopt);
        }
    }

    for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
        est([&] {
            if (!gpd_fits[i]) throw std::runtime_error("fit failed");
            return endpoint_tgpd(*gpd_fits[i], sample).estimate;
        });
    }
    for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
        est([&] {
            if (!par_fits[i]) throw std::runtime_error("fit failed");
            return endpoint_tpareto(*par_fits[i], sample).estimate;
        });
    }
    est([&] { return npg_endpoint(sample).endpoint.estimate; });
    est([&] { return npos_endpoint(sample).estimate; });
    for (int k : cfg.k_grid) est([&] { return fl_endpoint(sample, k).estimate; });
    est([&] { return fl_endpoint(sample, static_cast<int>(n)).estimate; });
    for (int k : cfg.k_grid) est([&] { return efl_endpoint(sample, k).estimate; });
    est([&] { return efl_endpoint(sample, static_cast<int>(n)).estimate; });
    est([&] { return rw_endpoint(sample).estimate; });
    est([&] { return rwc_endpoint(sample).estimate; });

    std::optional<GRFit> gr;
    est([&] {
        KSResult ks = ks_endpoint(sample);
        gr = ks.gr;
        return ks.endpoint.estimate;
    });

    for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
        bnd([&] {
            if (!gpd_fits[i]) throw std::runtime_error("fit failed");
            EndpointResult ep = endpoint_tgpd(*gpd_fits[i], sample);
            TruncationOdds odds = truncation_odds_tgpd(*gpd_fits[i], sample);
            return upper_bound_tgpd(ep, *gpd_fits[i], odds, sample, cfg.alpha);
        });
    }
    for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
        bnd([&] {
            if (!par_fits[i]) throw std::runtime_error("fit failed");
            EndpointResult ep = endpoint_tpareto(*par_fits[i], sample);
            TruncationOdds odds = truncation_odds_tpareto(*par_fits[i], n);
            return upper_bound_tpareto(ep, *par_fits[i], odds, n, cfg.alpha);
        });
    }
    bnd([&] { return npos_upper_bound(sample, cfg.alpha); });
    bnd([&] {
        if (!gr) gr = ks_beta(sample, ks_endpoint(sample).endpoint.estimate);
        return pisarenko_upper_bound(sample, gr->beta, cfg.alpha);
    });
    return rep;
}

}  // namespace

std::vector<double> sample_truncated_gr(const TruncatedGRParams& params, int n,
                                        std::uint64_t seed) {
    SplitMix64 rng(seed);
    const double a = 1.0 - std::exp(-params.beta * (params.T_m - params.t_m));
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = params.t_m - std::log1p(-rng.u01() * a) / params.beta;
    }
    std::sort(out.begin(), out.end());
    return out;
}

SimulationReport run_study(const StudyConfig& config) {
    if (config.replicates < 1 || config.sample_size < 10 || config.alpha <= 0.0 ||
        config.alpha >= 1.0) {
        throw std::invalid_argument("run_study: invalid configuration");
    }

    std::vector<RepValues> reps(config.replicates);
    std::atomic<int> next{0};
    int n_threads = config.threads > 0
                        ? config.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min(n_threads, config.replicates);

    auto worker = [&] {
        for (;;) {
            int r = next.fetch_add(1);
            if (r >= config.replicates) break;
            reps[r] = one_replicate(config, derive_seed(config.master_seed, r));
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    // Sequential aggregation in replicate order => thread-count independent.
    SimulationReport report;
    report.config = config;
    const double T = config.params.T_m;

    std::vector<Slot> eslots = estimator_slots(config);
    for (std::size_t s = 0; s < eslots.size(); ++s) {
        double sum = 0.0, sum_sq = 0.0;
        double c_mean = 0.0, c_mse = 0.0;  // Kahan compensation
        int used = 0, failed = 0;
        for (const RepValues& rep : reps) {
            double v = rep.estimates[s];
            if (!std::isfinite(v)) {
                ++failed;
                continue;
            }
            ++used;
            double y = v - c_mean;
            double t1 = sum + y;
            c_mean = (t1 - sum) - y;
            sum = t1;
            double sq = (v - T) * (v - T);
            double y2 = sq - c_mse;
            double t2 = sum_sq + y2;
            c_mse = (t2 - sum_sq) - y2;
            sum_sq = t2;
        }
        MetricRow row;
        row.estimator = eslots[s].name;
        row.k = eslots[s].k;
        row.replicates_used = used;
        row.failure_count = failed;
        row.relative_mean = used ? (sum / used) / T : kNaN;
        row.relative_mse = used ? (sum_sq / used) / (T * T) : kNaN;
        report.estimates.push_back(row);
    }

    std::vector<Slot> bslots = bound_slots(config);
    for (std::size_t s = 0; s < bslots.size(); ++s) {
        int used = 0, covered = 0;
        for (const RepValues& rep : reps) {
            double v = rep.bounds[s];
            if (std::isnan(v)) continue;
            ++used;
            if (v >= T) ++covered;  // +inf covers by construction
        }
        CoverageRow row;
        row.bound = bslots[s].name;
        row.k = bslots[s].k;
        row.replicates_used = used;
        row.coverage = used ? static_cast<double>(covered) / used : kNaN;
        report.coverages.push_back(row);
    }
    return report;
}

}  // namespace mmax
