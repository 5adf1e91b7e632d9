#include "mmax/evt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmax/diagnostics.hpp"
#include "mmax/special.hpp"

namespace mmax {

double tgpd_negll(double xi, double sigma, const std::vector<double>& excesses,
                  bool truncated) {
    const std::size_t k = excesses.size();
    if (sigma <= 0.0) return kInf;
    double e1 = 0.0;
    for (double e : excesses) e1 = std::max(e1, e);

    if (std::abs(xi) < kXiZeroEps) {
        double sum = 0.0;
        for (double e : excesses) sum += e;
        double ll = -static_cast<double>(k) * std::log(sigma) - sum / sigma;
        if (truncated) {
            ll -= k * std::log(-std::expm1(-e1 / sigma));
        }
        return -ll;
    }

    double ll = -static_cast<double>(k) * std::log(sigma);
    for (double e : excesses) {
        double z = 1.0 + xi * e / sigma;
        if (z <= 0.0) return kInf;
        ll += (-1.0 / xi - 1.0) * std::log(z);
    }
    if (truncated) {
        double z_e1 = 1.0 + xi * e1 / sigma;
        if (z_e1 <= 0.0) return kInf;
        double surv = std::pow(z_e1, -1.0 / xi);
        if (surv >= 1.0) return kInf;
        ll -= k * std::log(1.0 - surv);
    }
    return -ll;
}

TruncatedGPDFit fit_truncated_gpd(const MagnitudeSample& sample, int k,
                                  bool truncated) {
    const std::size_t n = sample.n();
    if (k < 4 || static_cast<std::size_t>(k) > n - 1) {
        throw std::invalid_argument("fit_truncated_gpd: need 4 <= k <= n-1");
    }
    double u = sample.values[n - k - 1];
    std::vector<double> exc;
    exc.reserve(k);
    for (std::size_t j = n; j-- > n - k;) {
        exc.push_back(sample.values[j] - u);
    }
    double mean = 0.0;
    for (double e : exc) mean += e;
    mean /= k;

    auto negll = [&](const std::vector<double>& p) {
        return tgpd_negll(p[0], std::exp(p[1]), exc, truncated);
    };

    // Retry schedule: five starts around the exponential-fit scale.
    const double starts[5][2] = {{0.01, mean},        {0.3, mean},
                                 {-0.3, mean},        {0.8, mean * 0.5},
                                 {-0.1, mean * 2.0}};
    NelderMeadResult best;
    best.fval = kInf;
    for (const auto& s : starts) {
        NelderMeadResult r = nelder_mead(negll, {s[0], std::log(s[1])});
        if (r.fval < best.fval) best = r;
    }
    if (!std::isfinite(best.fval)) {
        throw std::runtime_error("fit_truncated_gpd: optimizer failed to converge");
    }

    TruncatedGPDFit fit;
    fit.k = k;
    fit.xi = best.x[0];
    fit.sigma = std::exp(best.x[1]);
    fit.tau = fit.xi / fit.sigma;
    fit.threshold = u;
    fit.max_excess = exc.front();  // excesses stored descending
    fit.log_likelihood = -best.fval;
    return fit;
}

namespace {

// Fitted untruncated-GPD survival probability at the maximum excess.
double gpd_survival_at_max(const TruncatedGPDFit& fit) {
    if (std::abs(fit.xi) < kXiZeroEps) {
        return std::exp(-fit.max_excess / fit.sigma);
    }
    double z = 1.0 + fit.tau * fit.max_excess;
    if (z <= 0.0) return 0.0;
    return std::pow(z, -1.0 / fit.xi);
}

EndpointResult make_endpoint(const std::string& name, int k, double raw,
                             double max_obs, bool clamp) {
    EndpointResult r;
    r.estimator = name;
    r.k = k;
    r.estimate_raw = raw;
    r.estimate = (clamp && std::isfinite(raw)) ? std::max(raw, max_obs) : raw;
    return r;
}

}  // namespace

EndpointResult endpoint_tgpd(const TruncatedGPDFit& fit,
                             const MagnitudeSample& sample, bool clamp) {
    const double k = fit.k;
    double raw;
    if (std::abs(fit.xi) < kXiZeroEps) {
        double surv = std::exp(-fit.max_excess / fit.sigma);
        double denom = surv - 1.0 / k;
        raw = (denom <= 0.0)
                  ? kInf
                  : fit.threshold + fit.sigma * std::log((1.0 - 1.0 / k) / denom);
    } else {
        double surv = gpd_survival_at_max(fit);
        double denom = surv - 1.0 / k;
        raw = (denom <= 0.0)
                  ? kInf
                  : fit.threshold +
                        (std::pow((1.0 - 1.0 / k) / denom, fit.xi) - 1.0) / fit.tau;
    }
    return make_endpoint("tgpd", fit.k, raw, sample.max(), clamp);
}

TruncationOdds truncation_odds_tgpd(const TruncatedGPDFit& fit,
                                    const MagnitudeSample& sample) {
    const double n = static_cast<double>(sample.n());
    const double k = fit.k;
    double surv = gpd_survival_at_max(fit);
    double v = ((k + 1.0) / (n + 1.0)) * (surv - 1.0 / (k + 1.0)) / (1.0 - surv);
    return {std::max(0.0, v), OddsScale::magnitude_gpd};
}

TruncationTest test_truncation_gpd(const MagnitudeSample& sample, int k,
                                   double alpha) {
    TruncatedGPDFit fit0 = fit_truncated_gpd(sample, k, /*truncated=*/false);
    double surv = gpd_survival_at_max(fit0);
    double L = (k + 1.0) * surv;
    TruncationTest t;
    t.statistic = L;
    t.p_value = std::exp(-L);
    t.reject = t.p_value < alpha;
    return t;
}

double upper_bound_tgpd(const EndpointResult& endpoint, const TruncatedGPDFit& fit,
                        const TruncationOdds& odds, const MagnitudeSample& sample,
                        double alpha) {
    (void)sample;
    if (odds.value <= 0.0 || !std::isfinite(endpoint.estimate)) return kInf;
    const double k = fit.k;
    const double n = static_cast<double>(sample.n());
    double A = (k + 1.0) / ((n + 1.0) * odds.value);
    double term;
    if (std::abs(fit.xi) < kXiZeroEps) {
        term = (A / (k + 1.0)) * fit.sigma;
    } else {
        term = (A / (k + 1.0)) * std::pow(1.0 + A, fit.xi) * (fit.xi / fit.tau);
    }
    return endpoint.estimate - (std::log(alpha) + 1.0) * term;
}

TruncatedParetoFit fit_truncated_pareto(const std::vector<double>& energies,
                                        int k) {
    const std::size_t n = energies.size();
    if (k < 2 || static_cast<std::size_t>(k) > n - 1) {
        throw std::invalid_argument("fit_truncated_pareto: need 2 <= k <= n-1");
    }
    double H = hill(energies, k);
    double R = energies[n - k - 1] / energies[n - 1];
    double ln_r = std::log(R);

    auto f = [&](double xi) {
        double rp = std::pow(R, 1.0 / xi);
        return xi + rp * ln_r / (1.0 - rp) - H;
    };

    // Scan for sign changes: dense below xi = 2, coarser out to 20.
    std::vector<double> grid;
    for (int i = 0; i < 200; ++i) grid.push_back(1e-6 + (2.0 - 1e-6) * i / 199.0);
    for (int i = 1; i < 100; ++i) grid.push_back(2.0 + 18.0 * i / 99.0);

    std::vector<double> roots;
    double prev = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        double cur = f(grid[i]);
        if (prev == 0.0) {
            roots.push_back(grid[i - 1]);
        } else if (prev * cur < 0.0) {
            roots.push_back(brent_root(f, grid[i - 1], grid[i]));
        }
        prev = cur;
    }
    if (roots.empty()) {
        throw std::runtime_error(
            "fit_truncated_pareto: no root of the Hill equation (degenerate tail)");
    }

    double chosen = roots[0];
    if (roots.size() > 1) {
        // Tie-break on the truncated-Pareto log-likelihood of the top k+1.
        double t = energies[n - k - 1];
        double T = energies[n - 1];
        double log_sum = 0.0;
        for (std::size_t j = n - k; j < n; ++j) log_sum += std::log(energies[j] / t);
        auto loglik = [&](double xi) {
            double a = 1.0 / xi;
            return k * std::log(a) + (-a - 1.0) * log_sum -
                   k * std::log(1.0 - std::pow(t / T, a)) - k * std::log(t);
        };
        for (double r : roots) {
            if (loglik(r) > loglik(chosen)) chosen = r;
        }
    }

    TruncatedParetoFit fit;
    fit.k = k;
    fit.xi_plus = chosen;
    fit.r_k = R;
    fit.rho_hat = 1.0 / R;
    fit.hill = H;
    return fit;
}

EndpointResult endpoint_tpareto(const TruncatedParetoFit& fit,
                                const MagnitudeSample& sample, bool clamp) {
    const double k = fit.k;
    double base = std::pow(fit.r_k, 1.0 / fit.xi_plus) - 1.0 / (k + 1.0);
    double raw;
    if (base <= 0.0) {
        raw = kInf;
    } else {
        const std::size_t n = sample.n();
        double e_thresh = magnitude_to_energy(sample.values[n - fit.k - 1]);
        double te = e_thresh * std::pow(base / (1.0 - 1.0 / (k + 1.0)), -fit.xi_plus);
        raw = energy_to_magnitude(te);
    }
    return make_endpoint("tpareto", fit.k, raw, sample.max(), clamp);
}

TruncationOdds truncation_odds_tpareto(const TruncatedParetoFit& fit,
                                       std::size_t n) {
    const double k = fit.k;
    double rp = std::pow(fit.r_k, 1.0 / fit.xi_plus);
    double v = ((k + 1.0) / (n + 1.0)) * (rp - 1.0 / (k + 1.0)) / (1.0 - rp);
    return {std::max(0.0, v), OddsScale::energy_pareto};
}

TruncationTest test_truncation_pareto(const std::vector<double>& energies, int k,
                                      double alpha) {
    const std::size_t n = energies.size();
    double H = hill(energies, k);
    double R = energies[n - k - 1] / energies[n - 1];
    double L = (k + 1.0) * std::pow(R, 1.0 / H);
    TruncationTest t;
    t.statistic = L;
    t.p_value = std::exp(-L);
    t.reject = t.p_value < alpha;
    return t;
}

double upper_bound_tpareto(const EndpointResult& endpoint,
                           const TruncatedParetoFit& fit,
                           const TruncationOdds& odds, std::size_t n,
                           double alpha) {
    if (odds.value <= 0.0 || !std::isfinite(endpoint.estimate)) return kInf;
    const double k = fit.k;
    double A = (k + 1.0) / ((n + 1.0) * odds.value);
    return endpoint.estimate -
           (A * fit.xi_plus / (k + 1.0)) * (std::log(alpha) + 1.0) / kLn10Times15;
}

}  // namespace mmax
