#include "mmax/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmax/special.hpp"

namespace mmax {

namespace {

double sample_sd(const std::vector<double>& x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (n - 1));
}

double quantile_sorted(const std::vector<double>& ascending, double q) {
    // Linear interpolation between closest ranks (same rule as numpy default).
    const std::size_t n = ascending.size();
    double pos = q * (n - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return ascending.back();
    double frac = pos - lo;
    return ascending[lo] * (1.0 - frac) + ascending[lo + 1] * frac;
}

EndpointResult simple_endpoint(const std::string& name, int k, double value) {
    EndpointResult r;
    r.estimator = name;
    r.k = k;
    r.estimate = value;
    r.estimate_raw = value;
    return r;
}

}  // namespace

double lscv_bandwidth(const std::vector<double>& sample) {
    const std::size_t n = sample.size();
    double s = sample_sd(sample);
    double base = s * std::pow(static_cast<double>(n), -0.2);
    const int grid_size = 50;
    const double lo = std::log(0.1 * base);
    const double hi = std::log(10.0 * base);

    const double inv_sqrt2pi = 0.3989422804014327;
    const double inv_sqrt4pi = 0.28209479177387814;

    double best_h = 0.0;
    double best_v = kInf;
    for (int g = 0; g < grid_size; ++g) {
        double h = std::exp(lo + (hi - lo) * g / (grid_size - 1.0));
        double sum4 = 0.0;  // sum over all pairs of phi_{sd sqrt2}(d)
        double sum2_off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double d2 = (sample[i] - sample[j]) * (sample[i] - sample[j]);
                sum4 += std::exp(-d2 / (4.0 * h * h));
                sum2_off += std::exp(-d2 / (2.0 * h * h));
            }
        }
        double term1 =
            (2.0 * sum4 * inv_sqrt4pi + n * inv_sqrt4pi) / (n * static_cast<double>(n) * h);
        double term2 = 2.0 * (2.0 * sum2_off * inv_sqrt2pi) /
                       (n * (n - 1.0) * h);
        double v = term1 - term2;
        if (v < best_v) {
            best_v = v;
            best_h = h;
        }
    }
    return best_h;
}

double fallback_bandwidth(const std::vector<double>& sample) {
    const std::size_t n = sample.size();
    double s = sample_sd(sample);
    double iqr = quantile_sorted(sample, 0.75) - quantile_sorted(sample, 0.25);
    return 1.06 * std::min(s, iqr / 1.34) * std::pow(static_cast<double>(n), -0.2);
}

double npg_delta(const MagnitudeSample& sample, double T, double h,
                 const NPConfig& config) {
    const std::size_t n = sample.n();
    const double t_m = sample.t_m;

    auto kernel_sum = [&](double m) {
        double s = 0.0;
        for (double v : sample.values) s += norm_cdf((m - v) / h);
        return s;
    };
    const double phi_t = kernel_sum(t_m);
    const double denom = kernel_sum(T) - phi_t;
    if (denom <= 0.0) return 0.0;

    // Panels halve geometrically toward T where F^n concentrates.
    std::vector<double> bounds{t_m};
    double span = T - t_m;
    for (int j = 1; j < config.quadrature_panels; ++j) {
        bounds.push_back(T - span / std::pow(2.0, j));
    }
    bounds.push_back(T);

    const double n_exp = static_cast<double>(n);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
        total += gauss_legendre_64(
            [&](double m) {
                double g = (kernel_sum(m) - phi_t) / denom;
                return g > 0.0 ? std::exp(n_exp * std::log(g)) : 0.0;
            },
            bounds[p], bounds[p + 1]);
    }
    return total;
}

namespace {

// Fixed-point iteration at a given bandwidth; returns the limit or nullopt on
// divergence / non-convergence.
std::optional<double> npg_iterate(const MagnitudeSample& sample, double h,
                                  const NPConfig& config) {
    const double mx = sample.max();
    double T = mx;
    for (int it = 0; it < config.max_iter; ++it) {
        double next = mx + npg_delta(sample, T, h, config);
        if (next > sample.t_m + config.divergence_ceiling) return std::nullopt;
        if (std::abs(next - T) < config.tol) return next;
        T = next;
    }
    return std::nullopt;
}

}  // namespace

NPGResult npg_endpoint(const MagnitudeSample& sample, const NPConfig& config) {
    if (sample.n() < 10) throw std::invalid_argument("npg_endpoint: need n >= 10");

    NPGResult res;
    double h = config.bandwidth ? *config.bandwidth : lscv_bandwidth(sample.values);
    res.lscv_bandwidth = !config.bandwidth;
    std::optional<double> T = npg_iterate(sample, h, config);
    if (!T && !config.bandwidth) {
        // Cross-validated bandwidth can undersmooth jittered decimal data so
        // much that the F^n mass escapes and the iteration diverges; fall back
        // to the deterministic reference rule.
        h = fallback_bandwidth(sample.values);
        res.lscv_bandwidth = false;
        T = npg_iterate(sample, h, config);
    }
    if (!T) {
        throw std::runtime_error("npg_endpoint: fixed point did not converge");
    }
    res.bandwidth = h;
    res.endpoint = simple_endpoint("npg", 0, *T);
    return res;
}

EndpointResult npos_endpoint(const MagnitudeSample& sample) {
    const std::size_t n = sample.n();
    if (n < 2) throw std::invalid_argument("npos_endpoint: need n >= 2");
    // Accumulate smallest weights first: i = n-1 down to 0.
    double s = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        s += std::exp(-static_cast<double>(i)) * sample.values[n - 1 - i];
    }
    double mx = sample.max();
    return simple_endpoint("npos", 0, mx + (mx - (1.0 - std::exp(-1.0)) * s));
}

double npos_upper_bound(const MagnitudeSample& sample, double alpha,
                        const NPConfig& config) {
    const std::size_t n = sample.n();
    if (n < 2) throw std::invalid_argument("npos_upper_bound: need n >= 2");
    double mx = sample.values[n - 1];
    double m2 = sample.values[n - 2];
    if (mx == m2) return mx;  // degenerate spacing
    double denom = std::pow(1.0 - alpha, -config.nu) - 1.0;
    return mx + (mx - m2) / denom;
}

EndpointResult fl_endpoint(const MagnitudeSample& sample, int k) {
    const std::size_t n = sample.n();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("fl_endpoint: k out of range");
    }
    double mx = sample.max();
    return simple_endpoint("fl", k, mx + (mx - sample.values[n - k]) / k);
}

EndpointResult efl_endpoint(const MagnitudeSample& sample, int k) {
    const std::size_t n = sample.n();
    if (k < 2 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("efl_endpoint: k out of range");
    }
    double mean_rest = 0.0;  // mean of M_{n-i+1,n}, i = 2..k
    for (std::size_t j = n - k; j < n - 1; ++j) mean_rest += sample.values[j];
    mean_rest /= (k - 1);
    double mx = sample.max();
    return simple_endpoint("efl", k, mx + (mx - mean_rest) / k);
}

EndpointResult rw_endpoint(const MagnitudeSample& sample) {
    const std::size_t n = sample.n();
    if (n < 2) throw std::invalid_argument("rw_endpoint: need n >= 2");
    return simple_endpoint("rw", 0,
                           2.0 * sample.values[n - 1] - sample.values[n - 2]);
}

double rw_upper_bound(const MagnitudeSample& sample, double alpha) {
    // (1-alpha)/alpha = 1/((1-alpha)^{-1} - 1): identical to the N-P-OS bound
    // at nu = 1, so delegate to keep the identity exact in floating point.
    return npos_upper_bound(sample, alpha, NPConfig{});
}

EndpointResult rwc_endpoint(const MagnitudeSample& sample, const NPConfig& config) {
    const std::size_t n = sample.n();
    if (n < 2) throw std::invalid_argument("rwc_endpoint: need n >= 2");
    double mx = sample.values[n - 1];
    return simple_endpoint(
        "rwc", 0, mx + (mx - sample.values[n - 2]) / (2.0 * config.nu));
}

GRFit ks_beta(const MagnitudeSample& sample, double t_m_current) {
    double mean = 0.0;
    for (double v : sample.values) mean += v;
    mean /= sample.n();
    if (mean <= sample.t_m) {
        throw std::runtime_error("ks_beta: sample mean at or below threshold");
    }
    GRFit fit;
    fit.t_m = sample.t_m;
    fit.t_m_current = t_m_current;
    fit.beta0 = 1.0 / (mean - sample.t_m);
    double d = t_m_current - sample.t_m;
    double e = std::exp(-fit.beta0 * d);
    fit.beta = fit.beta0 * (1.0 - fit.beta0 * d * e / (1.0 - e));
    return fit;
}

KSResult ks_endpoint(const MagnitudeSample& sample, double tol, int max_iter,
                     double divergence_ceiling) {
    const std::size_t n = sample.n();
    if (n < 10) throw std::invalid_argument("ks_endpoint: need n >= 10");
    const double mx = sample.max();
    const double t_m = sample.t_m;
    double T = mx;
    KSResult res;
    for (int it = 0; it < max_iter; ++it) {
        res.gr = ks_beta(sample, T);
        double beta = res.gr.beta;
        double q = std::exp(-beta * (T - t_m));
        double n1 = n / (1.0 - q);
        double n2 = n1 * q;
        double next = mx +
                      (exp_integral_e1(n2) - exp_integral_e1(n1)) /
                          (beta * std::exp(-n2)) +
                      t_m * std::exp(-static_cast<double>(n));
        if (next > t_m + divergence_ceiling) {
            throw std::runtime_error("ks_endpoint: iteration diverged at T=" +
                                     std::to_string(next));
        }
        res.iterations = it + 1;
        if (std::abs(next - T) < tol) {
            res.endpoint = simple_endpoint("ks", 0, next);
            return res;
        }
        T = next;
    }
    throw std::runtime_error("ks_endpoint: no convergence after " +
                             std::to_string(max_iter) + " iterations");
}

double pisarenko_upper_bound(const MagnitudeSample& sample, double beta,
                             double alpha) {
    const std::size_t n = sample.n();
    double mx = sample.max();
    double arg = (std::exp(-beta * (mx - sample.t_m)) - 1.0) /
                     std::pow(alpha, 1.0 / n) +
                 1.0;
    if (arg <= 0.0) return kInf;
    return sample.t_m - std::log(arg) / beta;
}

double pisarenko_alpha_threshold(const MagnitudeSample& sample, double beta) {
    const std::size_t n = sample.n();
    double p = 1.0 - std::exp(-beta * (sample.max() - sample.t_m));
    return std::pow(p, static_cast<double>(n));
}

}  // namespace mmax
