#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mmax/catalog.hpp"

namespace mmax {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Below |xi| = 1e-6 the (1 + xi x)^{-1/xi} expressions switch to their
// analytic exponential limits.
inline constexpr double kXiZeroEps = 1e-6;

struct TruncatedGPDFit {
    int k = 0;
    double xi = 0.0;              // shape
    double tau = 0.0;             // xi / sigma
    double sigma = 0.0;           // GPD scale at the threshold
    double threshold = 0.0;       // M_{n-k,n}
    double max_excess = 0.0;      // E1 = M_{n,n} - M_{n-k,n}
    double log_likelihood = 0.0;
};

struct TruncatedParetoFit {
    int k = 0;
    double xi_plus = 0.0;  // tail index of the parent energy variable
    double r_k = 0.0;      // R_k = E_{n-k,n} / E_{n,n}
    double rho_hat = 0.0;  // 1 / R_k
    double hill = 0.0;     // Hill statistic used in the root equation
};

enum class OddsScale { magnitude_gpd, energy_pareto };

struct TruncationOdds {
    double value = 0.0;  // clamped at zero
    OddsScale scale = OddsScale::magnitude_gpd;
};

struct UpperBound {
    double alpha = 0.1;
    double value = 0.0;  // may be +inf
};

struct EndpointResult {
    std::string estimator;
    int k = 0;                 // 0 when the estimator has no k parameter
    double estimate = 0.0;     // clamped at M_{n,n} when clamping is enabled
    double estimate_raw = 0.0; // as produced by the formula; may be +inf
    std::optional<UpperBound> upper_bound;
};

struct TruncationTest {
    double statistic = 0.0;  // L
    double p_value = 1.0;    // exp(-L)
    bool reject = false;
};

// --- truncated GPD path (magnitude scale) ---

// MLE of (xi, tau) for the k excesses under the GPD right-truncated at the
// observed maximum excess E1. Multi-start Nelder-Mead over (xi, ln sigma).
// `truncated = false` fits the plain GPD (used by the truncation test).
TruncatedGPDFit fit_truncated_gpd(const MagnitudeSample& sample, int k,
                                  bool truncated = true);

// Endpoint estimator; +inf when no finite endpoint is detected.
EndpointResult endpoint_tgpd(const TruncatedGPDFit& fit,
                             const MagnitudeSample& sample, bool clamp = true);

TruncationOdds truncation_odds_tgpd(const TruncatedGPDFit& fit,
                                    const MagnitudeSample& sample);

// L = (k+1) (1 + tau0 E1)^{-1/xi0} under the untruncated fit; p = exp(-L).
TruncationTest test_truncation_gpd(const MagnitudeSample& sample, int k,
                                   double alpha = 0.1);

// Upper confidence bound; +inf when the odds are zero.
double upper_bound_tgpd(const EndpointResult& endpoint, const TruncatedGPDFit& fit,
                        const TruncationOdds& odds, const MagnitudeSample& sample,
                        double alpha);

// --- truncated Pareto path (energy scale) ---

// Solves H_{k,n} = xi + R^{1/xi} ln R / (1 - R^{1/xi}) for xi in (0, 20] by
// bracket scan + Brent; multiple roots are resolved by the truncated-Pareto
// log-likelihood of the top k+1 order statistics. Throws when no root exists.
TruncatedParetoFit fit_truncated_pareto(const std::vector<double>& ascending_energies,
                                        int k);

// Endpoint on the energy scale mapped back to magnitude.
EndpointResult endpoint_tpareto(const TruncatedParetoFit& fit,
                                const MagnitudeSample& sample, bool clamp = true);

TruncationOdds truncation_odds_tpareto(const TruncatedParetoFit& fit,
                                       std::size_t n);

// L = (k+1) R^{1/H}; p = exp(-L).
TruncationTest test_truncation_pareto(const std::vector<double>& ascending_energies,
                                      int k, double alpha = 0.1);

double upper_bound_tpareto(const EndpointResult& endpoint, const TruncatedParetoFit& fit,
                           const TruncationOdds& odds, std::size_t n, double alpha);

// Negative log-likelihood of the (optionally truncated) GPD; exposed for the
// stationarity/grid oracles.
double tgpd_negll(double xi, double sigma, const std::vector<double>& excesses,
                  bool truncated);

}  // namespace mmax
