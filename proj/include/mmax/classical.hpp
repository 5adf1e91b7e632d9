#pragma once

#include <optional>

#include "mmax/catalog.hpp"
#include "mmax/evt.hpp"

namespace mmax {

struct NPConfig {
    double nu = 1.0;                    // tail-order parameter
    std::optional<double> bandwidth;    // kernel bandwidth; computed if absent
    int quadrature_panels = 8;          // geometric panels toward T, 64 nodes each
    int max_iter = 200;
    double tol = 1e-6;                  // magnitude units
    double divergence_ceiling = 20.0;   // iterate above t_M + ceiling => divergent
};

struct GRFit {
    double beta = 0.0;   // truncation-corrected rate (Taylor/Eq. 25)
    double beta0 = 0.0;  // Aki-Utsu initial estimate
    double t_m = 0.0;
    double t_m_current = 0.0;  // endpoint iterate the correction used
};

struct NPGResult {
    EndpointResult endpoint;
    double bandwidth = 0.0;     // bandwidth actually used
    bool lscv_bandwidth = true; // false when the fallback rule was used
};

// Least-squares (density) cross-validation over a 50-point log-spaced grid
// spanning [0.1, 10] * s * n^{-1/5}.
double lscv_bandwidth(const std::vector<double>& sample);

// Deterministic fallback rule 1.06 * min(s, IQR/1.34) * n^{-1/5}, used when
// the N-P-G fixed point diverges under the cross-validated bandwidth.
double fallback_bandwidth(const std::vector<double>& sample);

// One Delta evaluation of the N-P-G iteration: integral over [t_M, T] of the
// n-th power of the renormalized Gaussian-kernel CDF.
double npg_delta(const MagnitudeSample& sample, double T, double h,
                 const NPConfig& config = {});

// Full N-P-G fixed-point iteration. Throws on non-convergence with both
// bandwidth rules.
NPGResult npg_endpoint(const MagnitudeSample& sample, const NPConfig& config = {});

// N-P-OS: empirical-CDF plug-in, evaluated back-to-front so the geometric
// weights accumulate smallest-first.
EndpointResult npos_endpoint(const MagnitudeSample& sample);

double npos_upper_bound(const MagnitudeSample& sample, double alpha,
                        const NPConfig& config = {});

EndpointResult fl_endpoint(const MagnitudeSample& sample, int k);
EndpointResult efl_endpoint(const MagnitudeSample& sample, int k);
EndpointResult rw_endpoint(const MagnitudeSample& sample);
double rw_upper_bound(const MagnitudeSample& sample, double alpha);
EndpointResult rwc_endpoint(const MagnitudeSample& sample, const NPConfig& config = {});

// Aki-Utsu beta0 with the Taylor truncation correction at T_M_current.
GRFit ks_beta(const MagnitudeSample& sample, double t_m_current);

struct KSResult {
    EndpointResult endpoint;
    GRFit gr;
    int iterations = 0;
};

// Kijko-Sellevoll fixed point, interleaving the beta update each step.
KSResult ks_endpoint(const MagnitudeSample& sample, double tol = 1e-5,
                     int max_iter = 200, double divergence_ceiling = 20.0);

// Pisarenko parametric bound; +inf when alpha is at or below the finite-bound
// threshold (a valid, flagged result).
double pisarenko_upper_bound(const MagnitudeSample& sample, double beta,
                             double alpha);

// Largest alpha for which the Pisarenko bound is infinite:
// (1 - e^{-beta (M_max - t_M)})^n.
double pisarenko_alpha_threshold(const MagnitudeSample& sample, double beta);

}  // namespace mmax
