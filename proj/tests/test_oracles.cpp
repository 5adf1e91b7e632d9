#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fixture.hpp"
#include "mmax/classical.hpp"
#include "mmax/diagnostics.hpp"
#include "mmax/evt.hpp"
#include "mmax/rng.hpp"
#include "mmax/simulation.hpp"
#include "mmax/special.hpp"

using namespace mmax;

TEST_CASE("oracle: truncated-GR sampler vs analytic CDF, 1e6 draws") {
    TruncatedGRParams p;
    const int n = 1000000;
    std::vector<double> v = sample_truncated_gr(p, n, 20160101);
    const double denom = 1.0 - std::exp(-p.beta * (p.T_m - p.t_m));
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        double f = (1.0 - std::exp(-p.beta * (v[i] - p.t_m))) / denom;
        ks = std::max(ks, std::max(std::abs(f - double(i) / n),
                                   std::abs(f - double(i + 1) / n)));
    }
    CHECK(ks < 1.36 / std::sqrt(double(n)) * 1.5);
}

TEST_CASE("oracle: truncated-Pareto root maximizes the conditional likelihood") {
    MagnitudeSample s = testutil::groningen_sample();
    std::vector<double> e = testutil::energies(s);
    const std::size_t n = e.size();

    // Conditional log-likelihood of the top k order statistics above the
    // threshold t = E_{n-k,n} under Pareto(1/xi) right-truncated at E_{n,n}
    // (Aban-Meerschaert-Panorska form), written independently of the library.
    auto loglik = [&](int k, double xi) {
        double t = e[n - k - 1], T = e[n - 1];
        double a = 1.0 / xi;
        double ll = k * std::log(a) + k * a * std::log(t) -
                    k * std::log(1.0 - std::pow(t / T, a));
        for (int j = 0; j < k; ++j) ll -= (a + 1.0) * std::log(e[n - 1 - j]);
        return ll;
    };

    for (int k : {75, 100, 125, 150, 200}) {
        TruncatedParetoFit fit = fit_truncated_pareto(e, k);
        double best = loglik(k, fit.xi_plus);
        for (int g = 0; g <= 4000; ++g) {
            double xi = 0.05 + g * (10.0 - 0.05) / 4000.0;
            CHECK(loglik(k, xi) <= best + 1e-6);
        }
    }
}

TEST_CASE("oracle: truncated-GPD MLE is a stationary point and beats a local grid") {
    MagnitudeSample s = testutil::groningen_sample();
    for (int k : {100, 125, 150}) {
        TruncatedGPDFit fit = fit_truncated_gpd(s, k);
        std::vector<double> ex;
        for (int j = 0; j < k; ++j) {
            ex.push_back(s.values[s.n() - 1 - j] - s.values[s.n() - 1 - k]);
        }
        auto nll = [&](double xi, double sigma) {
            return tgpd_negll(xi, sigma, ex, /*truncated=*/true);
        };
        const double f0 = nll(fit.xi, fit.sigma);

        // central finite-difference gradients
        const double hx = 1e-5, hs = 1e-5 * fit.sigma;
        double gx = (nll(fit.xi + hx, fit.sigma) - nll(fit.xi - hx, fit.sigma)) / (2 * hx);
        double gs = (nll(fit.xi, fit.sigma + hs) - nll(fit.xi, fit.sigma - hs)) / (2 * hs);
        CHECK(std::abs(gx) < 1e-4);
        CHECK(std::abs(gs * fit.sigma) < 1e-4);  // scale-free gradient

        // brute-force grid around the optimum
        for (int i = -20; i <= 20; ++i) {
            for (int j = -20; j <= 20; ++j) {
                double xi = fit.xi + 0.01 * i;
                double sigma = fit.sigma * (1.0 + 0.01 * j);
                CHECK(nll(xi, sigma) >= f0 - 1e-6);
            }
        }
    }
}

TEST_CASE("oracle: N-P-G Delta vs 1e6-node trapezoid") {
    SplitMix64 rng(314);
    std::vector<double> v;
    double cur = 1.5;
    for (int i = 0; i < 20; ++i) {
        cur += 0.02 + rng.u01() * 0.15;
        v.push_back(cur);
    }
    MagnitudeSample s;
    s.values = v;
    s.t_m = 1.5;
    const double h = 0.12;
    const double T = s.max() + 0.25;
    const std::size_t n = s.n();

    auto kernel_cdf = [&](double x) {
        double g = 0.0;
        for (double xi : s.values) g += norm_cdf((x - xi) / h);
        return g / double(n);
    };
    const double g_lo = kernel_cdf(s.t_m), g_hi = kernel_cdf(T);
    auto integrand = [&](double x) {
        return std::pow((kernel_cdf(x) - g_lo) / (g_hi - g_lo), double(n));
    };
    const int nodes = 1000000;
    double acc = 0.5 * (integrand(s.t_m) + integrand(T));
    double step = (T - s.t_m) / nodes;
    for (int i = 1; i < nodes; ++i) acc += integrand(s.t_m + i * step);
    double reference = acc * step;

    CHECK(std::abs(npg_delta(s, T, h) - reference) < 1e-4);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double e1_quadrature(double z) {
    auto f = [](double s) { return std::exp(-s) / s; };
    double b = z + 60.0;  // truncation error below e^{-60}, negligible
    double m = 0.5 * (z + b);
    double whole = (b - z) / 6.0 * (f(z) + 4.0 * f(m) + f(b));
    // relative tolerance: E1(z) ranges over many orders of magnitude in z
    double tol = std::max(std::abs(whole), 1e-300) * 1e-13;
    return adaptive_simpson(f, z, b, f(z), f(m), f(b), whole, tol, 48);
}

}  // namespace

TEST_CASE("oracle: E1 vs adaptive quadrature, relative error < 1e-10") {
    for (double z : {0.05, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
        double ref = e1_quadrature(z);
        CHECK(std::abs(exp_integral_e1(z) - ref) / ref < 1e-10);
    }
}

TEST_CASE("oracle: N-P-OS vs extended-precision summation") {
    SplitMix64 rng(2718);
    std::vector<double> v;
    double cur = 1.5;
    for (int i = 0; i < 10; ++i) {
        cur += 0.05 + rng.u01() * 0.3;
        v.push_back(cur);
    }
    MagnitudeSample s;
    s.values = v;
    s.t_m = 1.5;
    const std::size_t n = s.n();

    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        acc += expl(-static_cast<long double>(i)) *
               static_cast<long double>(s.values[n - 1 - i]);
    }
    long double mx = s.values[n - 1];
    long double ref = mx + (mx - (1.0L - expl(-1.0L)) * acc);

    CHECK(std::abs(npos_endpoint(s).estimate - static_cast<double>(ref)) < 1e-12);
}
