#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace mmax {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Standard normal CDF via erfc (no tail cancellation).
double norm_cdf(double x);

// Exponential integral E1(z) = int_z^inf e^{-s}/s ds, z > 0.
// Power series below z = 1, modified-Lentz continued fraction above;
// relative accuracy ~1e-10 over the supported range. Throws on z <= 0.
double exp_integral_e1(double z);

// 64-point Gauss-Legendre rule on [-1, 1].
extern const std::array<double, 64> kGlNodes64;
extern const std::array<double, 64> kGlWeights64;

// Integrates f over [a, b] with a single 64-node panel.
double gauss_legendre_64(const std::function<double(double)>& f, double a, double b);

// Brent's root finder on a bracketing interval [a, b] with f(a) f(b) <= 0.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-10, int max_iter = 200);

// Nelder-Mead over a small dense parameter vector, scipy-compatible
// termination (simplex spread below xatol AND function spread below fatol).
struct NelderMeadResult {
    std::vector<double> x;
    double fval = 0.0;
    int iterations = 0;
    bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             double xatol = 1e-12, double fatol = 1e-13,
                             int max_iter = 4000);

}  // namespace mmax
