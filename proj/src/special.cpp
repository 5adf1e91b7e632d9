#include "mmax/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmax {

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / 1.4142135623730951);
}

double exp_integral_e1(double z) {
    if (z <= 0.0) throw std::domain_error("exp_integral_e1: z must be positive");
    if (z > 700.0) return 0.0;  // below double underflow of e^{-z}
    if (z <= 1.0) {
        // E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
        double s = -kEulerGamma - std::log(z);
        double term = 1.0;
        double total = 0.0;
        for (int k = 1; k < 60; ++k) {
            term *= -z / k;
            total += -term / k;
            if (std::abs(term / k) < 1e-18 * std::max(std::abs(total), 1.0)) break;
        }
        return s + total;
    }
    // Continued fraction e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))),
    // evaluated with the modified Lentz algorithm.
    double b = z + 1.0;
    double c = 1e308;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 200; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-z);
}

const std::array<double, 64> kGlNodes64 = {
    -9.99305041735772170e-01, -9.96340116771955220e-01, -9.91013371476744287e-01, -9.83336253884625977e-01,
    -9.73326827789910975e-01, -9.61008799652053769e-01, -9.46411374858402765e-01, -9.29569172131939570e-01,
    -9.10522137078502825e-01, -8.89315445995114140e-01, -8.65999398154092770e-01, -8.40629296252580316e-01,
    -8.13265315122797539e-01, -7.83972358943341385e-01, -7.52819907260531940e-01, -7.19881850171610771e-01,
    -6.85236313054233270e-01, -6.48965471254657311e-01, -6.11155355172393278e-01, -5.71895646202634000e-01,
    -5.31279464019894565e-01, -4.89403145707052956e-01, -4.46366017253464087e-01, -4.02270157963991626e-01,
    -3.57220158337668126e-01, -3.11322871990210970e-01, -2.64687162208767424e-01, -2.17423643740007083e-01,
    -1.69644420423992803e-01, -1.21462819296120558e-01, -7.29931217877990424e-02, -2.43502926634244291e-02,
    2.43502926634244291e-02, 7.29931217877990424e-02, 1.21462819296120558e-01, 1.69644420423992803e-01,
    2.17423643740007083e-01, 2.64687162208767424e-01, 3.11322871990210970e-01, 3.57220158337668126e-01,
    4.02270157963991626e-01, 4.46366017253464087e-01, 4.89403145707052956e-01, 5.31279464019894565e-01,
    5.71895646202634000e-01, 6.11155355172393278e-01, 6.48965471254657311e-01, 6.85236313054233270e-01,
    7.19881850171610771e-01, 7.52819907260531940e-01, 7.83972358943341385e-01, 8.13265315122797539e-01,
    8.40629296252580316e-01, 8.65999398154092770e-01, 8.89315445995114140e-01, 9.10522137078502825e-01,
    9.29569172131939570e-01, 9.46411374858402765e-01, 9.61008799652053769e-01, 9.73326827789910975e-01,
    9.83336253884625977e-01, 9.91013371476744287e-01, 9.96340116771955220e-01, 9.99305041735772170e-01,
};

const std::array<double, 64> kGlWeights64 = {
    1.78328072169421517e-03, 4.14703326056292329e-03, 6.50445796897965427e-03, 8.84675982636439102e-03,
    1.11681394601314665e-02, 1.34630478967182315e-02, 1.57260304760250824e-02, 1.79517157756973016e-02,
    2.01348231535300945e-02, 2.22701738083830071e-02, 2.43527025687108531e-02, 2.63774697150546272e-02,
    2.83396726142597019e-02, 3.02346570724024953e-02, 3.20579283548514532e-02, 3.38051618371417867e-02,
    3.54722132568823234e-02, 3.70551285402401509e-02, 3.85501531786155913e-02, 3.99537411327203495e-02,
    4.12625632426234859e-02, 4.24735151236535977e-02, 4.35837245293234643e-02, 4.45905581637565454e-02,
    4.54916279274181143e-02, 4.62847965813143747e-02, 4.69681828162099996e-02, 4.75401657148303014e-02,
    4.79993885964583172e-02, 4.83447622348029543e-02, 4.85754674415034560e-02, 4.86909570091397514e-02,
    4.86909570091397514e-02, 4.85754674415034560e-02, 4.83447622348029543e-02, 4.79993885964583172e-02,
    4.75401657148303014e-02, 4.69681828162099996e-02, 4.62847965813143747e-02, 4.54916279274181143e-02,
    4.45905581637565454e-02, 4.35837245293234643e-02, 4.24735151236535977e-02, 4.12625632426234859e-02,
    3.99537411327203495e-02, 3.85501531786155913e-02, 3.70551285402401509e-02, 3.54722132568823234e-02,
    3.38051618371417867e-02, 3.20579283548514532e-02, 3.02346570724024953e-02, 2.83396726142597019e-02,
    2.63774697150546272e-02, 2.43527025687108531e-02, 2.22701738083830071e-02, 2.01348231535300945e-02,
    1.79517157756973016e-02, 1.57260304760250824e-02, 1.34630478967182315e-02, 1.11681394601314665e-02,
    8.84675982636439102e-03, 6.50445796897965427e-03, 4.14703326056292329e-03, 1.78328072169421517e-03,
};

double gauss_legendre_64(const std::function<double(double)>& f, double a, double b) {
    double c1 = 0.5 * (b - a);
    double c0 = 0.5 * (a + b);
    double total = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
        total += kGlWeights64[i] * f(c0 + c1 * kGlNodes64[i]);
    }
    return total * c1;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa * fb > 0.0) throw std::runtime_error("brent_root: no sign change");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa;
    double d = b - a, e = b - a;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * xtol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc;
                double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double xatol,
                             double fatol, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double& xi = simplex[i + 1][i];
        xi = (xi != 0.0) ? xi * 1.05 : 0.00025;
    }
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = f(simplex[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (std::size_t i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fvals[i]);
        }
        simplex.swap(s2);
        fvals.swap(f2);
    };
    order();

    NelderMeadResult res;
    int iter = 0;
    while (iter < max_iter) {
        double xspread = 0.0;
        double fspread = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                xspread = std::max(xspread, std::abs(simplex[i][j] - simplex[0][j]));
            }
            fspread = std::max(fspread, std::abs(fvals[i] - fvals[0]));
        }
        if (xspread <= xatol && fspread <= fatol) {
            res.converged = true;
            break;
        }
        ++iter;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) {
                x[j] = centroid[j] + t * (centroid[j] - simplex[n][j]);
            }
            return x;
        };

        std::vector<double> xr = blend(1.0);
        double fr = f(xr);
        if (fr < fvals[0]) {
            std::vector<double> xe = blend(2.0);
            double fe = f(xe);
            if (fe < fr) {
                simplex[n] = xe; fvals[n] = fe;
            } else {
                simplex[n] = xr; fvals[n] = fr;
            }
        } else if (fr < fvals[n - 1]) {
            simplex[n] = xr; fvals[n] = fr;
        } else {
            bool shrink = false;
            if (fr < fvals[n]) {
                std::vector<double> xc = blend(0.5);
                double fc = f(xc);
                if (fc <= fr) {
                    simplex[n] = xc; fvals[n] = fc;
                } else {
                    shrink = true;
                }
            } else {
                std::vector<double> xc = blend(-0.5);
                double fc = f(xc);
                if (fc < fvals[n]) {
                    simplex[n] = xc; fvals[n] = fc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    }
                    fvals[i] = f(simplex[i]);
                }
            }
        }
        order();
    }
    res.x = simplex[0];
    res.fval = fvals[0];
    res.iterations = iter;
    return res;
}

}  // namespace mmax
