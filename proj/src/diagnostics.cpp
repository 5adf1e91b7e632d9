#include "mmax/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace mmax {

QQPlotData exponential_qq(const MagnitudeSample& sample) {
    const std::size_t n = sample.n();
    if (n < 2) throw std::invalid_argument("exponential_qq: need n >= 2");
    QQPlotData out;
    out.kind = QQKind::exponential;
    out.points.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        double p = static_cast<double>(i) / (n + 1.0);
        out.points.emplace_back(-std::log(1.0 - p), sample.values[i - 1]);
    }
    return out;
}

QQPlotData pareto_qq(const MagnitudeSample& sample) {
    const std::size_t n = sample.n();
    if (n < 2) throw std::invalid_argument("pareto_qq: need n >= 2");
    QQPlotData out;
    out.kind = QQKind::pareto;
    out.points.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        double p = static_cast<double>(i) / (n + 1.0);
        double ln_e = std::log(magnitude_to_energy(sample.values[i - 1]));
        out.points.emplace_back(-std::log(1.0 - p), ln_e);
    }
    return out;
}

MeanExcessData mean_excess(const MagnitudeSample& sample) {
    const std::size_t n = sample.n();
    if (n < 3) throw std::invalid_argument("mean_excess: need n >= 3");
    MeanExcessData out;
    out.entries.reserve(n - 2);
    double top_sum = sample.values[n - 1];
    for (std::size_t k = 2; k <= n - 1; ++k) {
        double threshold = sample.values[n - k - 1];
        top_sum += sample.values[n - k];
        out.entries.push_back({static_cast<int>(k), threshold,
                               top_sum / static_cast<double>(k) - threshold});
    }
    return out;
}

double hill(const std::vector<double>& ascending_values, int k) {
    const std::size_t n = ascending_values.size();
    if (k < 1 || static_cast<std::size_t>(k) > n - 1) {
        throw std::invalid_argument("hill: k out of range");
    }
    double sum = 0.0;
    for (std::size_t j = n - k; j < n; ++j) {
        if (ascending_values[j] <= 0.0) {
            throw std::domain_error("hill: values must be positive");
        }
        sum += std::log(ascending_values[j]);
    }
    double ref = ascending_values[n - k - 1];
    if (ref <= 0.0) throw std::domain_error("hill: values must be positive");
    return sum / k - std::log(ref);
}

}  // namespace mmax
