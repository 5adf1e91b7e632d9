#pragma once

#include <utility>
#include <vector>

#include "mmax/catalog.hpp"

namespace mmax {

enum class QQKind { exponential, pareto };

struct QQPlotData {
    QQKind kind;
    // (theoretical quantile, empirical quantile), ordered by the first.
    std::vector<std::pair<double, double>> points;
};

struct MeanExcessEntry {
    int k;               // number of top order statistics
    double threshold;    // M_{n-k,n}
    double mean_excess;  // magnitude units
};

struct MeanExcessData {
    std::vector<MeanExcessEntry> entries;
};

// Plotting positions i/(n+1); x = -ln(1 - i/(n+1)).
QQPlotData exponential_qq(const MagnitudeSample& sample);

// Same abscissae against ln E_{i,n} with E the transformed energies.
QQPlotData pareto_qq(const MagnitudeSample& sample);

// mean_excess(k) = (1/k) sum_{j=1..k} (M_{n-j+1,n} - M_{n-k,n}), k = 2..n-1.
MeanExcessData mean_excess(const MagnitudeSample& sample);

// Hill statistic on an ascending positive sample:
// H_{k,n} = (1/k) sum_{j=1..k} ln X_{n-j+1,n} - ln X_{n-k,n}.
// Throws on non-positive values or k out of [1, n-1].
double hill(const std::vector<double>& ascending_values, int k);

}  // namespace mmax
