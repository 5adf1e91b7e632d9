#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmax/simulation.hpp"

using namespace mmax;

TEST_CASE("sample_truncated_gr stays inside the support and is sorted") {
    TruncatedGRParams p;  // beta = 2.1203, t = 1.5, T = 3.75
    std::vector<double> v = sample_truncated_gr(p, 5000, 12);
    REQUIRE(v.size() == 5000);
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(v.front() >= p.t_m);
    CHECK(v.back() <= p.T_m);
    CHECK(sample_truncated_gr(p, 5000, 12) == v);   // determinism
    CHECK(sample_truncated_gr(p, 5000, 13) != v);
}

TEST_CASE("paper quantile identity: T_M = 3.75 is the 99.2% quantile") {
    TruncatedGRParams p;
    double q = 1.0 - std::exp(-p.beta * (p.T_m - p.t_m));
    CHECK(q == doctest::Approx(0.992).epsilon(2e-3));
    p.T_m = 4.0;
    CHECK(1.0 - std::exp(-p.beta * (p.T_m - p.t_m)) == doctest::Approx(0.995).epsilon(2e-3));
    p.T_m = 4.5;
    CHECK(1.0 - std::exp(-p.beta * (p.T_m - p.t_m)) == doctest::Approx(0.998).epsilon(1e-3));
}

TEST_CASE("sampler matches the analytic CDF (moderate-n smoke check)") {
    TruncatedGRParams p;
    const int n = 100000;
    std::vector<double> v = sample_truncated_gr(p, n, 99);
    double denom = 1.0 - std::exp(-p.beta * (p.T_m - p.t_m));
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        double f = (1.0 - std::exp(-p.beta * (v[i] - p.t_m))) / denom;
        ks = std::max(ks, std::max(std::abs(f - double(i) / n),
                                   std::abs(f - double(i + 1) / n)));
    }
    CHECK(ks < 1.36 / std::sqrt(double(n)) * 1.5);
}

TEST_CASE("run_study single replicate produces a sane report") {
    StudyConfig cfg;
    cfg.replicates = 1;
    cfg.sample_size = 100;
    cfg.k_grid = {50};
    cfg.master_seed = 5;
    SimulationReport rep = run_study(cfg);
    CHECK(!rep.estimates.empty());
    CHECK(!rep.coverages.empty());
    for (const auto& row : rep.estimates) {
        CHECK(row.replicates_used + row.failure_count == 1);
        if (row.replicates_used == 1) {
            CHECK(std::isfinite(row.relative_mean));
            CHECK(row.relative_mse >= 0.0);
        }
    }
    for (const auto& row : rep.coverages) {
        CHECK((row.coverage == 0.0 || row.coverage == 1.0));
    }
}

TEST_CASE("run_study is bit-identical across thread counts") {
    StudyConfig cfg;
    cfg.replicates = 40;
    cfg.sample_size = 120;
    cfg.k_grid = {60};
    cfg.master_seed = 777;
    cfg.threads = 1;
    SimulationReport a = run_study(cfg);
    cfg.threads = 4;
    SimulationReport b = run_study(cfg);
    REQUIRE(a.estimates.size() == b.estimates.size());
    for (std::size_t i = 0; i < a.estimates.size(); ++i) {
        CHECK(a.estimates[i].estimator == b.estimates[i].estimator);
        CHECK(a.estimates[i].relative_mean == b.estimates[i].relative_mean);
        CHECK(a.estimates[i].relative_mse == b.estimates[i].relative_mse);
        CHECK(a.estimates[i].replicates_used == b.estimates[i].replicates_used);
    }
    REQUIRE(a.coverages.size() == b.coverages.size());
    for (std::size_t i = 0; i < a.coverages.size(); ++i) {
        CHECK(a.coverages[i].coverage == b.coverages[i].coverage);
    }
}

TEST_CASE("relative MSE shrinks with the sample size") {
    auto mse_of = [](const SimulationReport& rep, const std::string& name) {
        for (const auto& row : rep.estimates) {
            if (row.estimator == name) return row.relative_mse;
        }
        FAIL("estimator not found: ", name);
        return 0.0;
    };
    StudyConfig small;
    small.replicates = 250;
    small.sample_size = 100;
    small.k_grid = {50};
    small.master_seed = 31;
    StudyConfig big = small;
    big.sample_size = 400;
    big.k_grid = {200};
    SimulationReport rs = run_study(small);
    SimulationReport rb = run_study(big);
    // allow 10% Monte Carlo noise per the module property
    for (const char* name : {"npos", "rw", "rwc", "ks"}) {
        CHECK(mse_of(rb, name) < mse_of(rs, name) * 1.10);
    }
}

TEST_CASE("run_study rejects invalid configs") {
    StudyConfig cfg;
    cfg.replicates = 0;
    CHECK_THROWS(run_study(cfg));
    cfg.replicates = 10;
    cfg.alpha = 1.5;
    CHECK_THROWS(run_study(cfg));
    cfg.alpha = 0.1;
    cfg.sample_size = 5;
    CHECK_THROWS(run_study(cfg));
}
