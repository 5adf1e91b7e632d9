// mmax: endpoint ("maximum possible magnitude") estimation toolkit.
//
// Subcommands:
//   catalog   - parse/filter a catalog, build the smoothed sample, summarize
//   estimate  - endpoint estimates over a k-grid
//   bounds    - upper confidence bounds at level alpha
//   diagnose  - QQ / mean-excess coordinates and truncation tests
//   simulate  - Monte Carlo comparison study
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmax/catalog.hpp"
#include "mmax/classical.hpp"
#include "mmax/diagnostics.hpp"
#include "mmax/evt.hpp"
#include "mmax/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// JSON-safe numeric value: nlohmann serializes non-finite doubles as null,
// so infinities are carried as the same "inf" token the CSVs use.
nlohmann::json jnum(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

std::string fmt6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_digest(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::ostringstream os;
    os << std::hex << fnv1a64(ss.str());
    return os.str();
}

std::string now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Flat key-value run manifest; every output file is recorded with a digest.
class Manifest {
public:
    Manifest(std::string command, fs::path out_dir)
        : out_dir_(std::move(out_dir)) {
        set("command", command);
        set("tool_version", kVersion);
        set("start_time", now_iso());
    }

    void set(const std::string& key, const std::string& value) {
        entries_.emplace_back(key, value);
    }
    void set(const std::string& key, double value) { set(key, fmt6(value)); }
    void set(const std::string& key, std::uint64_t value) {
        set(key, std::to_string(value));
    }

    void record_input(const fs::path& p) {
        set("input." + p.filename().string() + ".digest", file_digest(p));
    }
    void record_output(const fs::path& p) {
        set("output." + p.filename().string() + ".digest", file_digest(p));
    }

    void write() {
        set("end_time", now_iso());
        fs::path p = out_dir_ / "run_manifest.txt";
        std::ofstream out(p);
        for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
    }

private:
    fs::path out_dir_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct CommonArgs {
    std::string input;
    std::string schema = "knmi";
    std::string bbox;        // "lat_min,lon_min,lat_max,lon_max"
    std::string date_range;  // "YYYY-MM-DD:YYYY-MM-DD"
    double t_min = 1.5;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool clamp = true;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--input", a.input, "catalog file")->required();
    cmd->add_option("--schema", a.schema, "column schema: knmi or generic");
    cmd->add_option("--bbox", a.bbox, "lat_min,lon_min,lat_max,lon_max");
    cmd->add_option("--date-range", a.date_range, "START:END (ISO dates)");
    cmd->add_option("--t-min", a.t_min, "completeness threshold t_M");
    cmd->add_option("--seed", a.seed, "tie-smoothing seed");
    cmd->add_option("--out-dir", a.out_dir, "output directory");
    cmd->add_flag("--clamp,!--no-clamp", a.clamp,
                  "clamp estimates at the observed maximum");
}

mmax::Date parse_iso_date(const std::string& s) {
    mmax::Date d;
    if (std::sscanf(s.c_str(), "%d-%d-%d", &d.year, &d.month, &d.day) != 3) {
        throw CLI::ValidationError("bad date '" + s + "'");
    }
    return d;
}

mmax::MagnitudeSample load_sample(const CommonArgs& a, Manifest& man) {
    std::ifstream in(a.input);
    if (!in) throw std::runtime_error("cannot open input file: " + a.input);
    man.record_input(a.input);

    mmax::CatalogSchema schema =
        a.schema == "knmi" ? mmax::knmi_schema() : mmax::CatalogSchema{};
    mmax::Catalog catalog = mmax::parse_catalog(in, schema);

    mmax::CatalogFilter filter;
    filter.magnitude_min = a.t_min;
    if (!a.bbox.empty()) {
        mmax::BoundingBox b;
        if (std::sscanf(a.bbox.c_str(), "%lf,%lf,%lf,%lf", &b.lat_min, &b.lon_min,
                        &b.lat_max, &b.lon_max) != 4) {
            throw CLI::ValidationError("bad --bbox '" + a.bbox + "'");
        }
        filter.bbox = b;
    }
    if (!a.date_range.empty()) {
        auto colon = a.date_range.find(':');
        if (colon == std::string::npos) {
            throw CLI::ValidationError("bad --date-range '" + a.date_range + "'");
        }
        filter.date_min = parse_iso_date(a.date_range.substr(0, colon));
        filter.date_max = parse_iso_date(a.date_range.substr(colon + 1));
    }
    mmax::Catalog filtered = mmax::filter_events(catalog, filter);
    man.set("events_parsed", static_cast<std::uint64_t>(catalog.size()));
    man.set("events_filtered", static_cast<std::uint64_t>(filtered.size()));
    man.set("t_min", a.t_min);
    man.set("seed", a.seed);
    return mmax::build_sample(filtered, a.t_min, a.seed);
}

void write_summary_json(const fs::path& out_dir, const json& j, Manifest& man) {
    fs::path p = out_dir / "summary.json";
    std::ofstream out(p);
    out << j.dump(2) << "\n";
    out.close();
    man.record_output(p);
}

// Long-format estimator CSV contract shared by estimate/bounds.
struct EstRow {
    std::string estimator;
    int k = 0;
    double xi = NAN, tau_or_xiplus = NAN, d_t = NAN;
    double endpoint_raw = NAN, endpoint_clamped = NAN;
    double p_value = NAN, upper_bound = NAN, alpha = NAN;
};

void write_est_csv(const fs::path& p, const std::vector<EstRow>& rows,
                   Manifest& man) {
    std::ofstream out(p);
    out << "estimator,k,xi,tau_or_xiplus,d_t,endpoint_raw,endpoint_clamped,"
           "p_value,upper_bound,alpha\n";
    for (const EstRow& r : rows) {
        out << r.estimator << ',' << r.k << ',' << fmt6(r.xi) << ','
            << fmt6(r.tau_or_xiplus) << ',' << fmt6(r.d_t) << ','
            << fmt6(r.endpoint_raw) << ',' << fmt6(r.endpoint_clamped) << ','
            << fmt6(r.p_value) << ',' << fmt6(r.upper_bound) << ','
            << fmt6(r.alpha) << "\n";
    }
    out.close();
    man.record_output(p);
}

std::vector<double> to_energies(const mmax::MagnitudeSample& s) {
    std::vector<double> e;
    e.reserve(s.n());
    for (double m : s.values) e.push_back(mmax::magnitude_to_energy(m));
    return e;
}

int cmd_catalog(const CommonArgs& a) {
    fs::create_directories(a.out_dir);
    Manifest man("catalog", a.out_dir);
    mmax::MagnitudeSample sample = load_sample(a, man);

    fs::path sp = fs::path(a.out_dir) / "sample.csv";
    {
        std::ofstream out(sp);
        out << "index,magnitude\n";
        out.precision(17);
        for (std::size_t i = 0; i < sample.n(); ++i) {
            out << i + 1 << ',' << sample.values[i] << "\n";
        }
    }
    man.record_output(sp);

    json j{{"n", sample.n()},
           {"t_m", sample.t_m},
           {"min_magnitude", sample.values.front()},
           {"max_magnitude", sample.values.back()},
           {"seed", a.seed}};
    write_summary_json(a.out_dir, j, man);
    man.write();
    std::cout << "n = " << sample.n() << ", t_M = " << fmt6(sample.t_m)
              << ", min = " << fmt6(sample.values.front())
              << ", max = " << fmt6(sample.values.back()) << "\n";
    return 0;
}

int cmd_estimate(const CommonArgs& a, int k_opt, const std::string& k_grid_opt,
                 const std::string& estimators) {
    fs::create_directories(a.out_dir);
    Manifest man("estimate", a.out_dir);
    mmax::MagnitudeSample sample = load_sample(a, man);
    const int n = static_cast<int>(sample.n());

    std::vector<int> k_grid;
    if (k_opt > 0) {
        k_grid.push_back(k_opt);
    } else if (!k_grid_opt.empty()) {
        int lo, hi, step = 1;
        if (std::sscanf(k_grid_opt.c_str(), "%d:%d:%d", &lo, &hi, &step) < 2) {
            throw CLI::ValidationError("bad --k-grid '" + k_grid_opt + "'");
        }
        for (int k = lo; k <= hi; k += step) k_grid.push_back(k);
    } else {
        for (int k = 5; k <= n - 1; ++k) k_grid.push_back(k);
    }

    auto wanted = [&](const std::string& name) {
        return estimators.empty() ||
               ("," + estimators + ",").find("," + name + ",") != std::string::npos;
    };

    std::vector<double> energies = to_energies(sample);
    std::vector<EstRow> rows;
    json headline;

    for (int k : k_grid) {
        if (wanted("tgpd") && k >= 4 && k <= n - 1) {
            EstRow r;
            r.estimator = "tgpd";
            r.k = k;
            try {
                auto fit = mmax::fit_truncated_gpd(sample, k);
                auto ep = mmax::endpoint_tgpd(fit, sample, a.clamp);
                r.xi = fit.xi;
                r.tau_or_xiplus = fit.tau;
                r.d_t = mmax::truncation_odds_tgpd(fit, sample).value;
                r.endpoint_raw = ep.estimate_raw;
                r.endpoint_clamped = ep.estimate;
            } catch (const std::exception& e) {
                r.endpoint_raw = NAN;
            }
            rows.push_back(r);
        }
        if (wanted("tpareto") && k >= 2 && k <= n - 1) {
            EstRow r;
            r.estimator = "tpareto";
            r.k = k;
            try {
                auto fit = mmax::fit_truncated_pareto(energies, k);
                auto ep = mmax::endpoint_tpareto(fit, sample, a.clamp);
                r.xi = fit.xi_plus;
                r.tau_or_xiplus = fit.xi_plus;
                r.d_t = mmax::truncation_odds_tpareto(fit, sample.n()).value;
                r.endpoint_raw = ep.estimate_raw;
                r.endpoint_clamped = ep.estimate;
            } catch (const std::exception& e) {
                r.endpoint_raw = NAN;
            }
            rows.push_back(r);
        }
        if (wanted("fl") && k >= 1 && k <= n) {
            auto ep = mmax::fl_endpoint(sample, k);
            rows.push_back({"fl", k, NAN, NAN, NAN, ep.estimate_raw, ep.estimate,
                            NAN, NAN, NAN});
        }
        if (wanted("efl") && k >= 2 && k <= n) {
            auto ep = mmax::efl_endpoint(sample, k);
            rows.push_back({"efl", k, NAN, NAN, NAN, ep.estimate_raw, ep.estimate,
                            NAN, NAN, NAN});
        }
    }

    if (wanted("npg")) {
        EstRow r;
        r.estimator = "npg";
        try {
            auto res = mmax::npg_endpoint(sample);
            r.endpoint_raw = res.endpoint.estimate_raw;
            r.endpoint_clamped = res.endpoint.estimate;
            man.set("npg_bandwidth", res.bandwidth);
            headline["npg"] = res.endpoint.estimate;
        } catch (const std::exception&) {
        }
        rows.push_back(r);
    }
    if (wanted("npos")) {
        auto ep = mmax::npos_endpoint(sample);
        rows.push_back({"npos", 0, NAN, NAN, NAN, ep.estimate_raw, ep.estimate,
                        NAN, NAN, NAN});
        headline["npos"] = ep.estimate;
    }
    if (wanted("rw")) {
        auto ep = mmax::rw_endpoint(sample);
        rows.push_back({"rw", 0, NAN, NAN, NAN, ep.estimate_raw, ep.estimate, NAN,
                        NAN, NAN});
        headline["rw"] = ep.estimate;
    }
    if (wanted("rwc")) {
        auto ep = mmax::rwc_endpoint(sample);
        rows.push_back({"rwc", 0, NAN, NAN, NAN, ep.estimate_raw, ep.estimate,
                        NAN, NAN, NAN});
        headline["rwc"] = ep.estimate;
    }
    if (wanted("ks")) {
        EstRow r;
        r.estimator = "ks";
        try {
            auto res = mmax::ks_endpoint(sample);
            r.endpoint_raw = res.endpoint.estimate_raw;
            r.endpoint_clamped = res.endpoint.estimate;
            man.set("ks_beta", res.gr.beta);
            headline["ks"] = res.endpoint.estimate;
            headline["beta"] = res.gr.beta;
        } catch (const std::exception&) {
        }
        rows.push_back(r);
    }

    if (rows.empty()) throw std::runtime_error("no estimators selected");
    write_est_csv(fs::path(a.out_dir) / "estimates.csv", rows, man);
    headline["n"] = sample.n();
    write_summary_json(a.out_dir, headline, man);
    man.write();
    return 0;
}

int cmd_bounds(const CommonArgs& a, int k, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) {
        throw CLI::ValidationError("--alpha must lie in (0,1)");
    }
    fs::create_directories(a.out_dir);
    Manifest man("bounds", a.out_dir);
    mmax::MagnitudeSample sample = load_sample(a, man);
    std::vector<double> energies = to_energies(sample);

    std::vector<EstRow> rows;
    json headline;
    {
        EstRow r;
        r.estimator = "tgpd";
        r.k = k;
        r.alpha = alpha;
        auto fit = mmax::fit_truncated_gpd(sample, k);
        auto ep = mmax::endpoint_tgpd(fit, sample, a.clamp);
        auto odds = mmax::truncation_odds_tgpd(fit, sample);
        r.xi = fit.xi;
        r.tau_or_xiplus = fit.tau;
        r.d_t = odds.value;
        r.endpoint_raw = ep.estimate_raw;
        r.endpoint_clamped = ep.estimate;
        r.upper_bound = mmax::upper_bound_tgpd(ep, fit, odds, sample, alpha);
        headline["tgpd_bound"] = jnum(r.upper_bound);
        rows.push_back(r);
    }
    {
        EstRow r;
        r.estimator = "tpareto";
        r.k = k;
        r.alpha = alpha;
        auto fit = mmax::fit_truncated_pareto(energies, k);
        auto ep = mmax::endpoint_tpareto(fit, sample, a.clamp);
        auto odds = mmax::truncation_odds_tpareto(fit, sample.n());
        r.xi = fit.xi_plus;
        r.tau_or_xiplus = fit.xi_plus;
        r.d_t = odds.value;
        r.endpoint_raw = ep.estimate_raw;
        r.endpoint_clamped = ep.estimate;
        r.upper_bound = mmax::upper_bound_tpareto(ep, fit, odds, sample.n(), alpha);
        headline["tpareto_bound"] = jnum(r.upper_bound);
        rows.push_back(r);
    }
    {
        EstRow r;
        r.estimator = "npos";
        r.alpha = alpha;
        auto ep = mmax::npos_endpoint(sample);
        r.endpoint_raw = ep.estimate_raw;
        r.endpoint_clamped = ep.estimate;
        r.upper_bound = mmax::npos_upper_bound(sample, alpha);
        headline["npos_bound"] = jnum(r.upper_bound);
        rows.push_back(r);
    }
    {
        EstRow r;
        r.estimator = "pisarenko";
        r.alpha = alpha;
        auto ks = mmax::ks_endpoint(sample);
        r.endpoint_raw = ks.endpoint.estimate_raw;
        r.endpoint_clamped = ks.endpoint.estimate;
        r.upper_bound = mmax::pisarenko_upper_bound(sample, ks.gr.beta, alpha);
        headline["pisarenko_bound"] = jnum(r.upper_bound);
        headline["pisarenko_alpha_threshold"] =
            mmax::pisarenko_alpha_threshold(sample, ks.gr.beta);
        man.set("ks_beta", ks.gr.beta);
        rows.push_back(r);
    }

    write_est_csv(fs::path(a.out_dir) / "bounds.csv", rows, man);
    headline["alpha"] = alpha;
    headline["k"] = k;
    write_summary_json(a.out_dir, headline, man);
    man.write();
    for (const EstRow& r : rows) {
        std::cout << r.estimator << " bound = " << fmt6(r.upper_bound) << "\n";
    }
    return 0;
}

int cmd_diagnose(const CommonArgs& a, double alpha) {
    fs::create_directories(a.out_dir);
    Manifest man("diagnose", a.out_dir);
    mmax::MagnitudeSample sample = load_sample(a, man);
    std::vector<double> energies = to_energies(sample);
    const int n = static_cast<int>(sample.n());

    auto write_qq = [&](const mmax::QQPlotData& qq, const char* kind,
                        const fs::path& p) {
        std::ofstream out(p);
        out << "kind,k_or_index,x,y\n";
        for (std::size_t i = 0; i < qq.points.size(); ++i) {
            out << kind << ',' << i + 1 << ',' << fmt6(qq.points[i].first) << ','
                << fmt6(qq.points[i].second) << "\n";
        }
        out.close();
        man.record_output(p);
    };
    write_qq(mmax::exponential_qq(sample), "exponential",
             fs::path(a.out_dir) / "qq_exponential.csv");
    write_qq(mmax::pareto_qq(sample), "pareto",
             fs::path(a.out_dir) / "qq_pareto.csv");

    {
        fs::path p = fs::path(a.out_dir) / "mean_excess.csv";
        std::ofstream out(p);
        out << "kind,k_or_index,x,y\n";
        for (const auto& e : mmax::mean_excess(sample).entries) {
            out << "mean_excess," << e.k << ',' << fmt6(e.threshold) << ','
                << fmt6(e.mean_excess) << "\n";
        }
        out.close();
        man.record_output(p);
    }
    {
        fs::path p = fs::path(a.out_dir) / "truncation_tests.csv";
        std::ofstream out(p);
        out << "test,k,statistic,p_value,reject\n";
        for (int k = 2; k <= n - 1; ++k) {
            auto t = mmax::test_truncation_pareto(energies, k, alpha);
            out << "pareto," << k << ',' << fmt6(t.statistic) << ','
                << fmt6(t.p_value) << ',' << (t.reject ? 1 : 0) << "\n";
        }
        for (int k = 5; k <= n - 1; ++k) {
            try {
                auto t = mmax::test_truncation_gpd(sample, k, alpha);
                out << "gpd," << k << ',' << fmt6(t.statistic) << ','
                    << fmt6(t.p_value) << ',' << (t.reject ? 1 : 0) << "\n";
            } catch (const std::exception&) {
                out << "gpd," << k << ",nan,nan,0\n";
            }
        }
        out.close();
        man.record_output(p);
    }
    write_summary_json(a.out_dir, json{{"n", sample.n()}, {"alpha", alpha}}, man);
    man.write();
    return 0;
}

int cmd_simulate(const std::string& out_dir, int replicates, int sample_size,
                 double beta, double t_m, const std::vector<double>& T_list,
                 double alpha, const std::vector<int>& k_grid,
                 std::uint64_t seed, int threads) {
    fs::create_directories(out_dir);
    Manifest man("simulate", out_dir);
    man.set("replicates", static_cast<std::uint64_t>(replicates));
    man.set("sample_size", static_cast<std::uint64_t>(sample_size));
    man.set("beta", beta);
    man.set("t_m", t_m);
    man.set("alpha", alpha);
    man.set("master_seed", seed);

    std::ofstream mean_out(fs::path(out_dir) / "relative_mean.csv");
    std::ofstream mse_out(fs::path(out_dir) / "relative_mse.csv");
    std::ofstream cov_out(fs::path(out_dir) / "coverage.csv");
    mean_out << "estimator,k,T_M,metric_value,replicates_used\n";
    mse_out << "estimator,k,T_M,metric_value,replicates_used\n";
    cov_out << "estimator,k,T_M,metric_value,replicates_used\n";

    for (double T : T_list) {
        mmax::StudyConfig cfg;
        cfg.replicates = replicates;
        cfg.sample_size = sample_size;
        cfg.params = {beta, t_m, T};
        cfg.alpha = alpha;
        cfg.k_grid = k_grid;
        cfg.master_seed = seed;
        cfg.threads = threads;
        mmax::SimulationReport rep = mmax::run_study(cfg);
        for (const auto& r : rep.estimates) {
            mean_out << r.estimator << ',' << r.k << ',' << fmt6(T) << ','
                     << fmt6(r.relative_mean) << ',' << r.replicates_used << "\n";
            mse_out << r.estimator << ',' << r.k << ',' << fmt6(T) << ','
                    << fmt6(r.relative_mse) << ',' << r.replicates_used << "\n";
        }
        for (const auto& r : rep.coverages) {
            cov_out << r.bound << ',' << r.k << ',' << fmt6(T) << ','
                    << fmt6(r.coverage) << ',' << r.replicates_used << "\n";
        }
    }
    mean_out.close();
    mse_out.close();
    cov_out.close();
    man.record_output(fs::path(out_dir) / "relative_mean.csv");
    man.record_output(fs::path(out_dir) / "relative_mse.csv");
    man.record_output(fs::path(out_dir) / "coverage.csv");
    write_summary_json(out_dir,
                       json{{"replicates", replicates},
                            {"sample_size", sample_size},
                            {"beta", beta},
                            {"T_M", T_list},
                            {"alpha", alpha},
                            {"master_seed", seed}},
                       man);
    man.write();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"endpoint estimation for seismic magnitude catalogs"};
    app.require_subcommand(1);

    CommonArgs cat_args, est_args, bnd_args, diag_args;
    int est_k = 0, bnd_k = 125;
    std::string est_k_grid, est_which;
    double bnd_alpha = 0.1, diag_alpha = 0.1;

    CLI::App* cat = app.add_subcommand("catalog", "parse, filter and summarize");
    add_common(cat, cat_args);

    CLI::App* est = app.add_subcommand("estimate", "endpoint estimates");
    add_common(est, est_args);
    est->add_option("--k", est_k, "single k for the EVT estimators");
    est->add_option("--k-grid", est_k_grid, "lo:hi[:step]");
    est->add_option("--estimators", est_which, "comma-separated subset");

    CLI::App* bnd = app.add_subcommand("bounds", "upper confidence bounds");
    add_common(bnd, bnd_args);
    bnd->add_option("--k", bnd_k, "k for the EVT bounds");
    bnd->add_option("--alpha", bnd_alpha, "bound level");

    CLI::App* diag = app.add_subcommand("diagnose", "QQ / mean excess / tests");
    add_common(diag, diag_args);
    diag->add_option("--alpha", diag_alpha, "test level");

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo study");
    int sim_reps = 5000, sim_n = 250, sim_threads = 0;
    double sim_beta = 2.1203, sim_t = 1.5, sim_alpha = 0.1;
    std::vector<double> sim_T{3.75, 4.0, 4.5};
    std::vector<int> sim_k{125};
    std::uint64_t sim_seed = 20160101;
    std::string sim_out = "out";
    sim->add_option("--replicates", sim_reps);
    sim->add_option("--sample-size", sim_n);
    sim->add_option("--beta", sim_beta);
    sim->add_option("--t-min", sim_t);
    sim->add_option("--T", sim_T, "true endpoints")->expected(-1);
    sim->add_option("--alpha", sim_alpha);
    sim->add_option("--k", sim_k, "k grid for EVT estimators")->expected(-1);
    sim->add_option("--seed", sim_seed);
    sim->add_option("--threads", sim_threads);
    sim->add_option("--out-dir", sim_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cat->parsed()) return cmd_catalog(cat_args);
        if (est->parsed()) return cmd_estimate(est_args, est_k, est_k_grid, est_which);
        if (bnd->parsed()) return cmd_bounds(bnd_args, bnd_k, bnd_alpha);
        if (diag->parsed()) return cmd_diagnose(diag_args, diag_alpha);
        if (sim->parsed()) {
            return cmd_simulate(sim_out, sim_reps, sim_n, sim_beta, sim_t, sim_T,
                                sim_alpha, sim_k, sim_seed, sim_threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
