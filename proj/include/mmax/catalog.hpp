#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace mmax {

// Calendar date (UTC); time-of-day is kept as raw text since no operation
// needs sub-day resolution.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    friend bool operator<(const Date& a, const Date& b) {
        if (a.year != b.year) return a.year < b.year;
        if (a.month != b.month) return a.month < b.month;
        return a.day < b.day;
    }
    friend bool operator==(const Date& a, const Date& b) {
        return a.year == b.year && a.month == b.month && a.day == b.day;
    }
    friend bool operator<=(const Date& a, const Date& b) { return a < b || a == b; }
};

struct SeismicEvent {
    Date date;
    std::string time;       // raw text, possibly empty
    double latitude = 0.0;  // degrees north
    double longitude = 0.0; // degrees east
    std::optional<double> depth_km;
    double magnitude = 0.0; // local (Richter) magnitude
    std::string label;      // free-text location name
};

using Catalog = std::vector<SeismicEvent>;

// Header-name mapping from file columns to SeismicEvent fields.
// Empty names mean "column absent". Delimiter 0 requests autodetection
// (semicolon vs comma, decided on the header row).
struct CatalogSchema {
    std::string date = "date";
    std::string time = "time";
    std::string latitude = "latitude";
    std::string longitude = "longitude";
    std::string depth = "depth";
    std::string magnitude = "magnitude";
    std::string label = "location";
    std::string date_format = "%Y-%m-%d";  // also accepts %d-%m-%Y
    char delimiter = 0;
};

// Preset matching the KNMI induced-seismicity export layout.
CatalogSchema knmi_schema();

struct BoundingBox {
    double lat_min, lat_max;
    double lon_min, lon_max;
};

struct CatalogFilter {
    std::optional<BoundingBox> bbox;
    double magnitude_min = -1e9;
    std::optional<Date> date_min;
    std::optional<Date> date_max;
};

struct MagnitudeSample {
    std::vector<double> values;  // strictly ascending after tie smoothing
    double t_m = 0.0;            // completeness threshold
    std::optional<std::uint64_t> smoothing_seed;

    std::size_t n() const { return values.size(); }
    double max() const { return values.back(); }
};

// Parses delimiter-separated text with a header row. Throws std::runtime_error
// naming the 1-based line number on malformed rows, or the missing column on a
// schema mismatch.
Catalog parse_catalog(std::istream& source, const CatalogSchema& schema);

// Closed-interval containment on every filter dimension; order preserved.
Catalog filter_events(const Catalog& catalog, const CatalogFilter& filter);

// Adds an independent Uniform(-half_width, +half_width) perturbation to every
// value that occurs more than once in the input; singletons stay exact.
// Collisions (equal doubles after jitter) are resolved by re-drawing, so the
// output has no duplicates. Deterministic given the seed and input order.
std::vector<double> smooth_ties(const std::vector<double>& values,
                                double half_width, std::uint64_t seed);

// smooth_ties + threshold + ascending sort. Throws if nothing survives t_m.
MagnitudeSample build_sample(const std::vector<double>& magnitudes_in_order,
                             double t_m, std::uint64_t seed,
                             double half_width = 0.05);
MagnitudeSample build_sample(const Catalog& catalog, double t_m,
                             std::uint64_t seed, double half_width = 0.05);

// E = 2 * 10^{1.5 (M - 1)} megajoules, and its exact inverse.
double magnitude_to_energy(double m);
double energy_to_magnitude(double e);

// ln(10) * 1.5: the log-slope of the magnitude->energy relation.
inline constexpr double kLn10Times15 = 3.4538776394910684;

}  // namespace mmax
