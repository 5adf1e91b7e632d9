#include "mmax/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mmax/rng.hpp"

namespace mmax {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == delim && !quoted) {
            out.push_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    out.push_back(trim(cell));
    return out;
}

char detect_delimiter(const std::string& header) {
    auto semis = std::count(header.begin(), header.end(), ';');
    auto commas = std::count(header.begin(), header.end(), ',');
    return semis >= commas ? ';' : ',';
}

double parse_double(const std::string& cell, std::size_t line_no,
                    const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("row " + std::to_string(line_no) + ": bad " +
                                 what + " value '" + cell + "'");
    }
}

Date parse_date(const std::string& cell, const std::string& format,
                std::size_t line_no) {
    // Accepts any separator; field order is taken from the format string.
    std::vector<int> parts;
    int cur = -1;
    for (char c : cell) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur = (cur < 0 ? 0 : cur) * 10 + (c - '0');
        } else if (cur >= 0) {
            parts.push_back(cur);
            cur = -1;
        }
    }
    if (cur >= 0) parts.push_back(cur);

    std::vector<char> order;  // sequence of 'Y', 'm', 'd' from the format
    for (std::size_t i = 0; i + 1 < format.size(); ++i) {
        if (format[i] == '%') {
            char f = format[i + 1];
            if (f == 'Y' || f == 'y') order.push_back('Y');
            if (f == 'm') order.push_back('m');
            if (f == 'd') order.push_back('d');
        }
    }
    if (parts.size() < 3 || order.size() != 3) {
        throw std::runtime_error("row " + std::to_string(line_no) +
                                 ": bad date '" + cell + "'");
    }
    Date d;
    for (std::size_t i = 0; i < 3; ++i) {
        int v = parts[i];
        if (order[i] == 'Y') d.year = v;
        if (order[i] == 'm') d.month = v;
        if (order[i] == 'd') d.day = v;
    }
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
        throw std::runtime_error("row " + std::to_string(line_no) +
                                 ": bad date '" + cell + "'");
    }
    return d;
}

}  // namespace

CatalogSchema knmi_schema() {
    CatalogSchema s;
    s.date = "YYMMDD";
    s.time = "TIME";
    s.latitude = "LAT";
    s.longitude = "LON";
    s.depth = "DEPTH";
    s.magnitude = "MAG";
    s.label = "LOCATION";
    s.date_format = "%Y-%m-%d";
    s.delimiter = 0;
    return s;
}

Catalog parse_catalog(std::istream& source, const CatalogSchema& schema) {
    std::string header;
    if (!std::getline(source, header)) {
        throw std::runtime_error("empty catalog: missing header row");
    }
    char delim = schema.delimiter ? schema.delimiter : detect_delimiter(header);
    std::vector<std::string> cols = split(header, delim);

    auto find_col = [&cols](const std::string& name,
                            bool required) -> std::ptrdiff_t {
        if (name.empty()) return -1;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == name) return static_cast<std::ptrdiff_t>(i);
        }
        if (required) {
            throw std::runtime_error("schema error: column '" + name +
                                     "' not found in header");
        }
        return -1;
    };

    std::ptrdiff_t c_date = find_col(schema.date, true);
    std::ptrdiff_t c_time = find_col(schema.time, false);
    std::ptrdiff_t c_lat = find_col(schema.latitude, true);
    std::ptrdiff_t c_lon = find_col(schema.longitude, true);
    std::ptrdiff_t c_depth = find_col(schema.depth, false);
    std::ptrdiff_t c_mag = find_col(schema.magnitude, true);
    std::ptrdiff_t c_label = find_col(schema.label, false);

    Catalog catalog;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split(line, delim);
        auto cell = [&](std::ptrdiff_t idx) -> std::string {
            if (idx < 0 || static_cast<std::size_t>(idx) >= cells.size()) return "";
            return cells[static_cast<std::size_t>(idx)];
        };
        if (static_cast<std::size_t>(std::max({c_date, c_lat, c_lon, c_mag})) >=
            cells.size()) {
            throw std::runtime_error("row " + std::to_string(line_no) +
                                     ": too few columns");
        }
        SeismicEvent ev;
        ev.date = parse_date(cell(c_date), schema.date_format, line_no);
        ev.time = cell(c_time);
        ev.latitude = parse_double(cell(c_lat), line_no, "latitude");
        ev.longitude = parse_double(cell(c_lon), line_no, "longitude");
        if (c_depth >= 0 && !cell(c_depth).empty()) {
            ev.depth_km = parse_double(cell(c_depth), line_no, "depth");
        }
        ev.magnitude = parse_double(cell(c_mag), line_no, "magnitude");
        ev.label = cell(c_label);
        if (ev.latitude < -90.0 || ev.latitude > 90.0 || ev.longitude < -180.0 ||
            ev.longitude > 180.0 || !std::isfinite(ev.magnitude)) {
            throw std::runtime_error("row " + std::to_string(line_no) +
                                     ": field out of range");
        }
        catalog.push_back(std::move(ev));
    }
    return catalog;
}

Catalog filter_events(const Catalog& catalog, const CatalogFilter& filter) {
    Catalog out;
    for (const SeismicEvent& ev : catalog) {
        if (filter.bbox) {
            const BoundingBox& b = *filter.bbox;
            if (ev.latitude < b.lat_min || ev.latitude > b.lat_max ||
                ev.longitude < b.lon_min || ev.longitude > b.lon_max) {
                continue;
            }
        }
        if (ev.magnitude < filter.magnitude_min) continue;
        if (filter.date_min && ev.date < *filter.date_min) continue;
        if (filter.date_max && *filter.date_max < ev.date) continue;
        out.push_back(ev);
    }
    return out;
}

std::vector<double> smooth_ties(const std::vector<double>& values,
                                double half_width, std::uint64_t seed) {
    std::map<double, int> counts;
    for (double v : values) ++counts[v];

    std::set<double> used;
    for (double v : values) {
        if (counts[v] == 1) used.insert(v);
    }

    SplitMix64 rng(seed);
    std::vector<double> out(values);
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (counts[v] <= 1) continue;
        double cand;
        do {
            cand = v + (2.0 * rng.u01() - 1.0) * half_width;
        } while (!used.insert(cand).second);
        out[i] = cand;
    }
    return out;
}

MagnitudeSample build_sample(const std::vector<double>& magnitudes_in_order,
                             double t_m, std::uint64_t seed, double half_width) {
    // Sort before smoothing so the jitter assignment depends only on the
    // multiset of recorded magnitudes, not on catalog row order.
    std::vector<double> sorted = magnitudes_in_order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> smoothed = smooth_ties(sorted, half_width, seed);
    MagnitudeSample sample;
    sample.t_m = t_m;
    sample.smoothing_seed = seed;
    for (double v : smoothed) {
        if (v >= t_m) sample.values.push_back(v);
    }
    if (sample.values.empty()) {
        throw std::runtime_error("empty sample: no magnitudes at or above threshold");
    }
    std::sort(sample.values.begin(), sample.values.end());
    return sample;
}

MagnitudeSample build_sample(const Catalog& catalog, double t_m,
                             std::uint64_t seed, double half_width) {
    std::vector<double> mags;
    mags.reserve(catalog.size());
    for (const SeismicEvent& ev : catalog) mags.push_back(ev.magnitude);
    return build_sample(mags, t_m, seed, half_width);
}

double magnitude_to_energy(double m) {
    return 2.0 * std::pow(10.0, 1.5 * (m - 1.0));
}

double energy_to_magnitude(double e) {
    if (e <= 0.0) throw std::domain_error("energy must be positive");
    return std::log10(e / 2.0) / 1.5 + 1.0;
}

}  // namespace mmax
