#pragma once

// Shared test helper: loads the bundled Groningen snapshot and builds the
// paper's working sample (bbox + threshold filter, tie smoothing).
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmax/catalog.hpp"

namespace testutil {

inline mmax::Catalog groningen_catalog() {
    std::ifstream file(std::string(MMAX_DATA_DIR) + "/groningen.csv");
    if (!file.good()) throw std::runtime_error("fixture groningen.csv missing");
    mmax::Catalog cat = mmax::parse_catalog(file, mmax::knmi_schema());
    mmax::CatalogFilter f;
    f.bbox = mmax::BoundingBox{53.1, 53.5, 6.5, 7.0};
    f.magnitude_min = 1.5;
    f.date_min = mmax::Date{1986, 12, 1};
    f.date_max = mmax::Date{2016, 12, 31};
    return mmax::filter_events(cat, f);
}

// Seed 1 is the CLI default; tests pin it so fixture-derived numbers are stable.
inline mmax::MagnitudeSample groningen_sample(std::uint64_t seed = 1) {
    return mmax::build_sample(groningen_catalog(), 1.5, seed);
}

inline std::vector<double> energies(const mmax::MagnitudeSample& s) {
    std::vector<double> e;
    e.reserve(s.n());
    for (double m : s.values) e.push_back(mmax::magnitude_to_energy(m));
    return e;
}

}  // namespace testutil
