#include "tendon/dataset.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tendon {

void write_dataset_csv(const Dataset& d, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    std::fputs("t,q1,q2,q3,T1,T2,T3,session\n", f);
    for (const auto& r : d.records) {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.t,
                     r.q[0], r.q[1], r.q[2], r.tension[0], r.tension[1],
                     r.tension[2], r.session);
    }
    std::fclose(f);
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Dataset d;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty dataset file");
    if (line.rfind("t,q1", 0) != 0)
        throw std::runtime_error(path + ": missing dataset header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Dataset::Record r;
        std::istringstream ss(line);
        char comma;
        if (!(ss >> r.t >> comma >> r.q[0] >> comma >> r.q[1] >> comma >>
              r.q[2] >> comma >> r.tension[0] >> comma >> r.tension[1] >>
              comma >> r.tension[2] >> comma >> r.session))
            throw std::runtime_error(path + ": malformed row: " + line);
        d.records.push_back(r);
    }
    return d;
}

std::pair<Dataset, Dataset> split(const Dataset& d, double frac) {
    if (d.records.empty()) throw std::invalid_argument("split: empty dataset");
    if (frac <= 0.0 || frac >= 1.0)
        throw std::invalid_argument("split: frac must be in (0, 1)");
    const auto cut =
        static_cast<std::size_t>(frac * static_cast<double>(d.records.size()));
    Dataset train{.records = {d.records.begin(), d.records.begin() + cut},
                  .rate = d.rate};
    Dataset val{.records = {d.records.begin() + cut, d.records.end()},
                .rate = d.rate};
    return {std::move(train), std::move(val)};
}

std::vector<int> window_starts(const Dataset& d, int window) {
    std::vector<int> starts;
    const int n = static_cast<int>(d.records.size());
    for (int s = 0; s + window < n; ++s) {
        if (d.records[s].session == d.records[s + window].session)
            starts.push_back(s);
    }
    return starts;
}

Eigen::Matrix3Xd make_window(const Dataset& d, int start, int window) {
    Eigen::Matrix3Xd w(3, window);
    for (int j = 0; j < window; ++j)
        w.col(j) = d.records[start + window - 1 - j].q;
    return w;
}

}  // namespace tendon
