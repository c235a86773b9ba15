#include "floq/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace floq {

void write_series_csv(const std::string& path, const SiteTimeSeries& series,
                      const std::vector<std::string>& metadata) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# csv-schema: v1\n";
    for (const auto& line : metadata) out << "# " << line << "\n";
    out << "time_ns,site,value\n";
    char buf[96];
    for (std::size_t i = 0; i < series.times_ns.size(); ++i)
        for (Eigen::Index j = 0; j < series.values.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.9g,%ld,%.12g\n", series.times_ns[i],
                          static_cast<long>(j + 1),
                          series.values(static_cast<Eigen::Index>(i), j));
            out << buf;
        }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SiteTimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    bool header_seen = false;
    std::map<double, std::map<long, double>> rows;
    long max_site = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "time_ns,site,value")
                throw std::runtime_error(path + ": expected header time_ns,site,value");
            header_seen = true;
            continue;
        }
        double t = 0.0, v = 0.0;
        long site = 0;
        if (std::sscanf(line.c_str(), "%lf,%ld,%lf", &t, &site, &v) != 3)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": malformed row");
        if (site < 1) throw std::runtime_error(path + ": site indices are 1-based");
        rows[t][site] = v;
        max_site = std::max(max_site, site);
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");

    SiteTimeSeries series;
    series.values.resize(static_cast<Eigen::Index>(rows.size()), max_site);
    series.values.setZero();
    Eigen::Index r = 0;
    for (const auto& [t, cols] : rows) {
        series.times_ns.push_back(t);
        for (const auto& [site, v] : cols) series.values(r, site - 1) = v;
        ++r;
    }
    return series;
}

}  // namespace floq
