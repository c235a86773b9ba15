// CSV/JSON result files. CSV schema v1: comment header lines starting with
// '#', then `time_ns,site,value` rows (site is 1-based). JSON summaries carry
// the tool version, canonical config, integrator settings, and runtime.

#pragma once

#include <string>
#include <vector>

#include "floq/protocols.hpp"

namespace floq {

void write_series_csv(const std::string& path, const SiteTimeSeries& series,
                      const std::vector<std::string>& metadata);

SiteTimeSeries read_series_csv(const std::string& path);

}  // namespace floq
