#pragma once

#include "memkit/distributions.hpp"
#include "memkit/fit_result.hpp"
#include "memkit/series.hpp"

#include <string>

namespace memkit {

// JSON round trips are bit-exact for all floating-point payloads
// (shortest-representation serialization).

std::string json_string(const FitResult& fit);
FitResult fit_result_from_json(const std::string& text);

std::string json_string(const ObservationSeries& series);
ObservationSeries series_from_json(const std::string& text);

std::string json_string(const AlignedPanel& panel);
AlignedPanel panel_from_json(const std::string& text);

std::string json_string(const DistSpec& spec);
DistSpec dist_spec_from_json(const std::string& text);

std::string json_string(const UniParams& params);
std::string json_string(const VecParams& params);

}  // namespace memkit
