#pragma once

#include "spinstar/analysis.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>

namespace spinstar {

// Formats a double with 12 significant digits, locale-independent.
std::string format_double(double value);

// Header row "t,<name>..."; 12 significant digits; LF line endings.
void write_time_series_csv(const TimeSeries& series, std::ostream& out);

nlohmann::json time_series_to_json(const TimeSeries& series);
TimeSeries time_series_from_json(const nlohmann::json& j);

nlohmann::json event_list_to_json(const EventList& events);

// gnuplot script plotting every column of the referenced CSV against time.
void write_gnuplot_script(const TimeSeries& series, const std::string& csv_path,
                          std::ostream& out);

}  // namespace spinstar
