#include "spinstar/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace spinstar {

std::string format_double(double value) {
  char buffer[40];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buffer, result.ptr);
}

void write_time_series_csv(const TimeSeries& series, std::ostream& out) {
  out << "t";
  for (const std::string& name : series.names) {
    out << ',' << name;
  }
  out << '\n';
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    out << format_double(series.grid[i]);
    for (const std::vector<double>& column : series.columns) {
      out << ',' << format_double(column[i]);
    }
    out << '\n';
  }
}

nlohmann::json time_series_to_json(const TimeSeries& series) {
  nlohmann::json j;
  j["t"] = series.grid;
  nlohmann::json columns = nlohmann::json::object();
  for (std::size_t k = 0; k < series.names.size(); ++k) {
    columns[series.names[k]] = series.columns[k];
  }
  j["columns"] = columns;
  return j;
}

TimeSeries time_series_from_json(const nlohmann::json& j) {
  TimeSeries series;
  series.grid = j.at("t").get<std::vector<double>>();
  for (const auto& [name, values] : j.at("columns").items()) {
    series.names.push_back(name);
    series.columns.push_back(values.get<std::vector<double>>());
  }
  return series;
}

nlohmann::json event_list_to_json(const EventList& events) {
  nlohmann::json j;
  j["degenerate_input"] = events.degenerate_input;
  nlohmann::json list = nlohmann::json::array();
  for (const Event& event : events.events) {
    nlohmann::json entry;
    entry["t"] = event.t;
    entry["kind"] = to_string(event.kind);
    if (!event.label.empty()) {
      entry["label"] = event.label;
    }
    entry["payload"] = event.payload;
    list.push_back(entry);
  }
  j["events"] = list;
  return j;
}

void write_gnuplot_script(const TimeSeries& series, const std::string& csv_path,
                          std::ostream& out) {
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 't [1/J]'\n"
      << "set grid\n"
      << "plot ";
  for (std::size_t k = 0; k < series.names.size(); ++k) {
    if (k > 0) out << ", ";
    out << (k == 0 ? "'" + csv_path + "'" : "''") << " using 1:" << (k + 2) << " with lines";
  }
  out << '\n';
}

}  // namespace spinstar
