#pragma once

// Internal serialization helpers for experiment outputs. Everything here
// formats numbers deterministically so that identical runs produce
// byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

#include "trps/bench.hpp"
#include "trps/experiment.hpp"
#include "trps/trps_map.hpp"

namespace trps::io {

std::string format_number(double v);

/// Column-oriented table; every writer below goes through it.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_csv() const;
    std::string to_json() const;  // array of row objects, same field names
};

Table timeseries_table(const std::vector<double>& times,
                       const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& population_columns);

Table trps_table(const TRPSMap& map);

Table integrated_table(const std::string& axis_column, const std::vector<double>& axis,
                       const std::vector<double>& values);

Table scan_table(const std::string& value_column, const std::vector<double>& times,
                 const std::vector<double>& scan_values,
                 const std::vector<std::string>& labels,
                 const std::vector<std::vector<std::vector<double>>>& population_columns);

Table bench_table(const std::vector<ScalingReport>& reports);
Table bench_slopes_table(const std::vector<ScalingReport>& reports);

/// Writes content to path (parent directories created), returning path.
std::filesystem::path write_text(const std::filesystem::path& path,
                                 const std::string& content);

std::filesystem::path write_table(const std::filesystem::path& directory,
                                  const std::string& stem, OutputFormat format,
                                  const Table& table);

}  // namespace trps::io
