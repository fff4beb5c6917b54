#include "writers.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "trps/errors.hpp"

namespace trps::io {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) {
        throw ShapeError("Table: row width does not match the header");
    }
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::string out;
    for (size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    // Values were already formatted as strings; emit them verbatim where
    // they parse as numbers so both formats carry identical digits.
    auto is_numeric = [](const std::string& s) {
        if (s.empty()) return false;
        char* end = nullptr;
        std::strtod(s.c_str(), &end);
        return end == s.c_str() + s.size();
    };
    std::string out = "[\n";
    for (size_t r = 0; r < rows.size(); ++r) {
        out += "  {";
        for (size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ", ";
            out += '"' + columns[c] + "\": ";
            if (is_numeric(rows[r][c])) {
                out += rows[r][c];
            } else {
                out += '"' + rows[r][c] + '"';
            }
        }
        out += r + 1 < rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

Table timeseries_table(const std::vector<double>& times,
                       const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& population_columns) {
    Table t;
    t.columns.push_back("t_ns");
    for (const std::string& label : labels) t.columns.push_back("pop_" + label);
    for (size_t i = 0; i < times.size(); ++i) {
        std::vector<std::string> row;
        row.push_back(format_number(times[i]));
        for (const auto& col : population_columns) row.push_back(format_number(col[i]));
        t.add_row(std::move(row));
    }
    return t;
}

Table trps_table(const TRPSMap& map) {
    Table t;
    t.columns = {"t_ns", "omega_GHz", "intensity", "observable", "delta_s_GHz"};
    const std::string ds = format_number(map.delta_s);
    for (size_t i = 0; i < map.times.size(); ++i) {
        for (size_t k = 0; k < map.frequencies.size(); ++k) {
            t.add_row({format_number(map.times[i]), format_number(map.frequencies[k]),
                       format_number(map.intensities(static_cast<Eigen::Index>(i),
                                                     static_cast<Eigen::Index>(k))),
                       map.observable, ds});
        }
    }
    return t;
}

Table integrated_table(const std::string& axis_column, const std::vector<double>& axis,
                       const std::vector<double>& values) {
    Table t;
    t.columns = {axis_column, "intensity"};
    for (size_t i = 0; i < axis.size(); ++i) {
        t.add_row({format_number(axis[i]), format_number(values[i])});
    }
    return t;
}

Table scan_table(const std::string& value_column, const std::vector<double>& times,
                 const std::vector<double>& scan_values,
                 const std::vector<std::string>& labels,
                 const std::vector<std::vector<std::vector<double>>>& population_columns) {
    Table t;
    t.columns.push_back("t_ns");
    t.columns.push_back(value_column);
    for (const std::string& label : labels) t.columns.push_back("pop_" + label);
    for (size_t v = 0; v < scan_values.size(); ++v) {
        for (size_t i = 0; i < times.size(); ++i) {
            std::vector<std::string> row;
            row.push_back(format_number(times[i]));
            row.push_back(format_number(scan_values[v]));
            for (const auto& col : population_columns[v]) {
                row.push_back(format_number(col[i]));
            }
            t.add_row(std::move(row));
        }
    }
    return t;
}

Table bench_table(const std::vector<ScalingReport>& reports) {
    Table t;
    t.columns = {"method", "axis", "size", "runtime_s", "ops_count", "normalized"};
    for (const ScalingReport& r : reports) {
        for (size_t i = 0; i < r.sizes.size(); ++i) {
            t.add_row({r.method, r.axis, std::to_string(r.sizes[i]),
                       format_number(r.runtimes_s[i]), std::to_string(r.ops[i]),
                       format_number(r.normalized[i])});
        }
    }
    return t;
}

Table bench_slopes_table(const std::vector<ScalingReport>& reports) {
    Table t;
    t.columns = {"method", "axis", "fitted_slope", "slope_stderr", "ops_match", "monotone"};
    for (const ScalingReport& r : reports) {
        t.add_row({r.method, r.axis, format_number(r.fitted_slope),
                   format_number(r.slope_stderr), r.ops_match() ? "true" : "false",
                   r.monotone ? "true" : "false"});
    }
    return t;
}

std::filesystem::path write_text(const std::filesystem::path& path,
                                 const std::string& content) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    out.close();
    if (!out) {
        throw IoError("short write to " + path.string());
    }
    return path;
}

std::filesystem::path write_table(const std::filesystem::path& directory,
                                  const std::string& stem, OutputFormat format,
                                  const Table& table) {
    const bool csv = format == OutputFormat::Csv;
    return write_text(directory / (stem + (csv ? ".csv" : ".json")),
                      csv ? table.to_csv() : table.to_json());
}

}  // namespace trps::io
