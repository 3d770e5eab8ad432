#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plotkit/data.hpp"
#include "plotkit/errors.hpp"

namespace plotkit {

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

} // namespace detail

/// Read named columns from a UTF-8 CSV file with a header row. Empty
/// fields become missing markers; unparseable cells are an error naming
/// the row and column.
inline std::vector<DataColumn> load_csv(const std::string& path,
                                        const std::vector<std::string>& columns) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open CSV file: " + path);

    std::string header_line;
    if (!std::getline(in, header_line)) throw CsvError("empty CSV file: " + path);
    std::vector<std::string> header = detail::split_csv_line(header_line);
    for (auto& h : header) h = detail::trim(h);

    std::vector<std::size_t> indices;
    for (const auto& name : columns) {
        bool found = false;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                indices.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) throw CsvError("CSV column not found: " + name + " in " + path);
    }

    std::vector<DataColumn> out(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) out[i].label = columns[i];

    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> fields = detail::split_csv_line(line);
        for (std::size_t i = 0; i < indices.size(); ++i) {
            std::size_t col = indices[i];
            std::string cell = col < fields.size() ? detail::trim(fields[col]) : "";
            if (cell.empty()) {
                out[i].values.push_back(missing_value());
                continue;
            }
            try {
                std::size_t used = 0;
                double v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
                out[i].values.push_back(v);
            } catch (const std::exception&) {
                throw CsvError("unparseable CSV cell '" + cell + "' at row " +
                               std::to_string(row) + ", column '" + columns[i] + "'");
            }
        }
    }
    return out;
}

} // namespace plotkit
