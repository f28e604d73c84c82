#include "hyperdisk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyperdisk {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out = open_for_write(path);
    for (size_t i = 0; i < header.size(); ++i) {
        if (i > 0) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::runtime_error("row width differs from header: " + path);
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    finish_write(out, path);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out = open_for_write(path);
    out << j.dump(2) << '\n';
    finish_write(out, path);
}

void write_embedding_tsv(const std::string& path, const std::vector<std::string>& labels,
                         const std::vector<Vec>& coords) {
    if (labels.size() != coords.size()) throw std::runtime_error("label/coordinate count mismatch: " + path);
    std::ofstream out = open_for_write(path);
    for (size_t i = 0; i < labels.size(); ++i) {
        out << labels[i];
        for (double x : coords[i]) out << '\t' << format_double(x);
        out << '\n';
    }
    finish_write(out, path);
}

std::vector<std::pair<std::string, Vec>> read_embedding_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<std::pair<std::string, Vec>> rows;
    std::string line;
    size_t width = 0;
    size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string label;
        if (!std::getline(ss, label, '\t')) throw std::runtime_error("malformed row in " + path);
        Vec coords;
        std::string field;
        while (std::getline(ss, field, '\t')) {
            size_t consumed = 0;
            double value = 0.0;
            try {
                value = std::stod(field, &consumed);
            } catch (const std::exception&) {
                consumed = 0;
            }
            if (consumed != field.size() || field.empty())
                throw std::runtime_error("bad coordinate '" + field + "' at " + path + ":" + std::to_string(lineNo));
            coords.push_back(value);
        }
        if (coords.empty()) throw std::runtime_error("row without coordinates at " + path + ":" + std::to_string(lineNo));
        if (width == 0) width = coords.size();
        if (coords.size() != width) throw std::runtime_error("ragged coordinate rows in " + path);
        rows.emplace_back(std::move(label), std::move(coords));
    }
    if (rows.empty()) throw std::runtime_error("no embedding rows in " + path);
    return rows;
}

}  // namespace hyperdisk
