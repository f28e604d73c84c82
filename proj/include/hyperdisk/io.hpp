#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hyperdisk/vec.hpp"

namespace hyperdisk {

// Shortest decimal form that round-trips a 64-bit float (17 significant
// digits, '.' separator).
std::string format_double(double x);

// Writes a header row followed by data rows, comma-separated, '\n' line
// endings. Throws std::runtime_error naming the path on any IO failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Serializes with two-space indentation and a trailing newline. Object keys
// are emitted sorted, so output is byte-stable.
void write_json_file(const std::string& path, const nlohmann::json& j);

// One row per point: "label<TAB>x1<TAB>...<TAB>xn".
void write_embedding_tsv(const std::string& path, const std::vector<std::string>& labels,
                         const std::vector<Vec>& coords);

// Inverse of write_embedding_tsv; rows keep file order. Throws on missing
// file, ragged rows, or unparseable coordinates.
std::vector<std::pair<std::string, Vec>> read_embedding_tsv(const std::string& path);

}  // namespace hyperdisk
