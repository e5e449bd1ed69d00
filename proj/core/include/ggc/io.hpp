#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ggc/graph.hpp"

namespace ggc {

// Shortest decimal form that parses back to the same bits (std::to_chars).
// Keeps every emitter deterministic and round-trip safe.
std::string format_double(double value);

// "u v w" per line, '#' comments and blank lines skipped, 0-based ids.
// Throws ParseError with the line number, plus the graph builder's errors.
SparseGraph load_edge_list(std::istream& in);
SparseGraph load_edge_list_file(const std::string& path);

// Canonical emitter: each unordered pair once with i < j, rows ascending.
void save_edge_list(const SparseGraph& graph, std::ostream& out);
void save_edge_list_file(const SparseGraph& graph, const std::string& path);

// One nonnegative integer per line.
std::vector<std::int32_t> load_labels(std::istream& in);
std::vector<std::int32_t> load_labels_file(const std::string& path);
void save_labels(const std::vector<std::int32_t>& labels, std::ostream& out);
void save_labels_file(const std::vector<std::int32_t>& labels, const std::string& path);

// Whole-file slurp used by the loaders; throws IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ggc
