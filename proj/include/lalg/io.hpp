#ifndef LALG_IO_HPP
#define LALG_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "lalg/algebra.hpp"

namespace lalg {

// Text table format v1: first non-comment line holds n, followed by n rows
// of n space-separated indices; row i lists x_i·x_j for j = 0..n-1. Lines
// starting with '#' are comments. Index 0 is the unit.
AlgebraTable parse_table(const std::string& text);
std::vector<AlgebraTable> parse_tables(const std::string& text);
std::string format_table(const AlgebraTable& table);
// Tables separated by one blank line, as streamed by `enumerate`.
std::string format_tables(const std::vector<AlgebraTable>& tables);

nlohmann::json table_to_json(const AlgebraTable& table);
AlgebraTable table_from_json(const nlohmann::json& j);

// Reads a file holding either the text format or its JSON mirror.
AlgebraTable read_table_file(const std::string& path);
std::string read_file(const std::string& path);

nlohmann::json to_json(const ElementSet& s);
nlohmann::json to_json(const Witness& w);

}  // namespace lalg

#endif  // LALG_IO_HPP
