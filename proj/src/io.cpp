#include "lalg/io.hpp"

#include <fstream>
#include <sstream>

namespace lalg {

namespace {

// Significant (non-comment) lines, with their blank-line structure kept so
// that multi-table streams can be split.
std::vector<std::string> significant_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    out.push_back(first == std::string::npos ? std::string() : line);
  }
  return out;
}

std::vector<long long> parse_numbers(const std::string& line) {
  std::istringstream in(line);
  std::vector<long long> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw MalformedTable("not an integer: '" + token + "'");
    }
    if (used != token.size()) throw MalformedTable("not an integer: '" + token + "'");
    out.push_back(v);
  }
  return out;
}

// Parses one table starting at lines[pos] (which must be non-blank) and
// advances pos past it.
AlgebraTable parse_one(const std::vector<std::string>& lines, std::size_t& pos) {
  auto header = parse_numbers(lines[pos++]);
  if (header.size() != 1 || header[0] < 1) throw MalformedTable("first line must hold n >= 1");
  const auto n = static_cast<std::size_t>(header[0]);
  std::vector<std::vector<int>> rows;
  while (rows.size() < n) {
    if (pos >= lines.size()) throw MalformedTable("expected " + std::to_string(n) + " rows");
    if (lines[pos].empty()) throw MalformedTable("blank line inside table");
    auto nums = parse_numbers(lines[pos++]);
    if (nums.size() != n) {
      throw MalformedTable("row " + std::to_string(rows.size()) + " has " + std::to_string(nums.size()) +
                           " entries, expected " + std::to_string(n));
    }
    std::vector<int> row;
    for (auto v : nums) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw MalformedTable("entry out of range");
      row.push_back(static_cast<int>(v));
    }
    rows.push_back(std::move(row));
  }
  return AlgebraTable::from_rows(rows);
}

}  // namespace

std::vector<AlgebraTable> parse_tables(const std::string& text) {
  auto lines = significant_lines(text);
  std::vector<AlgebraTable> out;
  std::size_t pos = 0;
  for (;;) {
    while (pos < lines.size() && lines[pos].empty()) ++pos;
    if (pos >= lines.size()) break;
    out.push_back(parse_one(lines, pos));
  }
  return out;
}

AlgebraTable parse_table(const std::string& text) {
  auto tables = parse_tables(text);
  if (tables.size() != 1) {
    throw MalformedTable("expected exactly one table, found " + std::to_string(tables.size()));
  }
  return std::move(tables.front());
}

std::string format_table(const AlgebraTable& t) {
  std::string out = std::to_string(t.size()) + "\n";
  for (Element x = 0; x < t.size(); ++x) {
    for (Element y = 0; y < t.size(); ++y) {
      if (y) out += ' ';
      out += std::to_string(t.dot(x, y));
    }
    out += '\n';
  }
  return out;
}

std::string format_tables(const std::vector<AlgebraTable>& tables) {
  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) out += '\n';
    out += format_table(tables[i]);
  }
  return out;
}

nlohmann::json table_to_json(const AlgebraTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (Element x = 0; x < t.size(); ++x) {
    auto r = t.row(x);
    rows.push_back(std::vector<int>(r.begin(), r.end()));
  }
  nlohmann::json j = {{"n", t.size()}, {"table", rows}};
  if (!t.names().empty()) j["names"] = t.names();
  return j;
}

AlgebraTable table_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<long long>();
    auto rows = j.at("table").get<std::vector<std::vector<int>>>();
    if (n < 1 || static_cast<std::size_t>(n) != rows.size()) {
      throw MalformedTable("'n' does not match the number of rows");
    }
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return AlgebraTable::from_rows(rows, std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedTable(std::string("bad JSON table: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedTable("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlgebraTable read_table_file(const std::string& path) {
  auto text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedTable(std::string("bad JSON: ") + e.what());
    }
    return table_from_json(j);
  }
  return parse_table(text);
}

nlohmann::json to_json(const ElementSet& s) { return s.to_vector(); }

nlohmann::json to_json(const Witness& w) {
  return {{"identity", std::string(to_string(w.identity))}, {"tuple", w.tuple}};
}

}  // namespace lalg
