#include "mastct/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "mastct/errors.hpp"

namespace mastct {

std::optional<std::size_t> CollectionFile::header_number(const std::string& key) const {
  for (const auto& [k, v] : header) {
    if (k != key) continue;
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    return std::stoull(v);
  }
  return std::nullopt;
}

CollectionFile read_collection(std::istream& in) {
  CollectionFile file;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (first && line.find(';') == std::string::npos) {
      std::istringstream tokens(line);
      std::string key, value;
      while (tokens >> key) {
        if (!(tokens >> value)) throw ParseError("header key '" + key + "' has no value", line_no, "line");
        file.header.emplace_back(key, value);
      }
      first = false;
      continue;
    }
    first = false;
    try {
      file.trees.push_back(parse_tree(line));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad tree expression (") + e.what() + ")", line_no, "line");
    }
  }
  if (file.trees.empty()) throw ParseError("no trees in collection file", line_no, "line");
  return file;
}

void write_collection(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& header,
                      const std::vector<PhyloTree>& trees) {
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? " " : "") << header[i].first << ' ' << header[i].second;
    out << '\n';
  }
  for (const auto& t : trees) out << serialize_tree(t) << '\n';
}

}  // namespace mastct
