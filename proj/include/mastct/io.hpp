#pragma once

// Tree-collection files: an optional header line of whitespace-separated
// key/value pairs (for example "q 3 k 3 D 5"), then one tree expression per
// line. Blank lines are skipped.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mastct/tree.hpp"

namespace mastct {

struct CollectionFile {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<PhyloTree> trees;

  std::optional<std::size_t> header_number(const std::string& key) const;
};

// Throws ParseError carrying the 1-based line number.
CollectionFile read_collection(std::istream& in);
void write_collection(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& header,
                      const std::vector<PhyloTree>& trees);

}  // namespace mastct
