#pragma once

// Named diagram collections: one `name<TAB>PD` record per line, '#' comments.

#include <string>
#include <string_view>
#include <vector>

#include "strongl/diagram.hpp"

namespace strongl {

struct CorpusEntry {
  std::string name;
  Diagram diagram;
};

std::vector<CorpusEntry> parse_corpus(std::string_view text);
// Throws MalformedRecord when the file cannot be read.
std::vector<CorpusEntry> read_corpus(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace strongl
