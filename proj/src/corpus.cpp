#include "strongl/corpus.hpp"

#include <fstream>
#include <sstream>

namespace strongl {

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::MalformedRecord, "corpus line " + std::to_string(lineno) + " lacks a tab");
    out.push_back({line.substr(0, tab), parse_pd(line.substr(tab + 1))});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedRecord, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<CorpusEntry> read_corpus(const std::string& path) { return parse_corpus(read_file(path)); }

}  // namespace strongl
