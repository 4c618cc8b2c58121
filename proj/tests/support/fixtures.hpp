#pragma once

#include <string>
#include <vector>

#include "strongl/corpus.hpp"

namespace fixtures {

inline const std::string kDataDir = STRONGL_TEST_DATA_DIR;
inline const std::string kGoldenDir = STRONGL_TEST_GOLDEN_DIR;

inline const std::vector<strongl::CorpusEntry>& corpus() {
  static const auto entries = strongl::read_corpus(kDataDir + "/corpus.txt");
  return entries;
}

inline const strongl::Diagram& named(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e.diagram;
  throw std::runtime_error("no corpus entry " + name);
}

}  // namespace fixtures
