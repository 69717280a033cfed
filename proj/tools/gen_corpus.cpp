// regenerates the shipped category corpus: every category with at most
// 3 objects and 6 morphisms, one file per category plus an index
#include "hodgehh/fincat.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

using namespace hodgehh;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: gen_corpus <output dir>\n");
    return 1;
  }
  std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  auto corpus = enumerate_categories(3, 6);
  std::ofstream index(dir / "index.txt");
  std::map<std::pair<int, int>, int> counts;
  for (size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "cat_%04zu.cat", i);
    std::ofstream out(dir / name);
    out << cat_to_text(corpus[i]);
    index << name << "\n";
    counts[{corpus[i].nobj, corpus[i].nmor()}]++;
  }
  std::printf("wrote %zu categories to %s\n", corpus.size(), argv[1]);
  for (const auto& [k, c] : counts)
    std::printf("  %d objects, %d morphisms: %d\n", k.first, k.second, c);
  return 0;
}
