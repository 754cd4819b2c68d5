// Regenerates the corpus fixtures under fixtures/. The files are committed;
// rerun this tool only when the corpus definitions change.
//
//   gen_fixtures [output_dir]

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "iglp/corpus.hpp"

using namespace iglp;

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) {
    std::fprintf(stderr, "gen_fixtures: cannot write %s\n", path.c_str());
    std::exit(1);
  }
  std::printf("wrote %s\n", path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  const std::uint64_t seed = 1;

  struct Spec {
    std::string file;
    std::string selector;
    int n;
  };
  std::vector<Spec> specs = {
      {"eigen_n1.json", "eigen:8", 1},
      {"eigen_n2.json", "eigen:8", 2},
      {"random_n1.json", "random:12:16", 1},
      {"random_n2.json", "random:12:16", 2},
      {"supergauss_n1.json", "supergauss", 1},
      {"vector_m2_n1.json", "vector:2", 1},
      {"vector_m4_n1.json", "vector:4", 1},
      {"vector_m8_n1.json", "vector:8", 1},
  };
  for (const Spec& s : specs)
    write_file(dir + "/" + s.file,
               corpus_to_json(make_corpus(s.selector, s.n, seed)));
  return 0;
}
