#include "iglp/corpus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "iglp/errors.hpp"
#include "iglp/rng.hpp"

namespace iglp {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

std::vector<HermiteExpansion> eigen_corpus(int n, int maxdeg) {
  std::vector<HermiteExpansion> out;
  for (const MultiIndex& k : multiindices_up_to_degree(n, maxdeg)) {
    HermiteExpansion f;
    f.n = n;
    f.vdim = 1;
    f.terms[k] = {1.0};
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<HermiteExpansion> random_corpus(int n, int maxdeg, int count,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<HermiteExpansion> out;
  auto modes = multiindices_up_to_degree(n, maxdeg);
  for (int c = 0; c < count; ++c) {
    HermiteExpansion f;
    f.n = n;
    f.vdim = 1;
    for (const MultiIndex& k : modes) {
      // sparse expansions: keep roughly a third of the modes
      if (rng.uniform() < 1.0 / 3.0) f.terms[k] = {rng.uniform(-1.0, 1.0)};
    }
    if (f.terms.empty()) f.terms[MultiIndex(n, 0)] = {rng.uniform(0.5, 1.0)};
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<HermiteExpansion> supergauss_corpus(int n) {
  SpaceGrid grid = gauss_hermite_grid(80, n, std::vector<double>(n, 0.0), 1.0,
                                      MeasureTag::inverse_gauss);
  std::vector<HermiteExpansion> out;
  for (double a : {1.5, 2.0, 3.0}) {
    auto f = [a](const std::vector<double>& x) {
      double r2 = 0.0;
      for (double xi : x) r2 += xi * xi;
      return std::exp(-a * r2);
    };
    out.push_back(expand(f, n, 12, grid));
  }
  return out;
}

std::vector<HermiteExpansion> vector_corpus(int n, int vdim, std::uint64_t seed) {
  if (vdim != 2 && vdim != 4 && vdim != 8)
    throw std::invalid_argument("vector corpus: m must be one of {2, 4, 8}");
  // members interleave eigenfunctions (even components) with seeded random
  // expansions (odd components) across the vdim coordinates
  const int members = 4;
  auto eig = eigen_corpus(n, 4);
  auto rnd = random_corpus(n, 6, members * vdim, seed);
  std::vector<HermiteExpansion> out;
  for (int b = 0; b < members; ++b) {
    HermiteExpansion f;
    f.n = n;
    f.vdim = vdim;
    for (int j = 0; j < vdim; ++j) {
      const HermiteExpansion& src = (j % 2 == 0)
          ? eig[(b * vdim + j) % eig.size()]
          : rnd[b * vdim + j];
      for (const auto& [k, c] : src.terms) {
        auto it = f.terms.find(k);
        if (it == f.terms.end())
          it = f.terms.emplace(k, std::vector<double>(vdim, 0.0)).first;
        it->second[j] = c[0];
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<HermiteExpansion> make_corpus(const std::string& selector, int n,
                                          std::uint64_t seed) {
  auto parts = split(selector, ':');
  if (parts.empty()) throw std::invalid_argument("make_corpus: empty selector");
  const std::string& kind = parts[0];
  if (kind == "eigen") {
    int maxdeg = parts.size() > 1 ? std::stoi(parts[1]) : 8;
    return eigen_corpus(n, maxdeg);
  }
  if (kind == "random") {
    int maxdeg = parts.size() > 1 ? std::stoi(parts[1]) : 12;
    int count = parts.size() > 2 ? std::stoi(parts[2]) : 8;
    return random_corpus(n, maxdeg, count, seed);
  }
  if (kind == "supergauss") return supergauss_corpus(n);
  if (kind == "vector") {
    int vdim = parts.size() > 1 ? std::stoi(parts[1]) : 2;
    return vector_corpus(n, vdim, seed);
  }
  throw std::invalid_argument("make_corpus: unknown selector '" + selector + "'");
}

bool corpus_supports_p1(const std::string& selector) {
  return split(selector, ':')[0] == "supergauss";
}

std::string corpus_to_json(const std::vector<HermiteExpansion>& corpus) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& f : corpus)
    doc.push_back(nlohmann::ordered_json::parse(expansion_to_json(f)));
  return doc.dump(2);
}

std::vector<HermiteExpansion> corpus_from_json(const std::string& doc) {
  auto j = nlohmann::json::parse(doc);
  std::vector<HermiteExpansion> out;
  for (const auto& item : j) out.push_back(expansion_from_json(item.dump()));
  return out;
}

}  // namespace iglp
