#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iglp/spectral.hpp"

namespace iglp {

// Fixture corpora:
//   "eigen:<maxdeg>"          one member per H~_k with |k| <= maxdeg
//   "random:<maxdeg>:<count>" seeded random expansions of degree <= maxdeg
//   "supergauss"              e^{-a|x|^2}, a in {1.5, 2, 3}, expanded
//   "vector:<m>"              vector-valued members pairing eigenfunctions
//                             across m in {2, 4, 8} coordinates
std::vector<HermiteExpansion> make_corpus(const std::string& selector, int n,
                                          std::uint64_t seed);

// true if the selector's members have super-Gaussian decay (usable at p = 1)
bool corpus_supports_p1(const std::string& selector);

std::string corpus_to_json(const std::vector<HermiteExpansion>& corpus);
std::vector<HermiteExpansion> corpus_from_json(const std::string& doc);

}  // namespace iglp
