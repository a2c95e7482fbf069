#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dsbranch/error.hpp"
#include "dsbranch/root_system.hpp"
#include "dsbranch/serialize.hpp"

namespace dsbranch {

// Built-in root data, in the same schema accepted by --root-data.
//
// su11: SL(2,R) ~ SU(1,1), K = T = U(1). Weight basis: the character n of U(1),
//       so the noncompact roots are +-2.
// su21: SU(2,1), K = S(U(2) x U(1)). Basis: fundamental weights of sl(3),
//       gram 3x the standard inverse Cartan form; compact root alpha_1.
// sp4r: Sp(4,R), K = U(2). Basis e1, e2; compact roots +-(e1 - e2).
// so41: SO_0(4,1), K = SO(4). Basis e1, e2; compact roots +-e1 +-e2,
//       noncompact +-e1, +-e2. Here rho is half-integral, so Lambda*_rho
//       consists of half-integral lambda.
inline constexpr std::string_view kCatalogJson = R"json([
  {
    "name": "su11",
    "rank": 1,
    "gram": [["1"]],
    "roots": [
      {"coords": ["2"], "compact": false},
      {"coords": ["-2"], "compact": false}
    ],
    "compact_positive": [],
    "sample_lambdas": [["3"], ["1"], ["-1"], ["-3"]],
    "notes": "SL(2,R): holomorphic (lambda > 0) and antiholomorphic (lambda < 0) discrete series"
  },
  {
    "name": "su21",
    "rank": 2,
    "gram": [["2", "1"], ["1", "2"]],
    "roots": [
      {"coords": ["2", "-1"], "compact": true},
      {"coords": ["-2", "1"], "compact": true},
      {"coords": ["-1", "2"], "compact": false},
      {"coords": ["1", "-2"], "compact": false},
      {"coords": ["1", "1"], "compact": false},
      {"coords": ["-1", "-1"], "compact": false}
    ],
    "compact_positive": [0],
    "sample_lambdas": [["1", "1"], ["2", "1"], ["2", "-1"], ["1", "-2"]],
    "notes": "SU(2,1): one holomorphic chamber (1,1), (2,1) and two nonholomorphic chambers"
  },
  {
    "name": "sp4r",
    "rank": 2,
    "gram": [["1", "0"], ["0", "1"]],
    "roots": [
      {"coords": ["1", "-1"], "compact": true},
      {"coords": ["-1", "1"], "compact": true},
      {"coords": ["2", "0"], "compact": false},
      {"coords": ["-2", "0"], "compact": false},
      {"coords": ["1", "1"], "compact": false},
      {"coords": ["-1", "-1"], "compact": false},
      {"coords": ["0", "2"], "compact": false},
      {"coords": ["0", "-2"], "compact": false}
    ],
    "compact_positive": [0],
    "sample_lambdas": [["2", "1"], ["3", "1"], ["2", "-1"], ["1", "-2"]],
    "notes": "Sp(4,R): holomorphic (2,1), (3,1); large (2,-1); (1,-2) in the remaining compact-dominant chamber"
  },
  {
    "name": "so41",
    "rank": 2,
    "gram": [["1", "0"], ["0", "1"]],
    "roots": [
      {"coords": ["1", "1"], "compact": true},
      {"coords": ["-1", "-1"], "compact": true},
      {"coords": ["1", "-1"], "compact": true},
      {"coords": ["-1", "1"], "compact": true},
      {"coords": ["1", "0"], "compact": false},
      {"coords": ["-1", "0"], "compact": false},
      {"coords": ["0", "1"], "compact": false},
      {"coords": ["0", "-1"], "compact": false}
    ],
    "compact_positive": [0, 2],
    "sample_lambdas": [["5/2", "1/2"], ["7/2", "3/2"], ["5/2", "-1/2"], ["7/2", "-3/2"]],
    "notes": "SO_0(4,1): K = SO(4) with Weyl group of order 4; two compact-dominant chambers"
  }
])json";

struct CatalogEntry {
  std::string name;
  RootDatum datum;
  std::vector<std::size_t> compact_positive;
  std::vector<Weight> sample_lambdas;
  std::string notes;

  CompactSystem compact() const { return make_compact_system(datum, compact_positive); }
};

// Parses and validates every entry, including each sample lambda.
inline std::vector<CatalogEntry> load_catalog_from(std::string_view text) {
  std::vector<CatalogEntry> out;
  Json all;
  try {
    all = Json::parse(text);
  } catch (const Json::exception& err) {
    throw Error(ErrorKind::CatalogCorrupt, err.what());
  }
  if (!all.is_array()) throw Error(ErrorKind::CatalogCorrupt, "catalog must be a JSON array");
  for (const auto& j : all) {
    std::string name = j.is_object() ? j.value("name", "?") : "?";
    try {
      auto file = root_data_from_json(j);
      CatalogEntry e{file.name, file.datum, file.compact_positive, file.sample_lambdas, file.notes};
      auto k = e.compact();
      for (const auto& l : e.sample_lambdas) validate_hc_parameter(k, l);
      out.push_back(std::move(e));
    } catch (const Error& err) {
      throw Error(ErrorKind::CatalogCorrupt, name + ": " + err.what());
    }
  }
  return out;
}

inline std::vector<CatalogEntry> load_catalog() { return load_catalog_from(kCatalogJson); }

inline CatalogEntry catalog_entry(std::string_view name) {
  for (auto& e : load_catalog())
    if (e.name == name) return e;
  throw Error(ErrorKind::UnknownGroup, "no catalog entry named '" + std::string(name) + "'");
}

}  // namespace dsbranch
