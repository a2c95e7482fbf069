#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dsbranch/blattner.hpp"
#include "dsbranch/characters.hpp"
#include "dsbranch/error.hpp"
#include "dsbranch/geometry.hpp"
#include "dsbranch/induction.hpp"
#include "dsbranch/rational.hpp"
#include "dsbranch/root_system.hpp"

namespace dsbranch {

using Json = nlohmann::json;

// Rationals travel as "p/q" or integer strings. Plain JSON integers are
// accepted on input; output is always the canonical string.
inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw Error(ErrorKind::ParseError, "expected a rational string, got " + j.dump());
}

inline Json to_json(const Rational& q) { return format_rational(q); }

inline Weight weight_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected a coordinate array, got " + j.dump());
  std::vector<Rational> coords;
  for (const auto& x : j) coords.push_back(rational_from_json(x));
  return Weight(std::move(coords));
}

inline Json to_json(const Weight& w) {
  Json out = Json::array();
  for (const auto& c : w.coords()) out.push_back(format_rational(c));
  return out;
}

// Root-data file: { "rank", "gram", "roots": [{"coords", "compact"}],
// "compact_positive": [indices] }, plus optional catalog fields.
struct RootDataFile {
  RootDatum datum;
  std::vector<std::size_t> compact_positive;
  std::string name;
  std::string notes;
  std::vector<Weight> sample_lambdas;
};

inline RootDataFile root_data_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "root data must be a JSON object");
    for (const char* key : {"rank", "gram", "roots"})
      if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    auto rank = j.at("rank").get<std::int64_t>();
    if (rank <= 0) throw Error(ErrorKind::DimensionMismatch, "rank must be positive");
    Matrix gram;
    for (const auto& row : j.at("gram")) {
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rational_from_json(x));
      gram.push_back(std::move(r));
    }
    std::vector<Root> roots;
    for (const auto& r : j.at("roots")) roots.push_back({weight_from_json(r.at("coords")), r.at("compact").get<bool>()});
    RootDataFile out;
    out.datum = build_root_datum(static_cast<std::size_t>(rank), std::move(gram), std::move(roots));
    if (j.contains("compact_positive"))
      out.compact_positive = j.at("compact_positive").get<std::vector<std::size_t>>();
    out.name = j.value("name", "");
    out.notes = j.value("notes", "");
    if (j.contains("sample_lambdas"))
      for (const auto& l : j.at("sample_lambdas")) out.sample_lambdas.push_back(weight_from_json(l));
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline Json to_json(const RootDataFile& f) {
  Json j;
  if (!f.name.empty()) j["name"] = f.name;
  j["rank"] = f.datum.rank();
  Json gram = Json::array();
  for (const auto& row : f.datum.gram()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(format_rational(x));
    gram.push_back(std::move(r));
  }
  j["gram"] = std::move(gram);
  Json roots = Json::array();
  for (const auto& r : f.datum.roots()) roots.push_back({{"coords", to_json(r.weight)}, {"compact", r.compact}});
  j["roots"] = std::move(roots);
  j["compact_positive"] = f.compact_positive;
  if (!f.sample_lambdas.empty()) {
    Json ls = Json::array();
    for (const auto& l : f.sample_lambdas) ls.push_back(to_json(l));
    j["sample_lambdas"] = std::move(ls);
  }
  if (!f.notes.empty()) j["notes"] = f.notes;
  return j;
}

inline RootDataFile load_root_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open root data file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return root_data_from_json(j);
}

inline Json to_json(const FormalCharacter& chi) {
  Json j;
  Json terms = Json::array();
  for (const auto& [w, c] : chi.canonical_terms()) terms.push_back({{"weight", to_json(w)}, {"coeff", c}});
  j["terms"] = std::move(terms);
  if (chi.grading()) j["grading_reference"] = to_json(chi.grading()->reference);
  j["cutoff"] = chi.cutoff() ? Json(format_rational(*chi.cutoff())) : Json(nullptr);
  return j;
}

inline Json to_json(const KCharacter& k) {
  Json j;
  Json terms = Json::array();
  for (const auto& [w, c] : k.canonical_terms())
    terms.push_back({{"highest_weight", to_json(w)}, {"multiplicity", c}});
  j["terms"] = std::move(terms);
  j["cutoff"] = k.cutoff ? Json(format_rational(*k.cutoff)) : Json(nullptr);
  return j;
}

inline Json to_json(const BranchingTable& t) {
  Json j;
  j["lambda"] = to_json(t.param.lambda);
  j["mu_lambda"] = to_json(t.mu_lambda);
  j["rho_c"] = to_json(t.param.compact.rho_c);
  j["rho_n"] = to_json(t.param.positive.rho_n);
  j["r"] = t.r;
  j["cutoff"] = format_rational(t.cutoff);
  Json entries = Json::array();
  for (const auto& [mu, m] : t.canonical_entries())
    entries.push_back({{"highest_weight", to_json(mu)}, {"multiplicity", m}, {"grade", format_rational(t.grade(mu))}});
  j["entries"] = std::move(entries);
  return j;
}

// Columns: highest weight coordinates, multiplicity, grade (mu + rho_c, lambda).
inline std::string to_tsv(const BranchingTable& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.param.lambda.rank(); ++i) os << "mu" << (i + 1) << '\t';
  os << "multiplicity\tgrade\n";
  for (const auto& [mu, m] : t.canonical_entries()) {
    for (const auto& c : mu.coords()) os << c.get_str() << '\t';
    os << m << '\t' << t.grade(mu).get_str() << '\n';
  }
  return os.str();
}

inline Json to_json(const Mismatch& m) {
  return {{"check", m.check}, {"weight", to_json(m.weight)}, {"expected", m.expected}, {"actual", m.actual}};
}

inline Json to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj{{"name", c.name}, {"pass", c.pass}, {"compared", c.compared}};
    if (c.mismatch) cj["mismatch"] = to_json(*c.mismatch);
    checks.push_back(std::move(cj));
  }
  return {{"checks", std::move(checks)},
          {"status", r.pass ? "pass" : "fail"},
          {"first_mismatch", r.first_mismatch ? to_json(*r.first_mismatch) : Json(nullptr)}};
}

inline Json to_json(const VanishingReport& r) {
  Json anomalies = Json::array();
  for (const auto& a : r.anomalies)
    anomalies.push_back({{"mu", to_json(a.mu)},
                         {"multiplicity", a.multiplicity},
                         {"classification", std::string(cone_class_name(a.classification))}});
  return {{"anomalies", std::move(anomalies)}, {"scanned", r.scanned}};
}

}  // namespace dsbranch
