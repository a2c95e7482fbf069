// dsbranch: K-type multiplicities of discrete series representations.
//
// Exit codes: 0 success, 1 identity check failed, 2 input validation error,
// 64 usage error, 70 internal error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "dsbranch/dsbranch.hpp"

namespace {

using namespace dsbranch;

constexpr int kExitPass = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct RunConfig {
  std::string group;
  std::string root_data;
  std::string lambda;
  std::string cutoff;
  std::string format = "tsv";
  std::string out;
  unsigned jobs = 1;
  std::string xi;
  std::vector<std::string> weights;
  std::string fault;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string name;
  RootDatum datum;
  std::vector<std::size_t> compact_positive;
  std::vector<Weight> sample_lambdas;
};

Source load_source(const RunConfig& cfg) {
  if (cfg.group.empty() == cfg.root_data.empty()) throw UsageError("give exactly one of --group or --root-data");
  if (!cfg.group.empty()) {
    auto e = catalog_entry(cfg.group);
    return {e.name, e.datum, e.compact_positive, e.sample_lambdas};
  }
  auto f = load_root_data(cfg.root_data);
  return {f.name.empty() ? cfg.root_data : f.name, f.datum, f.compact_positive, f.sample_lambdas};
}

Rational require_cutoff(const RunConfig& cfg) {
  if (cfg.cutoff.empty()) throw UsageError("--cutoff is required");
  Rational c = parse_rational(cfg.cutoff);
  if (c <= 0) throw UsageError("--cutoff must be positive");
  return c;
}

std::vector<Weight> lambdas_for(const RunConfig& cfg, const Source& src, bool allow_samples) {
  if (!cfg.lambda.empty()) return {parse_weight_csv(cfg.lambda)};
  if (allow_samples && !src.sample_lambdas.empty()) return src.sample_lambdas;
  throw UsageError("--lambda is required");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + cfg.out + "'");
  f << text;
}

int cmd_table(const RunConfig& cfg) {
  auto src = load_source(cfg);
  Rational cutoff = require_cutoff(cfg);
  auto lambda = lambdas_for(cfg, src, false).front();
  auto param = validate_hc_parameter(src.datum, src.compact_positive, lambda);
  auto table = branching_table(param, cutoff, {cfg.jobs, nullptr});
  if (cfg.format == "json") {
    Json j = to_json(table);
    j["group"] = src.name;
    emit(cfg, j.dump(2) + "\n");
  } else {
    emit(cfg, to_tsv(table));
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  auto src = load_source(cfg);
  Rational cutoff = require_cutoff(cfg);
  Json runs = Json::array();
  bool pass = true;
  for (const auto& lambda : lambdas_for(cfg, src, true)) {
    auto param = validate_hc_parameter(src.datum, src.compact_positive, lambda);
    auto partitions = make_partition_table(param);
    if (!cfg.fault.empty()) partitions->inject_fault(parse_weight_csv(cfg.fault), 1);
    auto report = verify_identities(param, cutoff, {cfg.jobs, partitions.get()});
    auto vanishing = vanishing_report(param, report.table);
    for (const auto& a : vanishing.anomalies) {
      Json w{{"warning", "VanishingAnomaly"},
             {"lambda", to_json(lambda)},
             {"mu", to_json(a.mu)},
             {"multiplicity", a.multiplicity},
             {"classification", std::string(cone_class_name(a.classification))}};
      std::cerr << w.dump() << "\n";
    }
    pass = pass && report.pass;
    Json run = to_json(report);
    run["lambda"] = to_json(lambda);
    run["vanishing"] = to_json(vanishing);
    runs.push_back(std::move(run));
  }
  Json out{{"group", src.name}, {"cutoff", format_rational(cutoff)}, {"runs", runs}, {"status", pass ? "pass" : "fail"}};
  emit(cfg, out.dump(2) + "\n");
  return pass ? kExitPass : kExitIdentityFailure;
}

int cmd_cone(const RunConfig& cfg) {
  auto src = load_source(cfg);
  if (cfg.xi.empty()) throw UsageError("--xi is required");
  auto lambda = lambdas_for(cfg, src, false).front();
  auto param = validate_hc_parameter(src.datum, src.compact_positive, lambda);
  auto cone = moment_cone(param);
  Weight xi = parse_weight_csv(cfg.xi);
  if (xi.rank() != lambda.rank()) throw Error(ErrorKind::DimensionMismatch, "xi has wrong length");
  auto cls = cone_membership(cone, xi);
  if (cfg.format == "json") {
    Json j{{"apex", to_json(lambda)}, {"xi", to_json(xi)}, {"classification", std::string(cone_class_name(cls))}};
    emit(cfg, j.dump(2) + "\n");
  } else {
    emit(cfg, std::string(cone_class_name(cls)) + "\n");
  }
  return kExitPass;
}

int cmd_hol(const RunConfig& cfg) {
  auto src = load_source(cfg);
  if (cfg.weights.empty()) throw UsageError("give at least one --weight");
  auto k = make_compact_system(src.datum, src.compact_positive);
  std::ostringstream text;
  Json rows = Json::array();
  for (const auto& s : cfg.weights) {
    Weight mu = parse_weight_csv(s);
    if (mu.rank() != src.datum.rank()) throw Error(ErrorKind::DimensionMismatch, "weight " + s + " has wrong length");
    if (!mu.is_integral()) throw Error(ErrorKind::NotIntegral, mu.to_string() + " is not integral");
    auto h = hol_monomial(k, mu);
    if (!h) {
      text << "0\n";
      rows.push_back({{"weight", to_json(mu)}, {"result", nullptr}});
    } else {
      text << (h->sign > 0 ? "+ " : "- ") << h->highest_weight.to_csv() << "\n";
      rows.push_back({{"weight", to_json(mu)}, {"sign", h->sign}, {"highest_weight", to_json(h->highest_weight)}});
    }
  }
  emit(cfg, cfg.format == "json" ? rows.dump(2) + "\n" : text.str());
  return kExitPass;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_cutoff) {
  sub->add_option("--group", cfg.group, "built-in root data: su11, su21, sp4r, so41");
  sub->add_option("--root-data", cfg.root_data, "path to a root-data JSON file");
  sub->add_option("--lambda", cfg.lambda, "Harish-Chandra parameter, comma separated rationals (p/q)");
  if (needs_cutoff) sub->add_option("--cutoff", cfg.cutoff, "grade bound on (mu + rho_c, lambda), rational");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"tsv", "json"}));
  sub->add_option("--out", cfg.out, "write output to this path instead of stdout");
  sub->add_option("--jobs", cfg.jobs, "worker threads for table construction (default: $DSBRANCH_JOBS or 1)")
      ->check(CLI::PositiveNumber);
}

bool jobs_given(const CLI::App& app) {
  for (const auto* sub : app.get_subcommands())
    if (sub->count("--jobs")) return true;
  return false;
}

unsigned jobs_from_env() {
  const char* env = std::getenv("DSBRANCH_JOBS");
  if (!env || !*env) return 1;
  static const std::regex positive("^[1-9][0-9]{0,3}$");
  if (!std::regex_match(env, positive)) throw UsageError("DSBRANCH_JOBS must be a positive integer");
  return static_cast<unsigned>(std::stoul(env));
}

int report_error(const Error& e) {
  Json j{{"error", std::string(error_name(e.kind()))}, {"code", e.code()}, {"message", e.detail()}};
  std::cerr << j.dump() << "\n";
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete series K-type multiplicities via Blattner sums and holomorphic induction"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* table = app.add_subcommand("table", "compute the branching table m_mu(lambda)");
  add_common(table, cfg, true);
  auto* verify = app.add_subcommand("verify", "cross-check Blattner sums, Hol expansion and RR sign");
  add_common(verify, cfg, true);
  verify->add_option("--inject-partition-fault", cfg.fault)->group("");
  auto* cone = app.add_subcommand("cone", "classify xi against lambda + cone(R_n+)");
  add_common(cone, cfg, false);
  cone->add_option("--xi", cfg.xi, "query weight, comma separated rationals");
  auto* hol = app.add_subcommand("hol", "holomorphic induction of monomials t^mu");
  add_common(hol, cfg, false);
  hol->add_option("--weight", cfg.weights, "integral weight, comma separated; repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!jobs_given(app)) cfg.jobs = jobs_from_env();
    if (table->parsed()) return cmd_table(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (cone->parsed()) return cmd_cone(cfg);
    if (hol->parsed()) return cmd_hol(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    Json j{{"error", "Internal"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
