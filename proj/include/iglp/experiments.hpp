#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace iglp {

// Flat key = value configuration with [section] headers; keys are stored as
// "section.key" ("" section for leading keys).
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = auto
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  std::string gets(const std::string& key, const std::string& def) const;
  int geti(const std::string& key, int def) const;
  double getd(const std::string& key, double def) const;
  std::vector<double> getlist(const std::string& key,
                              const std::vector<double>& def) const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct ExperimentReport {
  int exit_code = 0;  // 0 ok, 2 assertion failure (report still valid)
  std::string summary_json;                                  // report.json
  std::vector<std::pair<std::string, std::string>> csv_files;  // name -> body
  std::string fixtures_json;                                 // oracle pins
};

ExperimentReport run_teuwen_verify(const ExperimentConfig& cfg);
ExperimentReport run_gfun_constants(const ExperimentConfig& cfg);
ExperimentReport run_weak11_growth(const ExperimentConfig& cfg);
ExperimentReport run_bound_sample(const ExperimentConfig& cfg);
ExperimentReport run_spectral_identities(const ExperimentConfig& cfg);

// dispatch by CLI verb; throws config_error for unknown verbs
ExperimentReport run_experiment(const std::string& verb, const ExperimentConfig& cfg);

// deterministic chunked parallel map: fn(i) writes to preallocated slots
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

std::string format_double(double v);  // %.17g, reproducible CSV cells

}  // namespace iglp
