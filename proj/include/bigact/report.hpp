#ifndef BIGACT_REPORT_HPP
#define BIGACT_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bigact/field.hpp"
#include "bigact/local.hpp"

namespace bigact::report {

using Json = nlohmann::json; // std::map objects, so dumps are key-sorted

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { json, md };

enum ExitCode : int { ok = 0, integrity_failure = 1, usage_error = 2, audit_mismatch = 3 };

struct RunConfig {
  int p = 3;
  int s = 1;
  std::vector<std::string> commands;
  std::size_t samples = 50; // random lines per cover class
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> out;
  Format format = Format::json;
  std::optional<int> threads;
  bool timings = false;

  // Extra arguments of single subcommands.
  std::string class_label;
  std::vector<int> a_coords;
};

// Throws UsageError for an invalid configuration; returns the checked parameters.
ff::Params validate(const RunConfig &cfg);

// Cache directory: the flag wins, then BIGACT_CACHE_DIR, else no cache.
std::optional<std::filesystem::path> resolve_cache_dir(const RunConfig &cfg);

std::string cache_key(const ff::Params &params);
std::filesystem::path cache_file(const std::filesystem::path &dir, const ff::Params &params);
// Loads the uniformizer from the cache or builds and stores it. `hit` reports which.
local::UniformizerData cached_uniformizer(const ff::Params &params, const ff::FieldPtr &field,
                                          const std::optional<std::filesystem::path> &dir, bool *hit = nullptr);

Json uniformizer_to_json(const local::UniformizerData &d);
local::UniformizerData uniformizer_from_json(const Json &j, const ff::Params &params, const ff::FieldPtr &field);

// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path &path, const std::string &content);

struct Outcome {
  Json report;
  int exit_code = ok;
};

Outcome run_verify(const RunConfig &cfg);
Outcome run_conductor(const RunConfig &cfg);
Outcome run_genus(const RunConfig &cfg);
Outcome run_commutators(const RunConfig &cfg);
Outcome run_prolong(const RunConfig &cfg);
Outcome run_audit(const RunConfig &cfg);

// Dispatch on cfg.commands.front().
Outcome run(const RunConfig &cfg);

std::string render(const Json &report, Format format);
std::string render_markdown(const Json &report);

} // namespace bigact::report

#endif
