#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "glab/scalar.hpp"

namespace glab::cli {

/// Exit codes of the glab executable.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;  ///< veronese | secant | scroll | ix-tangent | family-check
  std::size_t n = 2;
  std::size_t kmax = 1;
  std::size_t r = 1;
  Field field = Field::rationals();
  std::optional<std::size_t> trials;  ///< unset: per-command default
  std::size_t jet_trials = 200;
  std::uint64_t seed = 1;
  std::string json_path;  ///< empty: no JSON; "-": standard output
  bool unsafe_size = false;
  std::string family_path;
  std::string center_path;

  /// Throws glab::Error on out-of-range sizes.
  void validate() const;
  std::size_t trials_or(std::size_t fallback) const { return trials.value_or(fallback); }
};

struct Check {
  std::string name;
  nlohmann::json expected;  ///< null for informational measurements
  nlohmann::json observed;
  bool pass = true;
};

struct Report {
  nlohmann::json config;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();
  std::string soundness_note;  ///< set for prime-field runs
  double timing_ms = 0;

  bool pass() const;
  void add(std::string name, nlohmann::json expected, nlohmann::json observed, bool pass);
  /// Informational measurement that never fails the run.
  void note(std::string name, nlohmann::json observed);
  /// Deterministic part of the report; timing is added only when requested.
  nlohmann::json to_json(bool with_timing = true) const;
  std::string summary() const;
};

Report cmd_veronese(const RunConfig& c);
Report cmd_secant(const RunConfig& c);
Report cmd_scroll(const RunConfig& c);
Report cmd_ix_tangent(const RunConfig& c);
Report cmd_family_check(const RunConfig& c);
/// Dispatches on c.command and fills timing.
Report run(const RunConfig& c);

/// Runs the tool on a full argument vector and returns the exit code. The summary goes
/// to `out`, or to `err` when the JSON report is written to standard output.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace glab::cli
