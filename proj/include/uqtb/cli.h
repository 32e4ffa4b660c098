#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "uqtb/bench.h"

namespace uqtb::cli {

enum ExitCode : int { ok = 0, usage = 2, numerical = 3, io = 4 };

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CliInvocation {
  std::string subcommand; // profile, converge-variance, converge-quantile,
                          // mass or eval
  std::optional<std::filesystem::path> config_path;
  std::map<std::string, std::string> overrides; // settings key -> raw flag value
  std::filesystem::path output_dir;
};

//! Parses a command line (argv[0] is the program name). Unknown flags,
//! missing or extra subcommands and malformed values raise UsageError.
CliInvocation parse_args(const std::vector<std::string>& argv);
CliInvocation parse_args(int argc, const char* const* argv);

//! Flat settings for the subcommand: documented defaults, then the config
//! file, then flags. Throws UsageError on unknown keys or bad values.
nlohmann::json resolve_settings(const CliInvocation& inv);

//! Study described by resolved settings (not used by eval).
StudyConfig study_config(const std::string& subcommand,
                         const nlohmann::json& settings);

//! Executes the invocation. Studies write <subcommand>_<source>.csv and a
//! .json manifest into output_dir; eval prints one flux value to `out`.
int run(const CliInvocation& inv, std::ostream& out, std::ostream& err);

//! parse_args + run with usage errors reported on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

} // namespace uqtb::cli
