// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_TOOLS_RUN_CONFIG_H_
#define CDRUD_TOOLS_RUN_CONFIG_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cdrud::cli {

// One `key=value` entry of a run config. Array values ([a, b]) become
// several values.
struct ConfigEntry {
  std::string key;
  std::vector<std::string> values;
};

// Flat key=value text: '#' comments, blank lines ignored, values optionally
// double-quoted, arrays written as [v1, v2]. Throws FormatError.
std::vector<ConfigEntry> ParseRunConfig(std::string_view text);

// Long option names ("out-wav") spelled in a command line.
std::set<std::string> ExplicitOptions(const std::vector<std::string>& args);

// Rewrites `args` (subcommand arguments, without the program name) so that
// entries from every --config file come first, skipping keys that the
// command line sets itself.
std::vector<std::string> ExpandConfigFiles(const std::vector<std::string>& args);

}  // namespace cdrud::cli

#endif  // CDRUD_TOOLS_RUN_CONFIG_H_
