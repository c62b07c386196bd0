// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "run_config.h"

#include "cdrud/common.h"
#include "cdrud/io_util.h"

namespace cdrud::cli {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string Unquote(std::string_view v, std::size_t line) {
  v = Trim(v);
  if (v.size() < 2 || v.front() != '"') return std::string(v);
  if (v.back() != '"') throw FormatError("config line " + std::to_string(line) + ": unterminated string");
  std::string out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] == '\\' && i + 2 < v.size()) ++i;
    out.push_back(v[i]);
  }
  return out;
}

// Splits on commas outside double quotes.
std::vector<std::string> SplitArray(std::string_view body, std::size_t line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i < body.size() && body[i] == '"' && (i == 0 || body[i - 1] != '\\')) quoted = !quoted;
    if (i == body.size() || (body[i] == ',' && !quoted)) {
      const std::string_view item = Trim(body.substr(start, i - start));
      if (!item.empty()) out.push_back(Unquote(item, line));
      start = i + 1;
    }
  }
  if (quoted) throw FormatError("config line " + std::to_string(line) + ": unterminated string");
  return out;
}

}  // namespace

std::vector<ConfigEntry> ParseRunConfig(std::string_view text) {
  std::vector<ConfigEntry> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    ConfigEntry entry;
    entry.key = std::string(Trim(line.substr(0, eq)));
    if (entry.key.empty()) throw FormatError("config line " + std::to_string(line_no) + ": empty key");
    const std::string_view value = Trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') throw FormatError("config line " + std::to_string(line_no) + ": unterminated array");
      entry.values = SplitArray(value.substr(1, value.size() - 2), line_no);
    } else {
      entry.values.push_back(Unquote(value, line_no));
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::set<std::string> ExplicitOptions(const std::vector<std::string>& args) {
  std::set<std::string> out;
  for (const std::string& a : args) {
    if (a.size() > 2 && a.compare(0, 2, "--") == 0) out.insert(a.substr(2, a.find('=') - 2));
  }
  return out;
}

std::vector<std::string> ExpandConfigFiles(const std::vector<std::string>& args) {
  std::vector<std::string> files;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      files.push_back(args[i + 1]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      files.push_back(args[i].substr(9));
    }
  }
  if (files.empty()) return args;

  const std::set<std::string> given = ExplicitOptions(args);
  std::set<std::string> injected;
  std::vector<std::string> out;
  for (const std::string& file : files) {
    for (const ConfigEntry& e : ParseRunConfig(ReadFileBytes(file))) {
      if (e.key == "config" || given.count(e.key) != 0) continue;
      // A later file replaces an earlier one's values.
      if (injected.count(e.key) != 0) {
        for (auto it = out.begin(); it != out.end();) {
          if (*it == "--" + e.key || it->rfind("--" + e.key + "=", 0) == 0) {
            it = out.erase(it);
            while (it != out.end() && it->rfind("--", 0) != 0) it = out.erase(it);
          } else {
            ++it;
          }
        }
      }
      injected.insert(e.key);
      if (e.values.empty() || (e.values.size() == 1 && e.values.front().empty())) continue;
      if (e.values.size() == 1) {
        out.push_back("--" + e.key + "=" + e.values.front());
      } else if (!e.values.empty()) {
        out.push_back("--" + e.key);
        out.insert(out.end(), e.values.begin(), e.values.end());
      }
    }
  }
  out.insert(out.end(), args.begin(), args.end());
  return out;
}

}  // namespace cdrud::cli
