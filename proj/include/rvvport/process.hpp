#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>

namespace rvvport {

struct ProcessOutcome {
  int exit_code = -1;  // -1 when timed out or killed by a signal
  bool timed_out = false;
  std::chrono::milliseconds elapsed{0};
};

/// Runs `command` through /bin/sh -c in `cwd`, writing stdout/stderr to the
/// given files. The whole process group is killed after `timeout`.
ProcessOutcome run_shell(const std::string& command, const std::filesystem::path& cwd,
                         const std::filesystem::path& stdout_file, const std::filesystem::path& stderr_file,
                         std::chrono::seconds timeout);

/// Single-quotes a word for /bin/sh.
std::string shell_quote(const std::string& word);

/// Replaces `{name}` placeholders. Throws ConfigError on a placeholder not
/// in `values` or an unterminated brace.
std::string expand_template(const std::string& tmpl, const std::map<std::string, std::string>& values);

/// Absolute path of an executable (looked up on PATH when it has no '/'),
/// or empty when not found.
std::filesystem::path find_executable(const std::string& name);

/// Last `max_bytes` bytes of a file; empty when missing.
std::string file_tail(const std::filesystem::path& file, std::size_t max_bytes);

}  // namespace rvvport
