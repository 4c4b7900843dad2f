#include "rvvport/process.hpp"

#include <boost/process.hpp>
#include <fstream>
#include <system_error>

#include <sys/wait.h>
#include <unistd.h>

#include "rvvport/error.hpp"

namespace bp = boost::process;

namespace rvvport {

ProcessOutcome run_shell(const std::string& command, const std::filesystem::path& cwd,
                         const std::filesystem::path& stdout_file, const std::filesystem::path& stderr_file,
                         std::chrono::seconds timeout) {
  ProcessOutcome out;
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  bp::group group;
  bp::child child("/bin/sh", "-c", command, bp::start_dir = cwd.string(), bp::std_in < bp::null,
                  bp::std_out > stdout_file.string(), bp::std_err > stderr_file.string(), group, ec);
  if (ec) throw ExecError("cannot start /bin/sh: " + ec.message());
  if (!child.wait_for(timeout, ec)) {
    out.timed_out = true;
    group.terminate(ec);
    child.wait(ec);
  } else {
    const int native = child.native_exit_code();
    out.exit_code = WIFEXITED(native) ? WEXITSTATUS(native) : -1;
  }
  out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return out;
}

std::string shell_quote(const std::string& word) {
  std::string out = "'";
  for (char c : word) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string expand_template(const std::string& tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') {
      out += tmpl[i];
      continue;
    }
    const auto close = tmpl.find('}', i);
    if (close == std::string::npos) throw ConfigError("unterminated placeholder in template: " + tmpl);
    const auto name = tmpl.substr(i + 1, close - i - 1);
    auto it = values.find(name);
    if (it == values.end()) throw ConfigError("unknown placeholder {" + name + "} in template: " + tmpl);
    out += it->second;
    i = close;
  }
  return out;
}

std::filesystem::path find_executable(const std::string& name) {
  if (name.empty()) return {};
  if (name.find('/') != std::string::npos) {
    std::error_code ec;
    const std::filesystem::path p(name);
    if (std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0) return std::filesystem::absolute(p);
    return {};
  }
  const auto found = bp::search_path(name);
  return found.empty() ? std::filesystem::path() : std::filesystem::path(found.string());
}

std::string file_tail(const std::filesystem::path& file, std::size_t max_bytes) {
  std::ifstream in(file, std::ios::binary | std::ios::ate);
  if (!in) return {};
  const auto size = static_cast<std::size_t>(in.tellg());
  const std::size_t start = size > max_bytes ? size - max_bytes : 0;
  in.seekg(static_cast<std::streamoff>(start));
  std::string data(size - start, '\0');
  in.read(data.data(), static_cast<std::streamsize>(data.size()));
  return data;
}

}  // namespace rvvport
