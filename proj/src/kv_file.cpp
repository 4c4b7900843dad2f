#include "rvvport/kv_file.hpp"

#include <fstream>
#include <sstream>

#include "rvvport/error.hpp"

namespace rvvport {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

KeyValues parse_key_values(std::string_view text, const std::string& origin) {
  KeyValues out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto where = origin + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(where + ": expected `key = \"value\"`");
    const auto key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw Error(where + ": invalid key '" + std::string(key) + "'");
    auto raw = trim(line.substr(eq + 1));

    std::string value;
    if (!raw.empty() && raw.front() == '"') {
      std::size_t i = 1;
      bool closed = false;
      for (; i < raw.size(); ++i) {
        const char c = raw[i];
        if (c == '\\' && i + 1 < raw.size()) {
          const char n = raw[++i];
          value.push_back(n == 'n' ? '\n' : n == 't' ? '\t' : n);
        } else if (c == '"') {
          closed = true;
          ++i;
          break;
        } else {
          value.push_back(c);
        }
      }
      if (!closed) throw Error(where + ": unterminated string");
      const auto rest = trim(raw.substr(i));
      if (!rest.empty() && rest.front() != '#') throw Error(where + ": trailing characters after value");
    } else {
      value = std::string(raw);
    }
    if (!out.emplace(std::string(key), std::move(value)).second) {
      throw Error(where + ": duplicate key '" + std::string(key) + "'");
    }
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str(), file.string());
}

std::string render_key_values(const KeyValues& values) {
  std::string out;
  for (const auto& [key, value] : values) {
    out += key;
    out += " = \"";
    for (char c : value) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
      }
    }
    out += "\"\n";
  }
  return out;
}

}  // namespace rvvport
