#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace rvvport {

/// Flat `key = "value"` text used by case manifests and run configs.
/// Blank lines and lines starting with '#' are ignored. Values may be quoted
/// (with \" and \\ escapes) or bare; bare values are trimmed.
using KeyValues = std::map<std::string, std::string>;

/// Throws Error naming the offending line on malformed input or duplicate keys.
KeyValues parse_key_values(std::string_view text, const std::string& origin = "<text>");

KeyValues read_key_values(const std::filesystem::path& file);

/// Serializes with every value quoted; parse_key_values(render_key_values(kv)) == kv.
std::string render_key_values(const KeyValues& values);

}  // namespace rvvport
