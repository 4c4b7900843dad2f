#include "rvvport/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "rvvport/error.hpp"
#include "rvvport/kv_file.hpp"
#include "rvvport/rvv_front.hpp"

namespace rvvport {

std::string read_text_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw CorpusError("error reading " + file.string());
  return ss.str();
}

CaseManifest read_manifest(const fs::path& manifest_file) {
  KeyValues kv;
  try {
    kv = read_key_values(manifest_file);
  } catch (const Error& e) {
    throw CorpusError(e.what());
  }
  static const char* const kKeys[] = {"id", "arch", "source", "test", "bench", "native", "signature"};
  for (const auto& [key, value] : kv) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw CorpusError(manifest_file.string() + ": unknown key '" + key + "'");
    }
  }
  for (const char* key : kKeys) {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.empty()) {
      throw CorpusError(manifest_file.string() + ": missing key '" + key + "'");
    }
  }
  if (kv["arch"] != "neon") {
    throw CorpusError(manifest_file.string() + ": unsupported arch '" + kv["arch"] + "' (expected neon)");
  }
  try {
    parse_signature(kv["signature"]);
  } catch (const ParseError& e) {
    throw CorpusError(manifest_file.string() + ": signature is not a function declarator: " + e.what());
  }

  CaseManifest m;
  m.case_dir = fs::absolute(manifest_file).parent_path().lexically_normal();
  m.case_id = kv["id"];
  m.source_arch = kv["arch"];
  m.source_path = m.case_dir / kv["source"];
  m.functional_test_path = m.case_dir / kv["test"];
  m.perf_test_path = m.case_dir / kv["bench"];
  m.native_reference_path = m.case_dir / kv["native"];
  m.function_signature = kv["signature"];
  for (const auto* p : {&m.source_path, &m.functional_test_path, &m.perf_test_path, &m.native_reference_path}) {
    std::error_code ec;
    if (!fs::is_regular_file(*p, ec)) throw CorpusError(manifest_file.string() + ": missing file " + p->string());
    std::ifstream probe(*p);
    if (!probe) throw CorpusError(manifest_file.string() + ": unreadable file " + p->string());
  }
  return m;
}

CorpusListing load_corpus(const fs::path& corpus_dir) {
  std::error_code ec;
  if (!fs::is_directory(corpus_dir, ec)) throw CorpusError("corpus directory not found: " + corpus_dir.string());

  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (!entry.is_directory()) continue;
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    dirs.push_back(entry.path());
  }
  if (dirs.empty()) throw CorpusError("no cases in " + corpus_dir.string());
  std::sort(dirs.begin(), dirs.end());

  CorpusListing listing;
  std::map<std::string, fs::path> seen;
  for (const auto& dir : dirs) {
    const auto manifest = dir / kManifestFile;
    if (!fs::exists(manifest)) {
      listing.errors.push_back({dir, std::string("missing ") + kManifestFile});
      continue;
    }
    try {
      auto m = read_manifest(manifest);
      if (auto [it, inserted] = seen.emplace(m.case_id, dir); !inserted) {
        listing.errors.push_back({dir, "duplicate case id '" + m.case_id + "' (also in " + it->second.string() + ")"});
        continue;
      }
      listing.cases.push_back(std::move(m));
    } catch (const CorpusError& e) {
      listing.errors.push_back({dir, e.what()});
    }
  }
  std::sort(listing.cases.begin(), listing.cases.end(),
            [](const CaseManifest& a, const CaseManifest& b) { return a.case_id < b.case_id; });
  return listing;
}

bool mentions_neon_intrinsic(const std::string& source) {
  static const std::regex pattern(R"(\bv[a-z0-9]+_(?:[a-z0-9]+_)*(?:s|u|f|p|bf)(?:8|16|32|64)\s*\()");
  return std::regex_search(source, pattern);
}

ValidatedCase validate_case(const CaseManifest& manifest) {
  ValidatedCase vc;
  vc.manifest = manifest;
  vc.source_text = read_text_file(manifest.source_path);
  vc.test_text = read_text_file(manifest.functional_test_path);
  vc.bench_text = read_text_file(manifest.perf_test_path);
  vc.native_text = read_text_file(manifest.native_reference_path);
  if (vc.source_text.find(manifest.function_signature) == std::string::npos) {
    throw CorpusError("case " + manifest.case_id + ": signature `" + manifest.function_signature +
                      "` not found in " + manifest.source_path.filename().string());
  }
  if (!mentions_neon_intrinsic(vc.source_text)) {
    vc.warnings.push_back("case " + manifest.case_id + ": source calls no Neon-style intrinsic");
  }
  return vc;
}

}  // namespace rvvport
