#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rvvport {

namespace fs = std::filesystem;

inline constexpr const char* kManifestFile = "manifest.txt";

/// One translation case. Paths are absolute (resolved against the case dir).
struct CaseManifest {
  std::string case_id;
  std::string source_arch;  // only "neon"
  fs::path case_dir;
  fs::path source_path;
  fs::path functional_test_path;
  fs::path perf_test_path;
  fs::path native_reference_path;
  std::string function_signature;
};

struct CaseLoadError {
  fs::path case_dir;
  std::string message;
};

struct CorpusListing {
  std::vector<CaseManifest> cases;  // sorted by case_id
  std::vector<CaseLoadError> errors;
};

/// Reads `<dir>/<case>/manifest.txt` for every case subdirectory. Broken cases
/// are collected in `errors`; throws CorpusError when the directory is
/// missing or holds no case directories at all.
CorpusListing load_corpus(const fs::path& corpus_dir);

/// Parses one manifest file; throws CorpusError.
CaseManifest read_manifest(const fs::path& manifest_file);

struct ValidatedCase {
  CaseManifest manifest;
  std::string source_text;
  std::string test_text;
  std::string bench_text;
  std::string native_text;
  std::vector<std::string> warnings;
};

/// Reads the four files and checks the signature occurs verbatim in the
/// source. A source with no Neon-style intrinsic call only warns.
ValidatedCase validate_case(const CaseManifest& manifest);

/// Whether the text calls something shaped like a Neon intrinsic
/// (`vaddq_f32`, `vld1_u8`, `vdupq_n_s16`, ...).
bool mentions_neon_intrinsic(const std::string& source);

std::string read_text_file(const fs::path& file);

}  // namespace rvvport
