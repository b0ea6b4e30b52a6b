#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "q8curves/enumeration.hpp"

namespace q8curves::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMismatch = 2;

enum class Format { Csv, Json };
enum class VerifyLevel { None, Spot, Full };

struct SweepConfig {
  u64 from = 7;
  u64 to = 200;  // exclusive
  unsigned threads = 0;
  Format format = Format::Csv;
  VerifyLevel verify = VerifyLevel::None;
  u64 seed = kDefaultSeed;
  std::string output_path;  // empty: standard output
  bool allow_full_above_200 = false;
  bool timing = false;
  bool quiet = false;
};

/// Fixed CSV header line (no trailing newline).
std::string csv_header();
/// One CSV row; elapsed_ms is left empty unless `timing`.
std::string csv_row(const EnumerationRecord& rec, bool timing);
/// One JSON object mirroring the CSV fields plus seed and nonresidue.
std::string json_record(const EnumerationRecord& rec, u64 nonresidue, bool timing);

/// Throws ParseError describing the first violated constraint.
void validate(const SweepConfig& cfg);

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(u64 p, const std::string& a, std::ostream& out, std::ostream& err);
int cmd_orbit(u64 p, const std::string& a, std::ostream& out, std::ostream& err);
int cmd_factor(u64 p, u64 seed, std::ostream& out, std::ostream& err);

/// Entry point shared by the q8enum binary and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace q8curves::cli
