#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epr/cycle_states.hpp"
#include "epr/instance.hpp"

namespace epr::cli {

// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kSynthesisError = 3,
};

struct RunConfig {
  std::string command;
  std::string instance_path;
  std::string format;  // empty: infer from the file extension
  std::string algorithm = "main";
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::string output_path;
  std::string data_dir;  // empty: $EPR_DATA_DIR or the built-in default
  bool audit_all_pairs = false;
  bool qmc = false;
  bool exact = false;
  bool json = false;
  std::vector<int> ks;
  std::string synth_kind;
  // gen / bench
  std::string family;
  std::vector<int> sizes;
  int size_b = 0;
  double p = 0.5;
  std::string weights = "unit";
  int count = 1;
  std::string corpus_dir;
  int jobs = 1;
};

// Runs `epr <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::string instance;
  std::optional<WeightedGraph> graph;  // empty when the file failed to load
  std::string load_error;
};

// CSV with header; one row per instance, failures recorded in the error column.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, const CycleStateLibrary& library,
                     int jobs, bool with_timing = true);

// Every inequality the approximation argument relies on, with margins.
VerificationReport verification_suite(const std::filesystem::path& data_dir, const std::vector<int>& ks,
                                      std::uint64_t seed, std::ostream* log = nullptr);

}  // namespace epr::cli
