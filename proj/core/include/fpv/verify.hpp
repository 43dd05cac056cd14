#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpv/bsgs.hpp"
#include "fpv/claims.hpp"

namespace fpv {

inline constexpr const char* kToolkitVersion = "fpverify 0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 0x5eed0fa7c0e75ULL;

enum class Outcome { Pass, Fail, Indeterminate };

std::string to_string(Outcome o);

struct InstanceResult {
  std::string instance;
  Outcome outcome = Outcome::Indeterminate;
  std::string actual;
  std::string witness;
  EnumStats stats;
};

struct ClaimResult {
  std::string id;
  ClaimKind kind = ClaimKind::Order;
  Outcome outcome = Outcome::Indeterminate;
  std::string expected;
  std::string actual;   // single-instance value, or a sweep summary
  std::string reason;   // first offending instance for Fail/Indeterminate
  std::vector<std::string> witnesses;
  int instances = 0;
  EnumStats stats;      // summed over instances
  double elapsed_seconds = 0;
};

struct Report {
  std::uint64_t corpus_hash = 0;
  std::string toolkit_version;
  std::uint64_t seed = 0;
  std::vector<ClaimResult> results;  // sorted by claim id
  int n_pass = 0;
  int n_fail = 0;
  int n_indeterminate = 0;
  double elapsed_seconds = 0;
};

struct RunOptions {
  int parallelism = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string only;  // '*'-glob over claim ids; empty selects everything
  Strategy default_strategy = Strategy::HLTLookahead;
  EnumLimits default_limits;
};

// Evaluates one instance of a claim. Exceeding enumeration limits yields
// Indeterminate, never Pass.
InstanceResult run_instance(const Presentation& instance, const Claim& c,
                            const RunOptions& options);

// Evaluates a claim; family claims pass only when every selected instance
// passes. Deterministic for a fixed seed.
ClaimResult run_claim(const Corpus& corpus, const Claim& c,
                      const RunOptions& options);

// Runs every selected claim, farming instances out to `parallelism`
// workers. Outcomes are independent of the parallelism.
Report run_corpus(const Corpus& corpus, const RunOptions& options);

std::string render_text_report(const Report& r);
std::string render_json_report(const Report& r);

// 0: all pass; 1: some claim failed; 2: indeterminate outcomes only.
int report_exit_code(const Report& r);

bool glob_match(const std::string& pattern, const std::string& s);

}  // namespace fpv
