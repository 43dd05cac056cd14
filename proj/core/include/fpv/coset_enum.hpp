#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpv/presentation.hpp"

namespace fpv {

enum class Strategy { HLT, Felsch, HLTLookahead };

struct EnumLimits {
  // Cap on table rows at any moment, dead rows included.
  std::int64_t max_cosets = 4'000'000;
  std::optional<double> max_seconds;
};

struct EnumStats {
  std::int64_t cosets_defined = 0;
  std::int64_t cosets_dead = 0;
  std::int64_t coincidences_processed = 0;
  double elapsed_seconds = 0.0;
};

// Completed transition table of the right action of a group on the cosets
// of a subgroup. Rows are 1..n_live; columns alternate g, g^-1 per
// generator, in presentation order. Entry 0 never appears in a complete
// table.
struct CosetTable {
  std::string presentation_name;
  int n_gens = 0;
  std::int32_t n_live = 0;
  SubgroupSpec subgroup;
  std::vector<std::int32_t> rows;  // (n_live + 1) * 2*n_gens, row 0 unused

  int n_cols() const { return 2 * n_gens; }
  std::int32_t at(std::int32_t coset, int col) const {
    return rows[static_cast<std::size_t>(coset) * n_cols() + col];
  }
  // Column layout: generator g acts through column 2g, its inverse
  // through column 2g+1.
  static int col(int gen, int sign) { return 2 * gen + (sign < 0 ? 1 : 0); }
};

struct EnumOutcome {
  bool complete = false;
  std::optional<CosetTable> table;
  EnumStats stats;

  const CosetTable& require_table() const;
};

// Todd-Coxeter coset enumeration. Deterministic for a fixed
// (presentation, subgroup, strategy); the returned table is standardized.
// Hitting the limits yields an incomplete outcome, not an error.
EnumOutcome enumerate(const Presentation& p, const SubgroupSpec& h,
                      Strategy strategy = Strategy::HLTLookahead,
                      const EnumLimits& limits = {});

// Index of the subgroup: the number of live cosets.
std::int64_t index(const CosetTable& t);

// Canonical renumbering by breadth-first discovery from coset 1, scanning
// columns in layout order. Idempotent; identical for every strategy.
CosetTable standardize(const CosetTable& t);

// Post-hoc audit, independent of the enumerator's bookkeeping: every
// relator closes at every coset, every column is a bijection, and every
// subgroup generator word fixes coset 1.
bool verify_table(const CosetTable& t, const Presentation& p,
                  const SubgroupSpec& h);

// Text dump: "cosets <n> gens <k>" then one line per coset with 2k entries.
std::string dump_table(const CosetTable& t);
CosetTable parse_table_dump(const std::string& text);

}  // namespace fpv
