#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpv/expr.hpp"
#include "fpv/word.hpp"

namespace fpv {

// A finite presentation. Generator order is fixed: it determines coset
// table column order and standardization. Relators are stored freely and
// cyclically reduced, deduplicated up to rotation and inversion, and sorted
// by ascending length; `relator_sources` keeps the notation as written.
struct Presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, Word>> defs;  // ordered, acyclic
  std::vector<Word> relators;
  std::vector<std::string> relator_sources;

  int gen_index(const std::string& gen) const;
  std::map<std::string, int> generator_ids() const;

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.name == b.name && a.generators == b.generators &&
           a.defs == b.defs && a.relators == b.relators;
  }
};

// Subgroup given by generator words; empty list means the trivial subgroup.
struct SubgroupSpec {
  std::vector<Word> generator_words;

  friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;
};

struct ParamSpec {
  std::string name;
  std::vector<long long> values;
};

// A presentation template whose relators may use declared parameter names
// as exponents.
struct FamilySpec {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, WordExpr>> defs;
  std::vector<WordExpr> relator_exprs;
  std::vector<std::string> relator_sources;
  std::vector<ParamSpec> parameters;
};

constexpr std::size_t kFamilyCap = 1u << 20;

// Normalizes a relator list: free+cyclic reduction, drop empties and
// duplicates (up to rotation and inversion), sort ascending by length.
std::vector<Word> preprocess_relators(std::vector<Word> relators,
                                      std::vector<std::string>* sources = nullptr);

// Substitutes parameter values (each must lie in its declared range) and
// expands the template; the result's name carries the value tuple.
Presentation instantiate(const FamilySpec& f,
                         const std::map<std::string, long long>& params);

// All instances in lexicographic order over the declared parameter ranges.
std::vector<std::pair<std::vector<long long>, Presentation>> expand_family(
    const FamilySpec& f, std::size_t cap = kFamilyCap);

std::size_t family_size(const FamilySpec& f);

// Presentation of the quotient by the normal closure of `extra`: same
// generators, relators extended and re-normalized.
Presentation quotient_by(const Presentation& p, const std::vector<Word>& extra);

// Line-oriented text format:
//   group <name>
//   gens <id> <id> ...
//   param <name> in {v1, v2, ...}
//   def <id> = <expr>
//   rel <expr>
// '#' starts a comment. A file with no param lines is a plain presentation.
FamilySpec parse_family_text(const std::string& text);
Presentation parse_presentation_text(const std::string& text);

// Parses an expression over the presentation's generators and definitions
// into a freely reduced word.
Word parse_word(const Presentation& p, const std::string& text);
SubgroupSpec parse_subgroup(const Presentation& p,
                            const std::vector<std::string>& words);

std::string to_text(const Presentation& p);

}  // namespace fpv
