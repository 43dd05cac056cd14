#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpv/coset_enum.hpp"
#include "fpv/presentation.hpp"
#include "fpv/snf.hpp"

namespace fpv {

enum class ClaimKind {
  Index,
  IndexDivides,
  IndexIn,
  Order,
  OrderDivides,
  SpectrumEquals,
  SpectrumExcludes,
  SpectrumContains,
  AbelianInvariantsKind,
  WordOrder,
  WordsCommute,
};

std::string to_string(ClaimKind k);

// Restriction of a family sweep: an instance matches when it satisfies all
// `where` bindings and none of the `except` bindings (each binding may fix
// only a subset of the parameters).
struct ParamFilter {
  std::map<std::string, long long> where;
  std::vector<std::map<std::string, long long>> except;

  bool matches(const std::map<std::string, long long>& params) const;
};

// One verifiable assertion: a target presentation or family slice, an
// optional subgroup and quotient, a kind, and the expected value. The note
// quotes the source being checked.
struct Claim {
  std::string id;
  std::string presentation;  // exactly one of presentation/family is set
  std::string family;
  ParamFilter filter;
  std::vector<std::string> subgroup;  // generator words of the subgroup
  std::vector<std::string> quotient;  // words whose normal closure is killed
  ClaimKind kind = ClaimKind::Order;

  long long expected_int = 0;                  // Index/Order/(Divides)
  std::vector<long long> expected_set;         // IndexIn / SpectrumEquals
  long long spectrum_n = 0;                    // SpectrumExcludes/Contains
  std::vector<long long> expected_torsion;     // AbelianInvariants
  long long expected_free_rank = 0;
  std::string word, word2;                     // WordOrder / WordsCommute
  long long word_order = 0;

  std::optional<Strategy> strategy;
  std::optional<std::int64_t> max_cosets;
  std::optional<double> max_seconds;
  std::optional<unsigned long long> order_bound;
  std::vector<std::string> fallback_subgroup;  // order certification route
  int trials = 20000;                          // randomized containment search
  std::string note;
};

struct Corpus {
  std::string path;
  std::uint64_t hash = 0;  // FNV-1a of the corpus bytes
  std::map<std::string, Presentation> presentations;
  std::map<std::string, FamilySpec> families;
  std::vector<Claim> claims;
};

// Loads and validates a corpus file: presentations and families parse,
// claim targets resolve, parameters are in range, ids are unique.
Corpus load_corpus(const std::string& path);
Corpus parse_corpus(const std::string& json_text, const std::string& path = "");

// All instances a claim ranges over, in lexicographic parameter order.
std::vector<std::pair<std::string, Presentation>> claim_instances(
    const Corpus& corpus, const Claim& c,
    std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace fpv
