#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fpv/word.hpp"

namespace fpv {

// AST for the relator notation. Powers may carry a named parameter instead
// of a literal exponent; those come from family files and are substituted
// at instantiation time.
struct WordExpr {
  enum class Kind { Symbol, Product, Power, Conjugate, Commutator };

  Kind kind = Kind::Product;
  std::string symbol;            // Kind::Symbol
  std::vector<WordExpr> args;    // children (Product: n, Power: 1, Conjugate/Commutator: 2)
  long long exponent = 0;        // Kind::Power with a literal exponent
  std::string exponent_param;    // Kind::Power with a symbolic exponent

  static WordExpr make_symbol(std::string name);
  static WordExpr make_product(std::vector<WordExpr> factors);
  static WordExpr make_power(WordExpr base, long long e);
  static WordExpr make_power_param(WordExpr base, std::string param);
  static WordExpr make_conjugate(WordExpr base, WordExpr by);
  static WordExpr make_commutator(WordExpr lhs, WordExpr rhs);

  bool operator==(const WordExpr&) const = default;
};

// Parses the relator notation:
//   expr   := term+            juxtaposition is product, '*' optional
//   term   := atom ('^' suffix)*
//   suffix := signed integer (power) | atom (conjugation a^b = b^-1 a b)
//   atom   := identifier | '(' expr ')' | '[' expr ',' expr ']'
// [a,b] stands for a^-1 b^-1 a b. After '^', an identifier in `params`
// is read as a symbolic power; any other atom means conjugation.
// Every identifier must be in `known_symbols` or `params`.
WordExpr parse_expr(const std::string& text,
                    const std::set<std::string>& known_symbols,
                    const std::set<std::string>& params = {});

// Collects parameter names appearing as symbolic exponents.
void collect_params(const WordExpr& e, std::set<std::string>& out);

constexpr std::size_t kExpandLengthCap = 1u << 16;

// Unfolds an expression into a freely reduced word over generators.
// Symbols resolve first to generators, then to entries of `defs` (which may
// themselves reference other definitions; cycles are detected). Expansion
// longer than `length_cap` letters raises WordTooLong.
Word expand(const WordExpr& e, const std::map<std::string, int>& generator_ids,
            const std::map<std::string, WordExpr>& defs,
            std::size_t length_cap = kExpandLengthCap);

// Spec-surface convenience: expand over generators inferred from defs values.
Word expand(const WordExpr& e, const std::map<std::string, int>& generator_ids,
            const std::map<std::string, Word>& defs,
            std::size_t length_cap = kExpandLengthCap);

std::string to_string(const WordExpr& e);

}  // namespace fpv
