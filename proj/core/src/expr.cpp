#include "fpv/expr.hpp"

#include <cctype>
#include <limits>

#include "fpv/errors.hpp"

namespace fpv {

WordExpr WordExpr::make_symbol(std::string name) {
  WordExpr e;
  e.kind = Kind::Symbol;
  e.symbol = std::move(name);
  return e;
}

WordExpr WordExpr::make_product(std::vector<WordExpr> factors) {
  if (factors.size() == 1) return std::move(factors.front());
  WordExpr e;
  e.kind = Kind::Product;
  e.args = std::move(factors);
  return e;
}

WordExpr WordExpr::make_power(WordExpr base, long long ex) {
  WordExpr e;
  e.kind = Kind::Power;
  e.args.push_back(std::move(base));
  e.exponent = ex;
  return e;
}

WordExpr WordExpr::make_power_param(WordExpr base, std::string param) {
  WordExpr e;
  e.kind = Kind::Power;
  e.args.push_back(std::move(base));
  e.exponent_param = std::move(param);
  return e;
}

WordExpr WordExpr::make_conjugate(WordExpr base, WordExpr by) {
  WordExpr e;
  e.kind = Kind::Conjugate;
  e.args.push_back(std::move(base));
  e.args.push_back(std::move(by));
  return e;
}

WordExpr WordExpr::make_commutator(WordExpr lhs, WordExpr rhs) {
  WordExpr e;
  e.kind = Kind::Commutator;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::set<std::string>& symbols,
         const std::set<std::string>& params)
      : text_(text), symbols_(symbols), params_(params) {}

  WordExpr parse() {
    skip_ws();
    if (eof()) throw SyntaxError("empty expression", 0);
    WordExpr e = parse_expr();
    skip_ws();
    if (!eof()) throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_atom_start() const {
    if (eof()) return false;
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '[';
  }

  WordExpr parse_expr() {
    std::vector<WordExpr> factors;
    factors.push_back(parse_term());
    for (;;) {
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (!at_atom_start()) throw SyntaxError("expected a factor after '*'", pos_);
      }
      if (!at_atom_start()) break;
      factors.push_back(parse_term());
    }
    return WordExpr::make_product(std::move(factors));
  }

  WordExpr parse_term() {
    WordExpr base = parse_atom();
    for (;;) {
      skip_ws();
      if (eof() || peek() != '^') break;
      ++pos_;
      skip_ws();
      if (eof()) throw SyntaxError("expected an exponent or conjugator after '^'", pos_);
      char c = peek();
      if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
        base = WordExpr::make_power(std::move(base), parse_integer());
      } else if (at_atom_start()) {
        std::size_t mark = pos_;
        WordExpr by = parse_atom();
        if (by.kind == WordExpr::Kind::Symbol && params_.count(by.symbol)) {
          base = WordExpr::make_power_param(std::move(base), by.symbol);
        } else {
          base = WordExpr::make_conjugate(std::move(base), std::move(by));
          (void)mark;
        }
      } else {
        throw SyntaxError("expected an exponent or conjugator after '^'", pos_);
      }
    }
    return base;
  }

  WordExpr parse_atom() {
    skip_ws();
    if (eof()) throw SyntaxError("expected an atom", pos_);
    char c = peek();
    if (c == '(') {
      ++pos_;
      WordExpr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      WordExpr lhs = parse_expr();
      expect(',');
      WordExpr rhs = parse_expr();
      expect(']');
      return WordExpr::make_commutator(std::move(lhs), std::move(rhs));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())))) ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (!symbols_.count(name) && !params_.count(name)) throw UnknownSymbol(name);
      return WordExpr::make_symbol(std::move(name));
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  long long parse_integer() {
    std::size_t start = pos_;
    long long sign = 1;
    if (peek() == '-' || peek() == '+') {
      if (peek() == '-') sign = -1;
      ++pos_;
    }
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw SyntaxError("expected digits in exponent", pos_);
    unsigned long long mag = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      mag = mag * 10 + static_cast<unsigned long long>(peek() - '0');
      if (mag > static_cast<unsigned long long>(std::numeric_limits<std::int32_t>::max()))
        throw SyntaxError("exponent out of range", start);
      ++pos_;
    }
    return sign * static_cast<long long>(mag);
  }

  void expect(char c) {
    skip_ws();
    if (eof() || peek() != c)
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  const std::string& text_;
  const std::set<std::string>& symbols_;
  const std::set<std::string>& params_;
  std::size_t pos_ = 0;
};

void append_reduced(std::vector<Letter>& out, Letter l, std::size_t cap) {
  if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
    out.pop_back();
  } else {
    if (out.size() >= cap) throw WordTooLong(cap);
    out.push_back(l);
  }
}

void append_word(std::vector<Letter>& out, const Word& w, bool inverted,
                 std::size_t cap) {
  if (!inverted) {
    for (Letter l : w.letters) append_reduced(out, l, cap);
  } else {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      append_reduced(out, inverse(*it), cap);
  }
}

struct Expander {
  const std::map<std::string, int>& gens;
  const std::map<std::string, WordExpr>& defs;
  std::size_t cap;
  std::set<std::string> visiting;
  std::map<std::string, Word> memo;

  Word resolve_symbol(const std::string& name) {
    if (auto g = gens.find(name); g != gens.end()) {
      return Word({Letter{static_cast<std::uint16_t>(g->second), 1}});
    }
    if (auto m = memo.find(name); m != memo.end()) return m->second;
    auto d = defs.find(name);
    if (d == defs.end()) throw UnknownSymbol(name);
    if (!visiting.insert(name).second) throw CyclicDefinition(name);
    Word w = run(d->second);
    visiting.erase(name);
    memo.emplace(name, w);
    return w;
  }

  Word run(const WordExpr& e) {
    switch (e.kind) {
      case WordExpr::Kind::Symbol:
        return resolve_symbol(e.symbol);
      case WordExpr::Kind::Product: {
        std::vector<Letter> out;
        for (const WordExpr& f : e.args) append_word(out, run(f), false, cap);
        return Word(std::move(out));
      }
      case WordExpr::Kind::Power: {
        if (!e.exponent_param.empty())
          throw MissingParameter(e.exponent_param);
        Word base = run(e.args[0]);
        long long n = e.exponent;
        bool inv = n < 0;
        if (inv) n = -n;
        std::vector<Letter> out;
        for (long long i = 0; i < n; ++i) append_word(out, base, inv, cap);
        return Word(std::move(out));
      }
      case WordExpr::Kind::Conjugate: {
        Word base = run(e.args[0]);
        Word by = run(e.args[1]);
        std::vector<Letter> out;
        append_word(out, by, true, cap);
        append_word(out, base, false, cap);
        append_word(out, by, false, cap);
        return Word(std::move(out));
      }
      case WordExpr::Kind::Commutator: {
        Word a = run(e.args[0]);
        Word b = run(e.args[1]);
        std::vector<Letter> out;
        append_word(out, a, true, cap);
        append_word(out, b, true, cap);
        append_word(out, a, false, cap);
        append_word(out, b, false, cap);
        return Word(std::move(out));
      }
    }
    throw Error("corrupt expression node");
  }
};

}  // namespace

WordExpr parse_expr(const std::string& text,
                    const std::set<std::string>& known_symbols,
                    const std::set<std::string>& params) {
  return Parser(text, known_symbols, params).parse();
}

void collect_params(const WordExpr& e, std::set<std::string>& out) {
  if (e.kind == WordExpr::Kind::Power && !e.exponent_param.empty())
    out.insert(e.exponent_param);
  for (const WordExpr& a : e.args) collect_params(a, out);
}

Word expand(const WordExpr& e, const std::map<std::string, int>& generator_ids,
            const std::map<std::string, WordExpr>& defs, std::size_t length_cap) {
  Expander ex{generator_ids, defs, length_cap, {}, {}};
  return ex.run(e);
}

Word expand(const WordExpr& e, const std::map<std::string, int>& generator_ids,
            const std::map<std::string, Word>& defs, std::size_t length_cap) {
  std::map<std::string, WordExpr> def_exprs;
  std::map<std::string, Word> memo;
  Expander ex{generator_ids, def_exprs, length_cap, {}, {}};
  for (const auto& [name, w] : defs) ex.memo.emplace(name, w);
  return ex.run(e);
}

std::string to_string(const WordExpr& e) {
  switch (e.kind) {
    case WordExpr::Kind::Symbol:
      return e.symbol;
    case WordExpr::Kind::Product: {
      std::string out;
      for (const WordExpr& a : e.args) {
        if (!out.empty()) out += ' ';
        bool wrap = a.kind == WordExpr::Kind::Product;
        out += wrap ? "(" + to_string(a) + ")" : to_string(a);
      }
      return out;
    }
    case WordExpr::Kind::Power: {
      const WordExpr& b = e.args[0];
      bool wrap = b.kind != WordExpr::Kind::Symbol &&
                  b.kind != WordExpr::Kind::Commutator;
      std::string base = wrap ? "(" + to_string(b) + ")" : to_string(b);
      std::string ex = e.exponent_param.empty() ? std::to_string(e.exponent)
                                                : e.exponent_param;
      return base + "^" + ex;
    }
    case WordExpr::Kind::Conjugate: {
      const WordExpr& b = e.args[0];
      const WordExpr& by = e.args[1];
      bool wrap_b = b.kind != WordExpr::Kind::Symbol &&
                    b.kind != WordExpr::Kind::Commutator;
      bool wrap_by = by.kind != WordExpr::Kind::Symbol;
      std::string lhs = wrap_b ? "(" + to_string(b) + ")" : to_string(b);
      std::string rhs = wrap_by ? "(" + to_string(by) + ")" : to_string(by);
      return lhs + "^" + rhs;
    }
    case WordExpr::Kind::Commutator:
      return "[" + to_string(e.args[0]) + ", " + to_string(e.args[1]) + "]";
  }
  return {};
}

}  // namespace fpv
