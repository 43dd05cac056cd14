#include "fpv/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "fpv/errors.hpp"

namespace fpv {

int Presentation::gen_index(const std::string& gen) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == gen) return static_cast<int>(i);
  throw UnknownSymbol(gen);
}

std::map<std::string, int> Presentation::generator_ids() const {
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < generators.size(); ++i)
    ids.emplace(generators[i], static_cast<int>(i));
  return ids;
}

std::vector<Word> preprocess_relators(std::vector<Word> relators,
                                      std::vector<std::string>* sources) {
  struct Entry {
    Word reduced;
    Word key;
    std::string source;
  };
  std::vector<Entry> entries;
  entries.reserve(relators.size());
  for (std::size_t i = 0; i < relators.size(); ++i) {
    Word r = cyclic_reduce(free_reduce(relators[i]));
    if (r.empty()) continue;
    Entry e{r, cyclic_canonical(r), sources ? (*sources)[i] : std::string()};
    bool dup = false;
    for (const Entry& seen : entries) {
      if (seen.key == e.key) {
        dup = true;
        break;
      }
    }
    if (!dup) entries.push_back(std::move(e));
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.reduced.size() < b.reduced.size();
                   });
  std::vector<Word> out;
  out.reserve(entries.size());
  if (sources) sources->clear();
  for (Entry& e : entries) {
    out.push_back(std::move(e.reduced));
    if (sources) sources->push_back(std::move(e.source));
  }
  return out;
}

namespace {

std::map<std::string, WordExpr> def_map(
    const std::vector<std::pair<std::string, WordExpr>>& defs) {
  std::map<std::string, WordExpr> m;
  for (const auto& [name, e] : defs) m.emplace(name, e);
  return m;
}

// Replaces symbolic exponents by their assigned values.
WordExpr substitute(const WordExpr& e,
                    const std::map<std::string, long long>& params) {
  WordExpr out = e;
  if (out.kind == WordExpr::Kind::Power && !out.exponent_param.empty()) {
    auto it = params.find(out.exponent_param);
    if (it == params.end()) throw MissingParameter(out.exponent_param);
    out.exponent = it->second;
    out.exponent_param.clear();
  }
  for (WordExpr& a : out.args) a = substitute(a, params);
  return out;
}

}  // namespace

Presentation instantiate(const FamilySpec& f,
                         const std::map<std::string, long long>& params) {
  for (const ParamSpec& ps : f.parameters) {
    auto it = params.find(ps.name);
    if (it == params.end()) throw MissingParameter(ps.name);
    if (std::find(ps.values.begin(), ps.values.end(), it->second) ==
        ps.values.end()) {
      throw ParameterOutOfRange("parameter '" + ps.name + "' = " +
                                std::to_string(it->second) +
                                " is outside its declared range");
    }
  }
  for (const auto& [name, value] : params) {
    (void)value;
    bool declared = false;
    for (const ParamSpec& ps : f.parameters) declared |= ps.name == name;
    if (!declared)
      throw ParameterOutOfRange("'" + name + "' is not a parameter of " + f.name);
  }

  Presentation p;
  p.name = f.name;
  if (!f.parameters.empty()) {
    p.name += '(';
    for (std::size_t i = 0; i < f.parameters.size(); ++i) {
      if (i) p.name += ',';
      p.name += std::to_string(params.at(f.parameters[i].name));
    }
    p.name += ')';
  }
  p.generators = f.generators;

  auto gen_ids = [&] {
    std::map<std::string, int> ids;
    for (std::size_t i = 0; i < f.generators.size(); ++i)
      ids.emplace(f.generators[i], static_cast<int>(i));
    return ids;
  }();
  auto defs = def_map(f.defs);
  for (const auto& [name, e] : f.defs)
    p.defs.emplace_back(name, expand(e, gen_ids, defs));

  std::vector<Word> rels;
  std::vector<std::string> sources = f.relator_sources;
  for (const WordExpr& re : f.relator_exprs)
    rels.push_back(expand(substitute(re, params), gen_ids, defs));
  p.relators = preprocess_relators(std::move(rels), &sources);
  p.relator_sources = std::move(sources);
  return p;
}

std::size_t family_size(const FamilySpec& f) {
  std::size_t n = 1;
  for (const ParamSpec& ps : f.parameters) {
    if (ps.values.empty()) return 0;
    n *= ps.values.size();
  }
  return n;
}

std::vector<std::pair<std::vector<long long>, Presentation>> expand_family(
    const FamilySpec& f, std::size_t cap) {
  std::size_t total = family_size(f);
  if (total > cap)
    throw FamilyTooLarge("family " + f.name + " has " + std::to_string(total) +
                         " instances, cap is " + std::to_string(cap));
  std::vector<std::pair<std::vector<long long>, Presentation>> out;
  out.reserve(total);
  std::vector<std::size_t> idx(f.parameters.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::map<std::string, long long> params;
    std::vector<long long> tuple;
    for (std::size_t i = 0; i < f.parameters.size(); ++i) {
      long long v = f.parameters[i].values[idx[i]];
      params.emplace(f.parameters[i].name, v);
      tuple.push_back(v);
    }
    out.emplace_back(std::move(tuple), instantiate(f, params));
    for (std::size_t i = f.parameters.size(); i-- > 0;) {
      if (++idx[i] < f.parameters[i].values.size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

Presentation quotient_by(const Presentation& p, const std::vector<Word>& extra) {
  if (extra.empty()) return p;
  Presentation q = p;
  std::vector<Word> rels = p.relators;
  std::vector<std::string> sources = p.relator_sources;
  sources.resize(rels.size());
  for (const Word& w : extra) {
    rels.push_back(w);
    sources.push_back(render(w, p.generators));
  }
  q.relators = preprocess_relators(std::move(rels), &sources);
  q.relator_sources = std::move(sources);
  return q;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

// Parses "{v1, v2, ...}" written with arbitrary spacing.
std::vector<long long> parse_value_set(const std::string& text, int line_no) {
  std::vector<long long> values;
  std::string digits;
  bool open = false, closed = false;
  for (char c : text) {
    if (c == '{') {
      open = true;
    } else if (c == '}' || c == ',') {
      if (!digits.empty()) {
        values.push_back(std::stoll(digits));
        digits.clear();
      }
      if (c == '}') closed = true;
    } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw SyntaxError("bad value set on line " + std::to_string(line_no),
                        static_cast<std::size_t>(line_no));
    }
  }
  if (!open || !closed || values.empty())
    throw SyntaxError("bad value set on line " + std::to_string(line_no),
                      static_cast<std::size_t>(line_no));
  return values;
}

}  // namespace

FamilySpec parse_family_text(const std::string& text) {
  FamilySpec f;
  std::set<std::string> symbols;
  std::set<std::string> params;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    std::string rest = line.substr(line.find(kw) + kw.size());
    if (kw == "group") {
      if (toks.size() != 2)
        throw SyntaxError("expected: group <name>", static_cast<std::size_t>(line_no));
      f.name = toks[1];
    } else if (kw == "gens") {
      if (toks.size() < 2)
        throw SyntaxError("expected: gens <id>...", static_cast<std::size_t>(line_no));
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (symbols.count(toks[i]))
          throw SyntaxError("duplicate generator '" + toks[i] + "'",
                            static_cast<std::size_t>(line_no));
        f.generators.push_back(toks[i]);
        symbols.insert(toks[i]);
      }
    } else if (kw == "param") {
      // param <name> in {v1, v2, ...}
      if (toks.size() < 4 || toks[2] != "in")
        throw SyntaxError("expected: param <name> in {values}",
                          static_cast<std::size_t>(line_no));
      auto brace = rest.find('{');
      if (brace == std::string::npos)
        throw SyntaxError("expected a value set", static_cast<std::size_t>(line_no));
      ParamSpec ps{toks[1], parse_value_set(rest.substr(brace), line_no)};
      if (symbols.count(ps.name) || params.count(ps.name))
        throw SyntaxError("parameter name '" + ps.name + "' already in use",
                          static_cast<std::size_t>(line_no));
      params.insert(ps.name);
      f.parameters.push_back(std::move(ps));
    } else if (kw == "def") {
      // def <id> = <expr>
      auto eq = rest.find('=');
      if (toks.size() < 4 || eq == std::string::npos)
        throw SyntaxError("expected: def <id> = <expr>",
                          static_cast<std::size_t>(line_no));
      std::string name = toks[1];
      if (symbols.count(name) || params.count(name))
        throw SyntaxError("symbol '" + name + "' already defined",
                          static_cast<std::size_t>(line_no));
      WordExpr e = parse_expr(rest.substr(eq + 1), symbols, params);
      std::set<std::string> used;
      collect_params(e, used);
      if (!used.empty())
        throw SyntaxError("definitions may not use parameters",
                          static_cast<std::size_t>(line_no));
      f.defs.emplace_back(name, std::move(e));
      symbols.insert(name);
    } else if (kw == "rel") {
      WordExpr e = parse_expr(rest, symbols, params);
      f.relator_exprs.push_back(std::move(e));
      std::string src = rest;
      // trim
      src.erase(0, src.find_first_not_of(" \t"));
      src.erase(src.find_last_not_of(" \t") + 1);
      f.relator_sources.push_back(src);
    } else {
      throw SyntaxError("unknown directive '" + kw + "'",
                        static_cast<std::size_t>(line_no));
    }
  }
  if (f.name.empty())
    throw SyntaxError("missing 'group' line", 0);
  if (f.generators.empty())
    throw SyntaxError("missing 'gens' line", 0);
  // Parameters may only appear as exponents; the grammar guarantees that,
  // but a parameter used as a bare symbol would have parsed as one. Reject.
  for (const WordExpr& re : f.relator_exprs) {
    std::set<std::string> used;
    collect_params(re, used);
    for (const std::string& u : used) {
      bool declared = false;
      for (const ParamSpec& ps : f.parameters) declared |= ps.name == u;
      if (!declared) throw UnknownSymbol(u);
    }
  }
  return f;
}

Presentation parse_presentation_text(const std::string& text) {
  FamilySpec f = parse_family_text(text);
  if (!f.parameters.empty())
    throw SyntaxError("file declares parameters; instantiate it instead", 0);
  return instantiate(f, {});
}

Word parse_word(const Presentation& p, const std::string& text) {
  std::set<std::string> symbols(p.generators.begin(), p.generators.end());
  for (const auto& [name, w] : p.defs) {
    (void)w;
    symbols.insert(name);
  }
  WordExpr e = parse_expr(text, symbols);
  std::map<std::string, Word> defs;
  for (const auto& [name, w] : p.defs) defs.emplace(name, w);
  return expand(e, p.generator_ids(), defs);
}

SubgroupSpec parse_subgroup(const Presentation& p,
                            const std::vector<std::string>& words) {
  SubgroupSpec h;
  for (const std::string& w : words) h.generator_words.push_back(parse_word(p, w));
  return h;
}

std::string to_text(const Presentation& p) {
  std::string out = "group " + p.name + "\ngens";
  for (const std::string& g : p.generators) out += " " + g;
  out += '\n';
  for (const auto& [name, w] : p.defs)
    out += "def " + name + " = " + render(w, p.generators) + "\n";
  for (const Word& r : p.relators)
    out += "rel " + render(r, p.generators) + "\n";
  return out;
}

}  // namespace fpv
