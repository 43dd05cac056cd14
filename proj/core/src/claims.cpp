#include "fpv/claims.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fpv/errors.hpp"

namespace fpv {

using nlohmann::json;

std::string to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::Index: return "Index";
    case ClaimKind::IndexDivides: return "IndexDivides";
    case ClaimKind::IndexIn: return "IndexIn";
    case ClaimKind::Order: return "Order";
    case ClaimKind::OrderDivides: return "OrderDivides";
    case ClaimKind::SpectrumEquals: return "SpectrumEquals";
    case ClaimKind::SpectrumExcludes: return "SpectrumExcludes";
    case ClaimKind::SpectrumContains: return "SpectrumContains";
    case ClaimKind::AbelianInvariantsKind: return "AbelianInvariants";
    case ClaimKind::WordOrder: return "WordOrder";
    case ClaimKind::WordsCommute: return "WordsCommute";
  }
  return "?";
}

bool ParamFilter::matches(const std::map<std::string, long long>& params) const {
  for (const auto& [k, v] : where) {
    auto it = params.find(k);
    if (it == params.end() || it->second != v) return false;
  }
  for (const auto& ex : except) {
    bool hit = !ex.empty();
    for (const auto& [k, v] : ex) {
      auto it = params.find(k);
      if (it == params.end() || it->second != v) {
        hit = false;
        break;
      }
    }
    if (hit) return false;
  }
  return true;
}

namespace {

ClaimKind kind_from_string(const std::string& s, const std::string& claim_id) {
  if (s == "Index") return ClaimKind::Index;
  if (s == "IndexDivides") return ClaimKind::IndexDivides;
  if (s == "IndexIn") return ClaimKind::IndexIn;
  if (s == "Order") return ClaimKind::Order;
  if (s == "OrderDivides") return ClaimKind::OrderDivides;
  if (s == "SpectrumEquals") return ClaimKind::SpectrumEquals;
  if (s == "SpectrumExcludes") return ClaimKind::SpectrumExcludes;
  if (s == "SpectrumContains") return ClaimKind::SpectrumContains;
  if (s == "AbelianInvariants") return ClaimKind::AbelianInvariantsKind;
  if (s == "WordOrder") return ClaimKind::WordOrder;
  if (s == "WordsCommute") return ClaimKind::WordsCommute;
  throw CorpusError("claim '" + claim_id + "': unknown kind '" + s + "'");
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "hlt") return Strategy::HLT;
  if (s == "felsch") return Strategy::Felsch;
  if (s == "lookahead") return Strategy::HLTLookahead;
  throw CorpusError("unknown strategy '" + s + "'");
}

std::map<std::string, long long> bindings(const json& j) {
  std::map<std::string, long long> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.emplace(it.key(), it.value().get<long long>());
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Corpus parse_corpus(const std::string& text, const std::string& path) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CorpusError("corpus is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object() || doc.value("schema", 0) != 1)
    throw CorpusError("corpus must be an object with schema: 1");

  Corpus corpus;
  corpus.path = path;
  corpus.hash = fnv1a(text);

  for (const json& jp : doc.value("presentations", json::array())) {
    Presentation p = parse_presentation_text(jp.at("text").get<std::string>());
    std::string name = jp.value("name", p.name);
    if (name != p.name)
      throw CorpusError("presentation entry name '" + name +
                        "' does not match its group line '" + p.name + "'");
    if (!corpus.presentations.emplace(name, std::move(p)).second)
      throw CorpusError("duplicate presentation '" + name + "'");
  }
  for (const json& jf : doc.value("families", json::array())) {
    FamilySpec f = parse_family_text(jf.at("text").get<std::string>());
    std::string name = jf.value("name", f.name);
    if (name != f.name)
      throw CorpusError("family entry name '" + name +
                        "' does not match its group line '" + f.name + "'");
    if (!corpus.families.emplace(name, std::move(f)).second)
      throw CorpusError("duplicate family '" + name + "'");
  }

  std::set<std::string> ids;
  for (const json& jc : doc.value("claims", json::array())) {
    Claim c;
    c.id = jc.at("id").get<std::string>();
    if (!ids.insert(c.id).second) throw DuplicateId(c.id);
    c.presentation = jc.value("presentation", "");
    c.family = jc.value("family", "");
    if (c.presentation.empty() == c.family.empty())
      throw CorpusError("claim '" + c.id +
                        "': exactly one of presentation/family required");
    if (!c.presentation.empty() && !corpus.presentations.count(c.presentation))
      throw CorpusError("claim '" + c.id + "': unknown presentation '" +
                        c.presentation + "'");
    if (!c.family.empty() && !corpus.families.count(c.family))
      throw CorpusError("claim '" + c.id + "': unknown family '" + c.family + "'");

    if (jc.contains("where")) c.filter.where = bindings(jc.at("where"));
    if (jc.contains("except"))
      for (const json& ex : jc.at("except")) c.filter.except.push_back(bindings(ex));

    for (const json& w : jc.value("subgroup", json::array()))
      c.subgroup.push_back(w.get<std::string>());
    for (const json& w : jc.value("quotient", json::array()))
      c.quotient.push_back(w.get<std::string>());
    for (const json& w : jc.value("fallback_subgroup", json::array()))
      c.fallback_subgroup.push_back(w.get<std::string>());

    c.kind = kind_from_string(jc.at("kind").get<std::string>(), c.id);
    switch (c.kind) {
      case ClaimKind::Index:
      case ClaimKind::IndexDivides:
      case ClaimKind::Order:
      case ClaimKind::OrderDivides:
        c.expected_int = jc.at("expected").get<long long>();
        if (c.expected_int <= 0)
          throw CorpusError("claim '" + c.id + "': expected must be positive");
        break;
      case ClaimKind::IndexIn:
      case ClaimKind::SpectrumEquals:
        c.expected_set = jc.at("expected").get<std::vector<long long>>();
        if (c.expected_set.empty())
          throw CorpusError("claim '" + c.id + "': expected set is empty");
        break;
      case ClaimKind::SpectrumExcludes:
      case ClaimKind::SpectrumContains:
        c.spectrum_n = jc.at("expected").get<long long>();
        break;
      case ClaimKind::AbelianInvariantsKind: {
        const json& e = jc.at("expected");
        c.expected_torsion = e.at("torsion").get<std::vector<long long>>();
        c.expected_free_rank = e.value("free_rank", 0);
        break;
      }
      case ClaimKind::WordOrder:
        c.word = jc.at("word").get<std::string>();
        c.word_order = jc.at("expected").get<long long>();
        break;
      case ClaimKind::WordsCommute:
        c.word = jc.at("w1").get<std::string>();
        c.word2 = jc.at("w2").get<std::string>();
        break;
    }

    if (jc.contains("strategy"))
      c.strategy = strategy_from_string(jc.at("strategy").get<std::string>());
    if (jc.contains("max_cosets")) c.max_cosets = jc.at("max_cosets").get<std::int64_t>();
    if (jc.contains("max_seconds")) c.max_seconds = jc.at("max_seconds").get<double>();
    if (jc.contains("order_bound"))
      c.order_bound = jc.at("order_bound").get<unsigned long long>();
    if (jc.contains("trials")) c.trials = jc.at("trials").get<int>();
    c.note = jc.value("note", "");

    // Validate the target slice: parameters must exist and be in range, and
    // the subgroup/quotient/witness words must parse on one instance.
    std::vector<std::pair<std::string, Presentation>> probe =
        claim_instances(corpus, c, 1);
    if (probe.empty())
      throw CorpusError("claim '" + c.id + "': filter selects no instance");
    const Presentation& sample = probe.front().second;
    for (const std::string& w : c.subgroup) parse_word(sample, w);
    for (const std::string& w : c.quotient) parse_word(sample, w);
    for (const std::string& w : c.fallback_subgroup) parse_word(sample, w);
    if (!c.word.empty()) parse_word(sample, c.word);
    if (!c.word2.empty()) parse_word(sample, c.word2);

    corpus.claims.push_back(std::move(c));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), path);
}

std::vector<std::pair<std::string, Presentation>> claim_instances(
    const Corpus& corpus, const Claim& c, std::size_t limit) {
  std::vector<std::pair<std::string, Presentation>> out;
  if (!c.presentation.empty()) {
    out.emplace_back(c.presentation, corpus.presentations.at(c.presentation));
    return out;
  }
  const FamilySpec& f = corpus.families.at(c.family);
  for (const auto& [k, v] : c.filter.where) {
    (void)v;
    bool known = false;
    for (const ParamSpec& ps : f.parameters) known |= ps.name == k;
    if (!known)
      throw CorpusError("claim '" + c.id + "': family " + f.name +
                        " has no parameter '" + k + "'");
  }
  // Walk the ranges without instantiating filtered-out tuples.
  std::size_t total = family_size(f);
  if (total > kFamilyCap)
    throw FamilyTooLarge("family " + f.name + " is over the expansion cap");
  std::vector<std::size_t> idx(f.parameters.size(), 0);
  for (std::size_t n = 0; n < total && out.size() < limit; ++n) {
    std::map<std::string, long long> params;
    for (std::size_t i = 0; i < f.parameters.size(); ++i)
      params.emplace(f.parameters[i].name, f.parameters[i].values[idx[i]]);
    if (c.filter.matches(params)) {
      Presentation p = instantiate(f, params);
      out.emplace_back(p.name, std::move(p));
    }
    for (std::size_t i = f.parameters.size(); i-- > 0;) {
      if (++idx[i] < f.parameters[i].values.size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace fpv
