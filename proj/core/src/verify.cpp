#include "fpv/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fpv/errors.hpp"
#include "fpv/perm.hpp"
#include "fpv/snf.hpp"

namespace fpv {

using nlohmann::json;

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "FAIL";
    case Outcome::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string join(const std::vector<long long>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "}";
}

std::string expected_string(const Claim& c) {
  switch (c.kind) {
    case ClaimKind::Index: return "index " + std::to_string(c.expected_int);
    case ClaimKind::IndexDivides:
      return "index divides " + std::to_string(c.expected_int);
    case ClaimKind::IndexIn: return "index in " + join(c.expected_set);
    case ClaimKind::Order: return "order " + std::to_string(c.expected_int);
    case ClaimKind::OrderDivides:
      return "order divides " + std::to_string(c.expected_int);
    case ClaimKind::SpectrumEquals: return "spectrum " + join(c.expected_set);
    case ClaimKind::SpectrumExcludes:
      return "spectrum excludes " + std::to_string(c.spectrum_n);
    case ClaimKind::SpectrumContains:
      return "spectrum contains " + std::to_string(c.spectrum_n);
    case ClaimKind::AbelianInvariantsKind: {
      AbelianInvariants a;
      for (long long t : c.expected_torsion) a.torsion.emplace_back(t);
      a.free_rank = c.expected_free_rank;
      return to_string(a);
    }
    case ClaimKind::WordOrder:
      return "order(" + c.word + ") = " + std::to_string(c.word_order);
    case ClaimKind::WordsCommute:
      return "[" + c.word + ", " + c.word2 + "] = 1";
  }
  return {};
}

std::string shorten(std::string s, std::size_t cap = 140) {
  if (s.size() > cap) {
    s.resize(cap);
    s += "...";
  }
  return s;
}

struct Evaluator {
  const Presentation& base;
  const Claim& claim;
  const RunOptions& options;
  InstanceResult res;
  Presentation target;  // base with the claim's quotient applied

  Evaluator(const Presentation& inst, const Claim& c, const RunOptions& opt)
      : base(inst), claim(c), options(opt) {
    res.instance = inst.name;
    if (claim.quotient.empty()) {
      target = base;
    } else {
      std::vector<Word> extra;
      for (const std::string& w : claim.quotient)
        extra.push_back(parse_word(base, w));
      target = quotient_by(base, extra);
    }
  }

  Strategy strategy() const {
    return claim.strategy.value_or(options.default_strategy);
  }

  EnumLimits limits() const {
    EnumLimits l = options.default_limits;
    if (claim.max_cosets) l.max_cosets = *claim.max_cosets;
    if (claim.max_seconds) l.max_seconds = *claim.max_seconds;
    return l;
  }

  void add_stats(const EnumStats& s) {
    res.stats.cosets_defined += s.cosets_defined;
    res.stats.cosets_dead += s.cosets_dead;
    res.stats.coincidences_processed += s.coincidences_processed;
    res.stats.elapsed_seconds += s.elapsed_seconds;
  }

  // Completed and audited table, or nullopt with res filled in.
  std::optional<CosetTable> table_over(const SubgroupSpec& h) {
    EnumOutcome out = enumerate(target, h, strategy(), limits());
    add_stats(out.stats);
    if (!out.complete) {
      res.outcome = Outcome::Indeterminate;
      res.actual = "enumeration exceeded limits (defined " +
                   std::to_string(out.stats.cosets_defined) + " cosets)";
      return std::nullopt;
    }
    if (!verify_table(*out.table, target, h)) {
      res.outcome = Outcome::Fail;
      res.actual = "internal table audit failed";
      return std::nullopt;
    }
    return std::move(out.table);
  }

  void check_int(long long actual) {
    res.actual = std::to_string(actual);
    bool ok = false;
    switch (claim.kind) {
      case ClaimKind::Index:
      case ClaimKind::Order:
        ok = actual == claim.expected_int;
        break;
      case ClaimKind::IndexDivides:
      case ClaimKind::OrderDivides:
        ok = claim.expected_int % actual == 0;
        break;
      case ClaimKind::IndexIn:
        ok = std::find(claim.expected_set.begin(), claim.expected_set.end(),
                       actual) != claim.expected_set.end();
        break;
      default:
        break;
    }
    res.outcome = ok ? Outcome::Pass : Outcome::Fail;
  }

  void run() {
    switch (claim.kind) {
      case ClaimKind::Index:
      case ClaimKind::IndexDivides:
      case ClaimKind::IndexIn: {
        SubgroupSpec h = parse_subgroup(target, claim.subgroup);
        if (auto t = table_over(h)) check_int(index(*t));
        return;
      }
      case ClaimKind::Order:
      case ClaimKind::OrderDivides: {
        if (auto t = table_over(SubgroupSpec{})) {
          check_int(index(*t));
          return;
        }
        if (claim.kind == ClaimKind::Order && res.outcome == Outcome::Indeterminate &&
            !claim.fallback_subgroup.empty()) {
          order_via_faithful_action();
        }
        return;
      }
      case ClaimKind::SpectrumEquals:
      case ClaimKind::SpectrumExcludes:
      case ClaimKind::SpectrumContains:
        run_spectrum();
        return;
      case ClaimKind::AbelianInvariantsKind: {
        AbelianInvariants got = abelian_invariants(target);
        AbelianInvariants want;
        for (long long t : claim.expected_torsion) want.torsion.emplace_back(t);
        want.free_rank = claim.expected_free_rank;
        res.actual = to_string(got);
        res.outcome = got == want ? Outcome::Pass : Outcome::Fail;
        return;
      }
      case ClaimKind::WordOrder: {
        if (auto t = table_over(SubgroupSpec{})) {
          PermGroup g = coset_action(*t);
          Permutation p = evaluate_word(g, parse_word(target, claim.word));
          unsigned long long n = element_order(p);
          res.actual = std::to_string(n);
          res.witness = shorten(cycle_notation(p));
          res.outcome = n == static_cast<unsigned long long>(claim.word_order)
                            ? Outcome::Pass
                            : Outcome::Fail;
        }
        return;
      }
      case ClaimKind::WordsCommute: {
        if (auto t = table_over(SubgroupSpec{})) {
          PermGroup g = coset_action(*t);
          Permutation a = evaluate_word(g, parse_word(target, claim.word));
          Permutation b = evaluate_word(g, parse_word(target, claim.word2));
          bool ok = commute(a, b);
          res.actual = ok ? "commute" : "do not commute";
          res.outcome = ok ? Outcome::Pass : Outcome::Fail;
        }
        return;
      }
    }
  }

  // Order claims too heavy for a regular enumeration: act on the cosets of
  // the designated subgroup and certify by BSGS order equality with the
  // claimed value. An image strictly larger than the claim refutes it; a
  // smaller image proves nothing (the action may be unfaithful).
  void order_via_faithful_action() {
    SubgroupSpec h = parse_subgroup(target, claim.fallback_subgroup);
    EnumOutcome out = enumerate(target, h, strategy(), limits());
    add_stats(out.stats);
    if (!out.complete) return;  // keep the Indeterminate from the regular run
    if (!verify_table(*out.table, target, h)) {
      res.outcome = Outcome::Fail;
      res.actual = "internal table audit failed";
      return;
    }
    unsigned long long n = group_order(coset_action(*out.table));
    res.witness = "faithful action on " + std::to_string(out.table->n_live) +
                  " cosets; image order " + std::to_string(n);
    if (n == static_cast<unsigned long long>(claim.expected_int)) {
      res.actual = std::to_string(n) + " (via faithful action)";
      res.outcome = Outcome::Pass;
    } else if (n > static_cast<unsigned long long>(claim.expected_int)) {
      res.actual = "order >= " + std::to_string(n);
      res.outcome = Outcome::Fail;
    }
  }

  void run_spectrum() {
    auto t = table_over(SubgroupSpec{});
    if (!t) return;
    unsigned long long order = static_cast<unsigned long long>(index(*t));
    unsigned long long bound = claim.order_bound.value_or(kDefaultOrderBound);
    if (order <= bound) {
      PermGroup action;
      if (auto reduced = reduced_faithful_action(target, order, limits(), strategy()))
        action = std::move(*reduced);
      else
        action = coset_action(*t);
      Spectrum s = spectrum_exact(action, bound);
      res.actual = "spectrum {" + [&] {
        std::string o;
        for (std::size_t i = 0; i < s.orders.size(); ++i) {
          if (i) o += ",";
          o += std::to_string(s.orders[i]);
        }
        return o;
      }() + "}";
      switch (claim.kind) {
        case ClaimKind::SpectrumEquals: {
          std::vector<long long> got(s.orders.begin(), s.orders.end());
          res.outcome = got == claim.expected_set ? Outcome::Pass : Outcome::Fail;
          return;
        }
        case ClaimKind::SpectrumExcludes:
          res.outcome = s.contains(static_cast<unsigned long long>(claim.spectrum_n))
                            ? Outcome::Fail
                            : Outcome::Pass;
          return;
        case ClaimKind::SpectrumContains:
          res.outcome = s.contains(static_cast<unsigned long long>(claim.spectrum_n))
                            ? Outcome::Pass
                            : Outcome::Fail;
          return;
        default:
          return;
      }
    }
    // Too large to traverse: containment degrades to a seeded random
    // search; exclusion and equality stay unproven.
    if (claim.kind == ClaimKind::SpectrumContains) {
      PermGroup g = coset_action(*t);
      std::uint64_t seed = options.seed ^ fnv1a(claim.id);
      OrderWitness w = has_element_of_order(
          g, target.generators, static_cast<unsigned long long>(claim.spectrum_n),
          claim.trials, seed);
      if (w.found) {
        res.actual = "witness of order " + std::to_string(claim.spectrum_n);
        res.witness = shorten(w.word + " = " + w.cycles);
        res.outcome = Outcome::Pass;
      } else {
        res.actual = "no witness found in " + std::to_string(claim.trials) +
                     " random words (seed " + std::to_string(seed) + ")";
        res.outcome = Outcome::Indeterminate;
      }
    } else {
      res.actual = "order " + std::to_string(order) +
                   " exceeds the exact-spectrum bound " + std::to_string(bound);
      res.outcome = Outcome::Indeterminate;
    }
  }
};

}  // namespace

InstanceResult run_instance(const Presentation& instance, const Claim& c,
                            const RunOptions& options) {
  Evaluator e(instance, c, options);
  e.run();
  return std::move(e.res);
}

namespace {

ClaimResult merge_results(const Claim& c, std::vector<InstanceResult> rs,
                          double elapsed) {
  ClaimResult out;
  out.id = c.id;
  out.kind = c.kind;
  out.expected = expected_string(c);
  out.instances = static_cast<int>(rs.size());
  out.elapsed_seconds = elapsed;
  out.outcome = Outcome::Pass;
  const InstanceResult* offender = nullptr;
  for (const InstanceResult& r : rs) {
    out.stats.cosets_defined += r.stats.cosets_defined;
    out.stats.cosets_dead += r.stats.cosets_dead;
    out.stats.coincidences_processed += r.stats.coincidences_processed;
    if (r.outcome == Outcome::Fail && out.outcome != Outcome::Fail) {
      out.outcome = Outcome::Fail;
      offender = &r;
    } else if (r.outcome == Outcome::Indeterminate && out.outcome == Outcome::Pass) {
      out.outcome = Outcome::Indeterminate;
      offender = &r;
    }
    if (!r.witness.empty() && out.witnesses.size() < 4)
      out.witnesses.push_back(r.instance + ": " + r.witness);
  }
  if (out.outcome == Outcome::Pass) {
    out.actual = rs.size() == 1 ? rs.front().actual
                                : "all " + std::to_string(rs.size()) +
                                      " instances satisfy the claim";
  } else if (offender) {
    out.actual = offender->actual;
    out.reason = offender->instance + ": " + offender->actual;
  }
  return out;
}

}  // namespace

ClaimResult run_claim(const Corpus& corpus, const Claim& c,
                      const RunOptions& options) {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Presentation>> instances =
      claim_instances(corpus, c);
  std::vector<InstanceResult> rs(instances.size());
  int jobs = std::max(1, options.parallelism);
  if (jobs == 1 || instances.size() <= 1) {
    for (std::size_t i = 0; i < instances.size(); ++i)
      rs[i] = run_instance(instances[i].second, c, options);
  } else {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= instances.size()) break;
        rs[i] = run_instance(instances[i].second, c, options);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return merge_results(c, std::move(rs), elapsed);
}

Report run_corpus(const Corpus& corpus, const RunOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.corpus_hash = corpus.hash;
  rep.toolkit_version = kToolkitVersion;
  rep.seed = options.seed;

  std::vector<const Claim*> selected;
  for (const Claim& c : corpus.claims)
    if (options.only.empty() || glob_match(options.only, c.id))
      selected.push_back(&c);

  // Work units are (claim, instance) pairs so that one big sweep does not
  // serialize the run.
  struct Unit {
    std::size_t claim;
    std::size_t slot;
    const Presentation* instance;
  };
  std::vector<std::vector<std::pair<std::string, Presentation>>> instances(
      selected.size());
  std::vector<std::vector<InstanceResult>> results(selected.size());
  std::vector<Unit> units;
  for (std::size_t ci = 0; ci < selected.size(); ++ci) {
    instances[ci] = claim_instances(corpus, *selected[ci]);
    results[ci].resize(instances[ci].size());
    for (std::size_t k = 0; k < instances[ci].size(); ++k)
      units.push_back(Unit{ci, k, &instances[ci][k].second});
  }

  int jobs = std::max(1, options.parallelism);
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= units.size()) break;
      const Unit& u = units[i];
      results[u.claim][u.slot] =
          run_instance(*u.instance, *selected[u.claim], options);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t ci = 0; ci < selected.size(); ++ci) {
    double claim_elapsed = 0;
    for (const InstanceResult& r : results[ci])
      claim_elapsed += r.stats.elapsed_seconds;
    rep.results.push_back(
        merge_results(*selected[ci], std::move(results[ci]), claim_elapsed));
  }
  std::sort(rep.results.begin(), rep.results.end(),
            [](const ClaimResult& a, const ClaimResult& b) { return a.id < b.id; });
  for (const ClaimResult& r : rep.results) {
    switch (r.outcome) {
      case Outcome::Pass: ++rep.n_pass; break;
      case Outcome::Fail: ++rep.n_fail; break;
      case Outcome::Indeterminate: ++rep.n_indeterminate; break;
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

std::string render_text_report(const Report& r) {
  std::size_t id_w = 16, kind_w = 12;
  for (const ClaimResult& c : r.results) {
    id_w = std::max(id_w, c.id.size());
    kind_w = std::max(kind_w, to_string(c.kind).size());
  }
  std::ostringstream out;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(r.corpus_hash));
  out << r.toolkit_version << "  corpus " << hash << "  seed " << r.seed << "\n";
  for (const ClaimResult& c : r.results) {
    out << to_string(c.outcome);
    for (std::size_t i = to_string(c.outcome).size(); i < 14; ++i) out << ' ';
    out << c.id;
    for (std::size_t i = c.id.size(); i < id_w + 2; ++i) out << ' ';
    out << to_string(c.kind);
    for (std::size_t i = to_string(c.kind).size(); i < kind_w + 2; ++i) out << ' ';
    out << "expected: " << c.expected;
    if (c.outcome != Outcome::Pass && !c.reason.empty())
      out << "  got: " << c.reason;
    else if (c.instances > 1)
      out << "  [" << c.instances << " instances]";
    out << "\n";
  }
  out << "summary: " << r.n_pass << " pass, " << r.n_fail << " fail, "
      << r.n_indeterminate << " indeterminate ("
      << static_cast<long long>(r.elapsed_seconds * 1000) << " ms)\n";
  return out.str();
}

std::string render_json_report(const Report& r) {
  json doc;
  doc["schema"] = 1;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(r.corpus_hash));
  doc["corpus_hash"] = hash;
  doc["toolkit"] = r.toolkit_version;
  doc["seed"] = r.seed;
  doc["summary"] = {{"pass", r.n_pass},
                    {"fail", r.n_fail},
                    {"indeterminate", r.n_indeterminate},
                    {"total", r.results.size()}};
  doc["elapsed_seconds"] = r.elapsed_seconds;
  doc["results"] = json::array();
  for (const ClaimResult& c : r.results) {
    json jr;
    jr["id"] = c.id;
    jr["kind"] = to_string(c.kind);
    jr["outcome"] = c.outcome == Outcome::Pass
                        ? "pass"
                        : (c.outcome == Outcome::Fail ? "fail" : "indeterminate");
    jr["expected"] = c.expected;
    jr["actual"] = c.actual;
    if (!c.reason.empty()) jr["reason"] = c.reason;
    jr["instances"] = c.instances;
    jr["stats"] = {{"cosets_defined", c.stats.cosets_defined},
                   {"cosets_dead", c.stats.cosets_dead},
                   {"coincidences", c.stats.coincidences_processed}};
    if (!c.witnesses.empty()) jr["witnesses"] = c.witnesses;
    jr["elapsed_seconds"] = c.elapsed_seconds;
    doc["results"].push_back(std::move(jr));
  }
  return doc.dump(2) + "\n";
}

int report_exit_code(const Report& r) {
  if (r.n_fail > 0) return 1;
  if (r.n_indeterminate > 0) return 2;
  return 0;
}

bool glob_match(const std::string& pattern, const std::string& s) {
  // Iterative '*' wildcard match.
  std::size_t p = 0, i = 0, star = std::string::npos, mark = 0;
  while (i < s.size()) {
    if (p < pattern.size() && (pattern[p] == s[i])) {
      ++p;
      ++i;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = i;
    } else if (star != std::string::npos) {
      p = star + 1;
      i = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace fpv
