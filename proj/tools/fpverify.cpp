// Command-line front end: parse presentation files, run coset enumerations,
// compute orders, spectra and abelian invariants, and batch-verify a claims
// corpus.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fpv/bsgs.hpp"
#include "fpv/claims.hpp"
#include "fpv/coset_enum.hpp"
#include "fpv/errors.hpp"
#include "fpv/perm.hpp"
#include "fpv/presentation.hpp"
#include "fpv/snf.hpp"
#include "fpv/verify.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fpv::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Presentation files may declare parameters; --at pins them.
fpv::Presentation load_instance(const std::string& path, const std::string& at) {
  fpv::FamilySpec f = fpv::parse_family_text(slurp(path));
  std::map<std::string, long long> params;
  std::istringstream in(at);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw fpv::Error("--at expects name=value pairs separated by commas");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    params[name] = std::stoll(item.substr(eq + 1));
  }
  return fpv::instantiate(f, params);
}

fpv::Strategy parse_strategy(const std::string& s) {
  if (s == "hlt") return fpv::Strategy::HLT;
  if (s == "felsch") return fpv::Strategy::Felsch;
  if (s == "lookahead") return fpv::Strategy::HLTLookahead;
  throw fpv::Error("unknown strategy '" + s + "' (hlt|felsch|lookahead)");
}

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("FPVERIFY_SEED")) {
    return std::strtoull(env, nullptr, 0);
  }
  return fpv::kDefaultSeed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finitely presented group verification toolkit"};
  app.require_subcommand(1);

  std::string file, subgroup_arg, strategy_arg = "lookahead", table_out;
  std::string at_arg;
  std::int64_t max_cosets = 4'000'000;
  double max_seconds = 0;
  unsigned long long order_bound = fpv::kDefaultOrderBound;

  auto add_common = [&](CLI::App* cmd, bool with_enum_opts) {
    cmd->add_option("file", file, "presentation file")->required();
    cmd->add_option("--at", at_arg, "parameter values, e.g. \"p=5,i=6\"");
    if (with_enum_opts) {
      cmd->add_option("--strategy", strategy_arg, "hlt|felsch|lookahead");
      cmd->add_option("--max-cosets", max_cosets, "coset table row cap");
      cmd->add_option("--max-seconds", max_seconds, "wall clock budget");
    }
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse and echo a presentation");
  add_common(parse_cmd, false);

  CLI::App* enum_cmd = app.add_subcommand("enumerate", "coset enumeration");
  add_common(enum_cmd, true);
  enum_cmd->add_option("--subgroup", subgroup_arg,
                       "subgroup generator words, ';'-separated");
  enum_cmd->add_option("--table-out", table_out, "write the standardized table");

  CLI::App* order_cmd = app.add_subcommand("order", "group order by enumeration");
  add_common(order_cmd, true);

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "exact set of element orders");
  add_common(spectrum_cmd, true);
  spectrum_cmd->add_option("--order-bound", order_bound,
                           "largest order traversed exactly");

  CLI::App* abelian_cmd = app.add_subcommand("abelian", "abelian invariants");
  add_common(abelian_cmd, false);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a claims corpus");
  std::string corpus_path, report_path, only;
  int jobs = 1;
  verify_cmd->add_option("corpus", corpus_path, "corpus JSON file")->required();
  verify_cmd->add_option("--jobs", jobs, "parallel workers")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--only", only, "glob over claim ids");
  verify_cmd->add_option("--report", report_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    fpv::EnumLimits limits;
    limits.max_cosets = max_cosets;
    if (max_seconds > 0) limits.max_seconds = max_seconds;

    if (parse_cmd->parsed()) {
      fpv::Presentation p = load_instance(file, at_arg);
      std::cout << fpv::to_text(p);
      return 0;
    }
    if (enum_cmd->parsed()) {
      fpv::Presentation p = load_instance(file, at_arg);
      fpv::SubgroupSpec h = fpv::parse_subgroup(p, split_words(subgroup_arg));
      fpv::EnumOutcome out =
          fpv::enumerate(p, h, parse_strategy(strategy_arg), limits);
      std::cout << "presentation: " << p.name << "\n"
                << "defined " << out.stats.cosets_defined << ", dead "
                << out.stats.cosets_dead << ", coincidences "
                << out.stats.coincidences_processed << ", elapsed "
                << out.stats.elapsed_seconds << "s\n";
      if (!out.complete) {
        std::cout << "outcome: exceeded limits\n";
        return 2;
      }
      std::cout << "outcome: complete, index " << fpv::index(*out.table) << "\n";
      if (!fpv::verify_table(*out.table, p, h)) {
        std::cout << "table audit FAILED\n";
        return 1;
      }
      if (!table_out.empty()) {
        std::ofstream f(table_out);
        f << fpv::dump_table(*out.table);
      }
      return 0;
    }
    if (order_cmd->parsed()) {
      fpv::Presentation p = load_instance(file, at_arg);
      fpv::EnumOutcome out = fpv::enumerate(p, fpv::SubgroupSpec{},
                                            parse_strategy(strategy_arg), limits);
      if (!out.complete) {
        std::cout << "exceeded limits after " << out.stats.cosets_defined
                  << " cosets\n";
        return 2;
      }
      std::cout << "order " << fpv::index(*out.table) << "\n";
      return 0;
    }
    if (spectrum_cmd->parsed()) {
      fpv::Presentation p = load_instance(file, at_arg);
      fpv::EnumOutcome out = fpv::enumerate(p, fpv::SubgroupSpec{},
                                            parse_strategy(strategy_arg), limits);
      if (!out.complete) {
        std::cout << "exceeded limits after " << out.stats.cosets_defined
                  << " cosets\n";
        return 2;
      }
      unsigned long long order =
          static_cast<unsigned long long>(fpv::index(*out.table));
      fpv::PermGroup action;
      if (auto reduced = fpv::reduced_faithful_action(
              p, order, limits, parse_strategy(strategy_arg)))
        action = std::move(*reduced);
      else
        action = fpv::coset_action(*out.table);
      fpv::Spectrum s = fpv::spectrum_exact(action, order_bound);
      std::cout << "order " << order << "\nspectrum {";
      for (std::size_t i = 0; i < s.orders.size(); ++i)
        std::cout << (i ? "," : "") << s.orders[i];
      std::cout << "}\n";
      return 0;
    }
    if (abelian_cmd->parsed()) {
      fpv::Presentation p = load_instance(file, at_arg);
      std::cout << fpv::to_string(fpv::abelian_invariants(p)) << "\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      fpv::Corpus corpus = fpv::load_corpus(corpus_path);
      fpv::RunOptions options;
      options.parallelism = jobs;
      options.seed = seed_from_env();
      options.only = only;
      fpv::Report rep = fpv::run_corpus(corpus, options);
      std::cout << fpv::render_text_report(rep);
      if (!report_path.empty()) {
        std::ofstream f(report_path);
        f << fpv::render_json_report(rep);
      }
      return fpv::report_exit_code(rep);
    }
  } catch (const fpv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
