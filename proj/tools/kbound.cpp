// kbound: runs chases and decides k-boundedness of existential rule sets.
//
//   kbound chase --rules r.dlp --facts f.dlp --variant so [--bf] [--out json]
//   kbound chase --rules r.dlp --replay report.json
//   kbound bounded --rules r.dlp --variant bfo --k 2 [--quantifier exists]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kbound/bounded.hpp"
#include "kbound/error.hpp"
#include "kbound/report.hpp"
#include "kbound/syntax.hpp"

namespace {

constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kNoInput = 66;

struct MissingFile {
  std::string path;
};

struct DataError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile{path};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::shared_ptr<const kbound::RuleSet> load_rules(const std::string& path) {
  std::string text = read_file(path);
  try {
    return std::make_shared<const kbound::RuleSet>(kbound::parse_rules(text));
  } catch (const kbound::Error& e) {
    throw DataError{path + ":" + e.what()};
  }
}

struct ChaseArgs {
  std::string rules;
  std::string facts;
  std::string replay;
  std::string variant = "o";
  bool bf = false;
  unsigned max_depth = 100;
  std::size_t max_triggers = 100000;
  std::string tie_break = "lex";
  std::string naming = "trigger";
  std::string out = "text";
};

struct BoundedArgs {
  std::string rules;
  std::string variant;
  unsigned k = 0;
  std::string quantifier = "all";
  std::string terms;
  std::size_t max_factbases = kbound::Budget{}.max_factbases;
  std::size_t max_derivations = kbound::Budget{}.max_derivations;
  double time_limit = kbound::Budget{}.time_limit.count();
  std::string out = "json";
};

int cmd_replay(const ChaseArgs& args) {
  auto rules = load_rules(args.rules);
  kbound::Json report;
  try {
    report = kbound::Json::parse(read_file(args.replay));
  } catch (const kbound::Json::exception& e) {
    throw DataError{args.replay + ": " + e.what()};
  }
  kbound::ReplayResult result = kbound::replay(report, rules);
  std::string text;
  if (args.out == "json") {
    kbound::Json out{{"valid", result.valid}, {"ranksMatch", result.ranks_match},
                     {"message", result.message}, {"depth", result.derivation->depth()}};
    text = out.dump(2) + "\n";
  } else if (args.out == "dot") {
    text = kbound::chase_graph_to_dot(*result.derivation);
  } else {
    text = std::string(result.valid && result.ranks_match ? "replay ok" : "replay mismatch") +
           (result.message.empty() ? "" : ": " + result.message) + "\n" +
           "depth: " + std::to_string(result.derivation->depth()) + "\n";
  }
  std::cout << text << std::flush;
  return result.valid && result.ranks_match ? 0 : 1;
}

int cmd_chase(const ChaseArgs& args) {
  if (!args.replay.empty()) return cmd_replay(args);
  if (args.facts.empty()) {
    std::cerr << "chase: --facts is required unless --replay is given\n";
    return kUsage;
  }
  auto rules = load_rules(args.rules);
  std::string facts_text = read_file(args.facts);
  kbound::Signature signature = rules->signature();
  kbound::FactBase facts;
  try {
    facts = kbound::parse_facts(facts_text, &signature);
  } catch (const kbound::Error& e) {
    throw DataError{args.facts + ":" + e.what()};
  }
  kbound::VariantPolicy policy;
  policy.variant = kbound::parse_variant(args.variant);
  policy.breadth_first = args.bf;
  policy.tie_break = args.tie_break == "fifo" ? kbound::TieBreak::Fifo : kbound::TieBreak::Lex;
  policy.naming = args.naming == "frontier" ? kbound::NullNaming::Frontier : kbound::NullNaming::Trigger;
  kbound::ChaseCaps caps{args.max_depth, args.max_triggers};
  kbound::ChaseOutcome outcome = kbound::run(facts, rules, policy, caps);
  std::string text;
  if (args.out == "json") {
    text = kbound::outcome_to_json(outcome, policy).dump(2) + "\n";
  } else if (args.out == "dot") {
    text = kbound::chase_graph_to_dot(outcome.derivation);
  } else {
    text = kbound::outcome_to_text(outcome);
  }
  std::cout << text << std::flush;
  return outcome.status == kbound::ChaseStatus::Terminated ? 0 : 2;
}

int cmd_bounded(const BoundedArgs& args) {
  kbound::BoundednessQuery query;
  query.variant = kbound::parse_bounded_variant(args.variant);
  query.quantifier = args.quantifier == "exists" ? kbound::Quantifier::Exists : kbound::Quantifier::ForAll;
  query.k = args.k;
  if (args.terms == "constants") query.term_kinds = kbound::TermKinds::ConstantsOnly;
  if (args.terms == "mixed") query.term_kinds = kbound::TermKinds::Mixed;
  if (query.quantifier == kbound::Quantifier::Exists &&
      (query.variant == kbound::BoundedVariant::R || query.variant == kbound::BoundedVariant::BfR)) {
    std::cerr << "bounded: the existential question is not supported for the restricted chase\n";
    return kUsage;
  }
  query.rules = load_rules(args.rules);
  kbound::Budget budget;
  budget.max_factbases = args.max_factbases;
  budget.max_derivations = args.max_derivations;
  budget.time_limit = std::chrono::duration<double>(args.time_limit);
  kbound::BoundednessVerdict verdict = kbound::decide(query, budget);
  std::string text = args.out == "text" ? kbound::verdict_to_text(verdict, query)
                                        : kbound::verdict_to_json(verdict, query).dump(2) + "\n";
  std::cout << text << std::flush;
  if (verdict.budget_exceeded) return 2;
  return verdict.bounded ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chase runner and k-boundedness checker for existential rules", "kbound"};
  app.require_subcommand(1);

  ChaseArgs chase;
  CLI::App* chase_cmd = app.add_subcommand("chase", "Run one chase derivation");
  chase_cmd->add_option("--rules", chase.rules, "Rule file")->required()->check(CLI::ExistingFile);
  chase_cmd->add_option("--facts", chase.facts, "Fact file")->check(CLI::ExistingFile);
  chase_cmd->add_option("--replay", chase.replay, "Re-apply the steps of a JSON report")
      ->check(CLI::ExistingFile);
  chase_cmd->add_option("--variant", chase.variant, "o, so, r or e")
      ->check(CLI::IsMember({"o", "so", "r", "e"}, CLI::ignore_case));
  chase_cmd->add_flag("--bf", chase.bf, "Breadth-first derivation");
  chase_cmd->add_option("--max-depth", chase.max_depth, "Highest rank to produce");
  chase_cmd->add_option("--max-triggers", chase.max_triggers, "Most triggers to apply");
  chase_cmd->add_option("--tie-break", chase.tie_break, "lex or fifo")->check(CLI::IsMember({"lex", "fifo"}));
  chase_cmd->add_option("--null-naming", chase.naming, "trigger or frontier")
      ->check(CLI::IsMember({"trigger", "frontier"}));
  chase_cmd->add_option("--out", chase.out, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));

  BoundedArgs bounded;
  CLI::App* bounded_cmd = app.add_subcommand("bounded", "Decide k-boundedness");
  bounded_cmd->add_option("--rules", bounded.rules, "Rule file")->required()->check(CLI::ExistingFile);
  bounded_cmd->add_option("--variant", bounded.variant, "o, bfo, so, bfso, r or bfr")
      ->required()
      ->check(CLI::IsMember({"o", "bfo", "so", "bfso", "r", "bfr"}, CLI::ignore_case));
  bounded_cmd->add_option("--k", bounded.k, "Depth bound")->required();
  bounded_cmd->add_option("--quantifier", bounded.quantifier, "all or exists")
      ->check(CLI::IsMember({"all", "exists"}));
  bounded_cmd->add_option("--terms", bounded.terms, "constants or mixed factbases")
      ->check(CLI::IsMember({"constants", "mixed"}));
  bounded_cmd->add_option("--max-factbases", bounded.max_factbases, "Factbase budget");
  bounded_cmd->add_option("--max-derivations", bounded.max_derivations, "Search node budget");
  bounded_cmd->add_option("--time-limit", bounded.time_limit, "Seconds")->check(CLI::NonNegativeNumber);
  bounded_cmd->add_option("--out", bounded.out, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    if (code == 0) return 0;
    // A missing input file is reported as such, not as misuse.
    std::string what = e.what();
    if (what.find("does not exist") != std::string::npos) return kNoInput;
    return kUsage;
  }

  try {
    if (chase_cmd->parsed()) return cmd_chase(chase);
    return cmd_bounded(bounded);
  } catch (const MissingFile& e) {
    std::cerr << e.path << ": cannot read file\n";
    return kNoInput;
  } catch (const DataError& e) {
    std::cerr << e.message << "\n";
    return kDataError;
  } catch (const kbound::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kDataError;
  } catch (const kbound::InvalidQuery& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
}
