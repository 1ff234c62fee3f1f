#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "proprank/axioms.hpp"
#include "proprank/baselines.hpp"
#include "proprank/errors.hpp"
#include "proprank/flow.hpp"
#include "proprank/profile_io.hpp"
#include "proprank/rules.hpp"
#include "proprank/scenarios.hpp"

namespace {

using namespace proprank;

// Exit codes: 0 success, 2 parse error, 3 capacity error, 4 property or
// bound failure, 5 internal inconsistency.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitProperty = 4;
constexpr int kExitInternal = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RuleOutput {
  Ranking ranking;
  std::optional<BudgetTrace> trace;
  Rational score;
  bool tie_note = false;
};

RuleOutput run_rule(const std::string& rule, const Profile& profile) {
  if (rule == "borda-seq") {
    auto r = sequential_borda(profile);
    return {r.ranking, std::nullopt, r.score, r.tie_note};
  }
  if (rule == "kemeny") {
    auto r = kemeny(profile);
    return {r.ranking, std::nullopt, r.score, r.tie_note};
  }
  if (rule == "sqkemeny") {
    auto r = squared_kemeny(profile);
    return {r.ranking, std::nullopt, r.score, r.tie_note};
  }
  if (rule == "cc") {
    auto r = chamberlin_courant(profile);
    return {r.ranking, std::nullopt, r.score, r.tie_note};
  }
  RuleRun run = rule == "psb"    ? run_psb(profile)
                : rule == "rmes" ? run_rmes(profile)
                : rule == "fb"   ? run_fb(profile)
                                 : throw InvalidInputError("unknown rule '" + rule + "'");
  Rational welfare;
  for (const auto& [r, w] : profile.entries()) welfare += w * Rational(utility(r, run.ranking));
  return {run.ranking, std::move(run.trace), welfare, false};
}

std::vector<AxiomReport> run_checks(const std::string& rule, const Profile& profile,
                                    const Ranking& out) {
  std::vector<AxiomReport> reports;
  reports.push_back(check_ujr(profile, out));
  reports.push_back(check_upjr(profile, out));
  if (profile.support_size() <= kDefaultSpjrSupportCap) {
    reports.push_back(check_spjr(profile, out));
  }
  reports.push_back(check_pareto(profile, out));
  reports.push_back(verify_rank_priceability(profile, out));
  if (rule == "fb" || rule == "cc" || rule == "kemeny" || rule == "sqkemeny" ||
      rule == "borda-seq") {
    reports.push_back(verify_pair_priceability(profile, out));
  }
  return reports;
}

// Flat key=value record, deterministic order, no timestamps.
std::string render_run_record(const std::string& rule, const ProfileDocument& doc,
                              const RuleOutput& result,
                              const std::vector<AxiomReport>& reports) {
  std::ostringstream os;
  os << "rule=" << rule << "\n";
  os << "input_digest=" << profile_digest(doc) << "\n";
  os << "m=" << doc.profile.m() << "\n";
  os << "support=" << doc.profile.support_size() << "\n";
  os << "output=" << doc.format_ranking(result.ranking, ">") << "\n";
  os << "score=" << result.score.str() << "\n";
  if (result.trace) {
    for (const auto& round : result.trace->rounds) {
      std::string prefix = "round." + std::to_string(round.index);
      if (round.chosen >= 0) os << prefix << ".chosen=" << doc.name_of(round.chosen) << "\n";
      if (round.price) os << prefix << ".price=" << round.price->str() << "\n";
      if (round.flow_value) os << prefix << ".flow_value=" << round.flow_value->str() << "\n";
      for (size_t r = 0; r < round.payments.size(); ++r) {
        os << prefix << ".payment." << r << "=" << round.payments[r].str() << "\n";
      }
    }
    os << "leftover=" << result.trace->leftover.str() << "\n";
  }
  for (const auto& report : reports) {
    os << "axiom." << axiom_name(report.axiom) << "="
       << (report.satisfied ? "satisfied" : "violated") << "\n";
  }
  return os.str();
}

void print_trace(const ProfileDocument& doc, const BudgetTrace& trace) {
  std::vector<Rational> budgets = trace.initial_budgets;
  for (const auto& round : trace.rounds) {
    if (round.chosen < 0) continue;
    std::cout << "round " << round.index << ": " << doc.name_of(round.chosen);
    if (round.price) std::cout << "  price " << round.price->str();
    if (round.flow_value) std::cout << "  flow " << round.flow_value->str();
    std::cout << "\n  budgets";
    for (const auto& b : budgets) std::cout << " " << b.str();
    std::cout << "\n  payments";
    for (size_t r = 0; r < round.payments.size(); ++r) {
      std::cout << " " << round.payments[r].str();
      budgets[r] -= round.payments[r];
    }
    std::cout << "\n";
  }
  std::cout << "leftover " << trace.leftover.str() << "\n";
}

int cmd_aggregate(const std::string& rule, const std::string& input, bool trace, bool check,
                  const std::string& out_path) {
  ProfileDocument doc = parse_profile(read_file(input));
  auto started = std::chrono::steady_clock::now();
  RuleOutput result = run_rule(rule, doc.profile);
  auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cout << doc.format_ranking(result.ranking) << "\n";
  if (result.tie_note) std::cout << "(objective tied with another ranking)\n";
  if (trace && result.trace) print_trace(doc, *result.trace);
  std::vector<AxiomReport> reports;
  if (check) {
    reports = run_checks(rule, doc.profile, result.ranking);
    for (const auto& r : reports) std::cout << r.to_text() << "\n";
  }
  std::cerr << "elapsed " << elapsed << "us\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << render_run_record(rule, doc, result, reports);
  }
  return kExitOk;
}

int cmd_reproduce(const std::string& case_id) {
  std::vector<const Scenario*> cases;
  if (case_id == "all") {
    for (const auto& s : scenario_catalog()) cases.push_back(&s);
  } else {
    const Scenario* s = find_scenario(case_id);
    if (!s) {
      std::cerr << "unknown case '" << case_id << "'; known cases:\n";
      for (const auto& known : scenario_catalog()) {
        std::cerr << "  " << known.id << "  (" << known.description << ")\n";
      }
      return kExitParse;
    }
    cases.push_back(s);
  }
  bool all_passed = true;
  for (const Scenario* s : cases) {
    ScenarioResult result = s->run();
    std::cout << "case " << s->id << ": " << (result.passed ? "PASS" : "FAIL") << "\n";
    for (const auto& line : result.lines) std::cout << "  " << line << "\n";
    all_passed = all_passed && result.passed;
  }
  return all_passed ? kExitOk : kExitProperty;
}

BoundKind parse_bound(const std::string& text) {
  if (text == "psb") return BoundKind::Psb;
  if (text == "rmes") return BoundKind::Rmes;
  if (text == "fb") return BoundKind::Fb;
  throw InvalidInputError("unknown bound '" + text + "'");
}

int cmd_curve(const std::string& rule, const std::string& bound_text, const Profile& profile,
              std::ostream& os) {
  RuleRun run = rule == "psb"    ? run_psb(profile)
                : rule == "rmes" ? run_rmes(profile)
                : rule == "fb"   ? run_fb(profile)
                                 : throw InvalidInputError("curve needs psb, rmes, or fb");
  BoundKind kind = parse_bound(bound_text.empty() ? rule : bound_text);
  BoundCurve curve = worst_group_margin(profile, run.ranking, kind);
  os << "alpha_num,alpha_den,min_avg_utility,bound_value,margin\r\n";
  for (const auto& p : curve.points) {
    os << p.size.numerator().str() << "," << p.size.denominator().str() << ","
       << p.min_avg_utility.str() << "," << p.bound_value.str() << "," << p.margin().str()
       << "\r\n";
  }
  os << "min_margin,,,," << curve.min_margin.str() << "\r\n";
  return curve.min_margin.is_negative() ? kExitProperty : kExitOk;
}

GenModel parse_model(const std::string& text) {
  if (text == "ic") return GenModel::Ic;
  if (text == "mallows") return GenModel::Mallows;
  if (text == "two-bloc") return GenModel::TwoBloc;
  throw InvalidInputError("unknown model '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "proprank: proportional rank aggregation in exact rational arithmetic.\n"
      "Exit codes: 0 ok, 2 parse error, 3 capacity error, 4 property/bound"
      " failure, 5 internal inconsistency."};
  app.require_subcommand(1);

  std::string rule = "psb";
  std::string input;
  std::string out_path;
  bool trace = false;
  bool check = false;
  auto* agg = app.add_subcommand("aggregate", "run one rule on a profile file");
  agg->add_option("--rule", rule, "borda-seq|kemeny|sqkemeny|cc|psb|rmes|fb")->required();
  agg->add_option("input", input, "profile file")->required();
  agg->add_flag("--trace", trace, "print per-round budgets/payments/prices");
  agg->add_flag("--check", check, "run the axiom checks on the output");
  agg->add_option("--out", out_path, "write a machine-readable run record");

  std::string case_id = "all";
  auto* rep = app.add_subcommand("reproduce", "run a pinned regression scenario");
  rep->add_option("case", case_id, "scenario id, or 'all'");

  std::string curve_rule = "psb";
  std::string curve_bound;
  std::string curve_input;
  std::string curve_out;
  bool curve_gen = false;
  GenSpec spec;
  std::string model_text = "ic";
  std::string phi_text = "1/2";
  std::string split_text = "3/5";
  auto* curve = app.add_subcommand("curve", "worst-subprofile average-utility margin as CSV");
  curve->add_option("--rule", curve_rule, "psb|rmes|fb")->required();
  curve->add_option("--bound", curve_bound, "psb|rmes|fb (defaults to the rule)");
  curve->add_option("input", curve_input, "profile file");
  curve->add_flag("--gen", curve_gen, "generate the input instead of reading a file");
  curve->add_option("--model", model_text, "ic|mallows|two-bloc");
  curve->add_option("--m", spec.m, "candidate count");
  curve->add_option("--support", spec.support, "number of rankings");
  curve->add_option("--seed", spec.seed, "generator seed");
  curve->add_option("--phi", phi_text, "mallows dispersion (rational)");
  curve->add_option("--split", split_text, "two-bloc weight split (rational)");
  curve->add_option("--out", curve_out, "write the CSV here instead of stdout");

  auto* gen = app.add_subcommand("gen", "emit a random profile file");
  gen->add_option("--model", model_text, "ic|mallows|two-bloc");
  gen->add_option("--m", spec.m, "candidate count")->required();
  gen->add_option("--support", spec.support, "number of rankings")->required();
  gen->add_option("--seed", spec.seed, "generator seed")->required();
  gen->add_option("--phi", phi_text, "mallows dispersion (rational)");
  gen->add_option("--split", split_text, "two-bloc weight split (rational)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (agg->parsed()) return cmd_aggregate(rule, input, trace, check, out_path);
    if (rep->parsed()) return cmd_reproduce(case_id);
    if (curve->parsed()) {
      spec.model = parse_model(model_text);
      spec.phi = Rational::parse(phi_text);
      spec.split = Rational::parse(split_text);
      if (!curve_gen && curve_input.empty()) {
        throw InvalidInputError("curve needs an input file or --gen");
      }
      Profile profile = curve_gen ? gen_profile(spec)
                                  : parse_profile(read_file(curve_input)).profile;
      if (!curve_out.empty()) {
        std::ofstream os(curve_out, std::ios::binary);
        return cmd_curve(curve_rule, curve_bound, profile, os);
      }
      return cmd_curve(curve_rule, curve_bound, profile, std::cout);
    }
    if (gen->parsed()) {
      spec.model = parse_model(model_text);
      spec.phi = Rational::parse(phi_text);
      spec.split = Rational::parse(split_text);
      Profile profile = gen_profile(spec);
      ProfileDocument doc{default_names(spec.m), profile};
      std::cout << render_profile(doc);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const InternalError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
