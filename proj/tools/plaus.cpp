// Command-line front end: validates order documents, decides the family-scan
// and agreement questions, checks stored certificates, generates example
// documents, and cross-checks the engine against the reference oracles.
//
// Exit codes: 0 the question is decided positively, 1 decided negatively
// with a certificate in the report, 2 unusable input or internal mismatch.

#include <plaus/json_io.hpp>
#include <plaus/modal.hpp>
#include <plaus/oracle.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace plaus;

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kUnusable = 2;

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

struct CommonOptions {
  std::string input;
  std::string scope;  // empty: keep the document's scope
  std::size_t event_cap = kDefaultEventCap;
  std::size_t pair_cap = 1'000'000;
  unsigned threads = 1;
  bool json = false;
  bool oracle = false;
};

void add_input(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("input", opt.input, "order document path, or - for stdin")->required();
  cmd->add_option("--scope", opt.scope, "override the document scope")
      ->check(CLI::IsMember({"active", "full"}));
  cmd->add_option("--event-cap", opt.event_cap, "maximum number of events in scope");
}

void add_report_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_flag("--json", opt.json, "print the full JSON report");
  cmd->add_flag("--oracle", opt.oracle, "cross-check the result against reference oracles");
}

struct LoadedOrder {
  OrderDocument doc;
  PlausibilityOrder order;
};

LoadedOrder load_order(const CommonOptions& opt) {
  OrderDocument doc = order_document_from_json(read_json(opt.input));
  if (opt.scope == "active") doc.scope = ScopePolicy::Active;
  if (opt.scope == "full") doc.scope = ScopePolicy::Full;
  PlausibilityOrder order = build_order(doc.space, doc.comparisons, doc.scope, opt.event_cap);
  return LoadedOrder{std::move(doc), std::move(order)};
}

void emit(const CommonOptions& opt, const Json& report, const std::string& human) {
  if (opt.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

std::string measure_line(const Json& measure) {
  std::string out = "measure:";
  for (const auto& [x, w] : measure.items()) out += " " + x + "=" + w.get<std::string>();
  return out + "\n";
}

class OracleMismatch : public CertificateError {
public:
  explicit OracleMismatch(const std::string& what) : CertificateError("oracle mismatch: " + what) {}
};

// ---------------------------------------------------------------------------
// validate

int run_validate(const CommonOptions& opt) {
  LoadedOrder loaded = load_order(opt);
  TotalityResult tot = is_total(loaded.order);
  Json j;
  j["kind"] = "validation";
  j["outcomes"] = loaded.order.space().outcomes().size();
  j["tests"] = loaded.order.space().tests().size();
  j["scope"] = scope_name(loaded.order.policy());
  j["events_in_scope"] = loaded.order.size();
  j["comparisons"] = loaded.doc.comparisons.size();
  j["total"] = tot.total;
  if (!tot.total)
    j["incomparable"] = Json::array(
        {event_to_json(tot.incomparable->first), event_to_json(tot.incomparable->second)});

  std::string human = "order ok: " + std::to_string(loaded.order.size()) + " events in scope, " +
                      std::to_string(loaded.doc.comparisons.size()) + " comparisons, " +
                      (tot.total ? "total" : "not total (" +
                                                 event_label(tot.incomparable->first) + " vs " +
                                                 event_label(tot.incomparable->second) + ")") +
                      "\n";
  emit(opt, j, human);
  return kPositive;
}

// ---------------------------------------------------------------------------
// events

int run_events(const CommonOptions& opt) {
  LoadedOrder loaded = load_order(opt);
  Json j;
  j["kind"] = "events";
  j["scope"] = scope_name(loaded.order.policy());
  j["count"] = loaded.order.size();
  Json arr = Json::array();
  for (const auto& e : loaded.order.scope()) arr.push_back(event_to_json(e));
  j["events"] = std::move(arr);

  std::string human;
  for (const auto& e : loaded.order.scope()) human += event_label(e) + "\n";
  emit(opt, j, human);
  return kPositive;
}

// ---------------------------------------------------------------------------
// check

void cross_check_scan(const PlausibilityOrder& order, const ArchimedeanReport& report) {
  if (order.size() > OracleConfig{}.max_events) return;
  OracleConfig config;
  config.max_family_length = 3;
  std::vector<OracleViolation> families = brute_archimedean(order, config);
  if (!families.empty() && report.archimedean)
    throw OracleMismatch("family enumeration found a violation the scan missed");
}

int run_check(const CommonOptions& opt) {
  LoadedOrder loaded = load_order(opt);
  ScanOptions scan;
  scan.pair_cap = opt.pair_cap;
  scan.threads = opt.threads;
  ArchimedeanReport report = check_archimedean(loaded.order, scan);
  for (const auto& v : report.violations)
    if (!verify_violation(loaded.order, v))
      throw CertificateError("emitted violation failed re-verification");
  if (opt.oracle) cross_check_scan(loaded.order, report);

  Json j = archimedean_report_to_json(report);
  std::string human;
  if (report.archimedean) {
    human = "archimedean: no violating pair among " + std::to_string(report.pairs_scanned) +
            " scanned\n";
  } else {
    const ArchimedeanViolation& first = report.violations.front();
    human = "violated: " + std::to_string(report.violations.size()) + " certified pair(s); first " +
            event_label(first.a) + " over " + event_label(first.b) + " via " +
            std::to_string(first.terms.size()) + " weighted comparison(s), families of " +
            std::to_string(first.families.family_a.size()) + " events\n";
  }
  emit(opt, j, human);
  return report.archimedean ? kPositive : kNegative;
}

// ---------------------------------------------------------------------------
// agree

void cross_check_agree(const PlausibilityOrder& order, const AgreeingResult& res) {
  if (res.status == AgreeStatus::NotTotal) return;
  bool averaged_ok = true;
  Measure averaged;
  try {
    averaged = averaged_agreeing_measure(order);
  } catch (const SeparationFailed&) {
    averaged_ok = false;
  }
  if (averaged_ok != (res.status == AgreeStatus::Agrees))
    throw OracleMismatch("per-pair averaging disagrees with the margin program");
  if (averaged_ok &&
      verify_agreement(order, averaged, AgreementMode::Agree).verdict != AgreementVerdict::Agrees)
    throw OracleMismatch("averaged measure failed agreement verification");
}

int run_agree(const CommonOptions& opt) {
  LoadedOrder loaded = load_order(opt);
  AgreeingResult res = find_agreeing(loaded.order);
  if (res.status == AgreeStatus::Agrees &&
      verify_agreement(loaded.order, res.measure, AgreementMode::Agree).verdict !=
          AgreementVerdict::Agrees)
    throw CertificateError("constructed measure failed agreement verification");
  if (res.status == AgreeStatus::NotArchimedean && !verify_violation(loaded.order, *res.violation))
    throw CertificateError("emitted violation failed re-verification");
  if (opt.oracle) cross_check_agree(loaded.order, res);

  Json j = agreeing_result_to_json(res);
  std::string human;
  switch (res.status) {
    case AgreeStatus::Agrees:
      human = "agrees: margin " + to_string(res.margin) + "\n" + measure_line(j["measure"]);
      break;
    case AgreeStatus::NotTotal:
      human = "not total: " + event_label(res.incomparable->first) + " vs " +
              event_label(res.incomparable->second) + " are incomparable\n";
      break;
    case AgreeStatus::NotArchimedean:
      human = "not archimedean: " + event_label(res.violation->a) + " over " +
              event_label(res.violation->b) + " is certified\n";
      break;
  }
  emit(opt, j, human);
  return res.status == AgreeStatus::Agrees ? kPositive : kNegative;
}

// ---------------------------------------------------------------------------
// almost-agree

void verify_obstruction(const PlausibilityOrder& order, const std::vector<WitnessTerm>& terms) {
  OutcomeVector sum;
  for (const auto& t : terms) {
    if (t.weight <= 0 || !order.weak(t.low, t.high))
      throw CertificateError("obstruction term is not a weighted weak pair");
    sum.add_scaled(OutcomeVector::indicator(t.high) - OutcomeVector::indicator(t.low), t.weight);
  }
  if (sum != -OutcomeVector::indicator(order.designated_test()))
    throw CertificateError("obstruction terms do not sum to the negated unit");
}

std::vector<OutcomeVector> unique_generator_vectors(const PlausibilityOrder& order) {
  std::vector<OutcomeVector> vecs;
  for (const auto& g : build_cone(order).generators) {
    bool seen = false;
    for (const auto& v : vecs)
      if (v == g.vec) {
        seen = true;
        break;
      }
    if (!seen) vecs.push_back(g.vec);
  }
  return vecs;
}

void cross_check_almost(const PlausibilityOrder& order, const AlmostAgreeingResult& res) {
  constexpr std::size_t kEliminationCap = 12;
  std::vector<OutcomeVector> vecs = unique_generator_vectors(order);
  if (vecs.size() > kEliminationCap) return;
  OutcomeVector unit = OutcomeVector::indicator(order.designated_test());
  if (fm_cone_membership(vecs, -unit) == res.feasible)
    throw OracleMismatch("variable elimination disagrees on the negated unit");
}

int run_almost(const CommonOptions& opt) {
  LoadedOrder loaded = load_order(opt);
  AlmostAgreeingResult res = find_almost_agreeing(loaded.order);
  if (res.feasible) {
    if (verify_agreement(loaded.order, res.measure, AgreementMode::Almost).verdict ==
        AgreementVerdict::Fails)
      throw CertificateError("constructed measure failed almost-agreement verification");
  } else {
    verify_obstruction(loaded.order, res.obstruction);
  }
  if (opt.oracle) cross_check_almost(loaded.order, res);

  Json j = almost_agreeing_result_to_json(res, loaded.order.space());
  std::string human;
  if (res.feasible)
    human = "feasible\n" + measure_line(j["measure"]);
  else
    human = "infeasible: the negated unit decomposes over " +
            std::to_string(res.obstruction.size()) + " weak pair(s)\n";
  emit(opt, j, human);
  return res.feasible ? kPositive : kNegative;
}

// ---------------------------------------------------------------------------
// witness

int run_witness(const CommonOptions& opt, const std::string& certificate_path, bool json_mode) {
  LoadedOrder loaded = load_order(opt);
  ArchimedeanViolation v = violation_from_json(read_json(certificate_path));
  if (!verify_violation(loaded.order, v))
    throw CertificateError("certificate does not verify against this order");

  Json j;
  j["kind"] = "witness_check";
  j["verified"] = true;
  j["violation"] = violation_to_json(v);
  CommonOptions out = opt;
  out.json = json_mode;
  emit(out, j,
       "certificate ok: " + event_label(v.a) + " over " + event_label(v.b) + ", families of " +
           std::to_string(v.families.family_a.size()) + " events, " + v.families.copies.get_str() +
           " cop" + (v.families.copies == 1 ? "y" : "ies") + " of the conclusion\n");
  return kPositive;
}

// ---------------------------------------------------------------------------
// generate

std::vector<Comparison> triangle_possibility() {
  return {{{"x"}, {}, ComparisonRel::Equiv},
          {{"y"}, {"x", "y"}, ComparisonRel::Equiv},
          {{"z"}, {"x", "y"}, ComparisonRel::Equiv}};
}

std::vector<Comparison> kps_strict_comparisons() {
  return {{{"1", "3"}, {"4"}, ComparisonRel::Strict},
          {{"1", "4"}, {"2", "3"}, ComparisonRel::Strict},
          {{"3", "4"}, {"1", "5"}, ComparisonRel::Strict},
          {{"2", "5"}, {"1", "3", "4"}, ComparisonRel::Strict}};
}

int run_generate(const std::string& kind, const std::vector<std::string>& args) {
  OrderDocument doc;
  if (kind == "classical") {
    if (args.empty()) throw ParseError("generate classical needs outcome labels");
    doc.space = make_classical(args);
  } else if (kind == "triangle") {
    if (!args.empty()) throw ParseError("generate triangle takes no arguments");
    doc.space = make_triangle();
    doc.comparisons = triangle_possibility();
  } else if (kind == "kps") {
    if (!args.empty()) throw ParseError("generate kps takes no arguments");
    doc.space = make_classical({"1", "2", "3", "4", "5"});
    doc.comparisons = kps_strict_comparisons();
  } else if (kind == "modal") {
    if (args.size() != 2) throw ParseError("generate modal needs a prime and a dimension");
    doc.space = modal_test_space(std::stol(args[0]), std::stol(args[1]));
  } else {
    throw ParseError("unknown generator '" + kind +
                     "' (expected classical, triangle, kps or modal)");
  }
  std::cout << order_document_to_json(doc).dump(2) << "\n";
  return kPositive;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleBattery {
  std::size_t checks = 0;

  void order_battery(const PlausibilityOrder& order) {
    ArchimedeanReport report = check_archimedean(order);
    for (const auto& v : report.violations) {
      if (!verify_violation(order, v))
        throw OracleMismatch("scan violation failed re-verification");
      ++checks;
    }
    cross_check_scan(order, report);
    ++checks;

    AlmostAgreeingResult almost = find_almost_agreeing(order);
    if (almost.feasible) {
      if (verify_agreement(order, almost.measure, AgreementMode::Almost).verdict ==
          AgreementVerdict::Fails)
        throw OracleMismatch("almost-agreeing measure failed verification");
    } else {
      verify_obstruction(order, almost.obstruction);
      if (report.archimedean)
        throw OracleMismatch("no weighting exists yet the scan found no violation");
    }
    cross_check_almost(order, almost);
    ++checks;

    AgreeingResult agr = find_agreeing(order);
    if (agr.status == AgreeStatus::Agrees &&
        verify_agreement(order, agr.measure, AgreementMode::Agree).verdict !=
            AgreementVerdict::Agrees)
      throw OracleMismatch("agreeing measure failed verification");
    if (agr.status == AgreeStatus::NotArchimedean && report.archimedean)
      throw OracleMismatch("margin program found a violation the scan missed");
    cross_check_agree(order, agr);
    ++checks;
  }
};

Measure random_measure(std::mt19937_64& rng, const TestSpace& space) {
  const std::vector<std::string>& outcomes = space.outcomes();
  std::vector<long> parts(outcomes.size(), 0);
  long total = 0;
  std::uniform_int_distribution<long> part(0, 5);
  for (auto& p : parts) {
    p = part(rng);
    total += p;
  }
  if (total == 0) {
    parts[0] = 1;
    total = 1;
  }
  Measure mu;
  mu.space = space;
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    if (parts[i] != 0) mu.weight[outcomes[i]] = make_rational(parts[i], total);
  return mu;
}

int run_oracle_battery(const std::string& input, const CommonOptions& opt, std::uint64_t seed,
                       unsigned trials, bool json_mode) {
  OracleBattery battery;
  if (!input.empty()) {
    CommonOptions in = opt;
    in.input = input;
    battery.order_battery(load_order(in).order);
  } else {
    battery.order_battery(build_order(make_triangle(), triangle_possibility()));
    battery.order_battery(
        build_order(make_classical({"1", "2", "3", "4", "5"}), kps_strict_comparisons()));
    battery.order_battery(build_order(make_triangle(), {}));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(2, 4);
    std::vector<std::string> labels{"a", "b", "c", "d", "e"};
    for (unsigned t = 0; t < trials; ++t) {
      std::vector<std::string> chosen(labels.begin(), labels.begin() + size(rng));
      TestSpace space = make_classical(chosen);
      Measure mu = random_measure(rng, space);
      PlausibilityOrder order = order_from_measure(mu, ScopePolicy::Full);
      if (!check_archimedean(order).archimedean)
        throw OracleMismatch("a measure-induced order was reported violated");
      battery.order_battery(order);
    }
  }

  Json j;
  j["kind"] = "oracle_report";
  j["checks"] = battery.checks;
  j["consistent"] = true;
  CommonOptions out = opt;
  out.json = json_mode;
  emit(out, j, "oracle: " + std::to_string(battery.checks) + " checks, all consistent\n");
  return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision engine for comparative plausibility on test spaces"};
  app.require_subcommand(1);

  CommonOptions validate_opt, events_opt, check_opt, agree_opt, almost_opt, witness_opt;
  bool witness_json = false, oracle_json = false;
  std::string witness_cert;
  std::string generate_kind;
  std::vector<std::string> generate_args;
  std::string oracle_input;
  std::uint64_t oracle_seed = 0;
  unsigned oracle_trials = 25;

  CLI::App* validate = app.add_subcommand("validate", "parse and build an order document");
  add_input(validate, validate_opt);
  validate->add_flag("--json", validate_opt.json, "print the full JSON report");

  CLI::App* events = app.add_subcommand("events", "list the events in scope");
  add_input(events, events_opt);
  events->add_flag("--json", events_opt.json, "print the full JSON report");

  CLI::App* check = app.add_subcommand("check", "scan every pair for a family violation");
  add_input(check, check_opt);
  check->add_option("--pair-cap", check_opt.pair_cap, "maximum number of scanned pairs");
  check->add_option("--threads", check_opt.threads, "worker threads for the scan");
  add_report_flags(check, check_opt);

  CLI::App* agree = app.add_subcommand("agree", "construct a measure inducing the order exactly");
  add_input(agree, agree_opt);
  add_report_flags(agree, agree_opt);

  CLI::App* almost =
      app.add_subcommand("almost-agree", "construct a measure the order never contradicts");
  add_input(almost, almost_opt);
  add_report_flags(almost, almost_opt);

  CLI::App* witness = app.add_subcommand("witness", "verify a stored violation certificate");
  add_input(witness, witness_opt);
  witness->add_option("certificate", witness_cert, "violation certificate path, or - for stdin")
      ->required();
  witness->add_flag("--json", witness_json, "print the full JSON report");

  CLI::App* generate = app.add_subcommand("generate", "emit a ready-made order document");
  generate->add_option("kind", generate_kind, "classical | triangle | kps | modal")->required();
  generate->add_option("args", generate_args, "labels for classical; prime and dimension for modal");

  CLI::App* oracle = app.add_subcommand("oracle", "cross-check the engine against the oracles");
  oracle->add_option("input", oracle_input, "order document path, or - for stdin");
  oracle->add_option("--seed", oracle_seed, "seed for the random self-battery");
  oracle->add_option("--trials", oracle_trials, "random orders to examine");
  oracle->add_flag("--json", oracle_json, "print the full JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUnusable;
  }

  try {
    if (validate->parsed()) return run_validate(validate_opt);
    if (events->parsed()) return run_events(events_opt);
    if (check->parsed()) return run_check(check_opt);
    if (agree->parsed()) return run_agree(agree_opt);
    if (almost->parsed()) return run_almost(almost_opt);
    if (witness->parsed()) return run_witness(witness_opt, witness_cert, witness_json);
    if (generate->parsed()) return run_generate(generate_kind, generate_args);
    if (oracle->parsed())
      return run_oracle_battery(oracle_input, CommonOptions{}, oracle_seed, oracle_trials,
                                oracle_json);
  } catch (const InconsistentOrder& e) {
    std::cerr << "order rejected: " << e.what() << "\n";
    return kNegative;
  } catch (const Axiom3Violation& e) {
    std::cerr << "order rejected: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnusable;
  }
  return kUnusable;
}
