#include "commands.hpp"

#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "instance.hpp"
#include "plottlat/error.hpp"
#include "plottlat/oracle.hpp"
#include "plottlat/stability.hpp"

namespace plottlat::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct GlobalOptions {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::uint64_t max_ideals = kDefaultIdealCap;
  bool permissive = false;

  bool json() const { return format == "json"; }
  ParseOptions parse() const {
    ParseOptions p;
    p.mode = permissive ? Mode::Permissive : Mode::Strict;
    p.cap = max_ideals;
    return p;
  }
};

ojson names(const Poset& p, const System& s) {
  auto out = ojson::array();
  for (auto& id : p.names(s)) out.push_back(std::move(id));
  return out;
}

std::string braces(const Poset& p, const System& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& id : p.names(s)) {
    if (!first) out += ",";
    out += id;
    first = false;
  }
  return out + "}";
}

// "a,b" → ideal {a,b}; the empty string is the empty system.
System parse_system_arg(const Poset& p, const std::string& text) {
  System out(p.size());
  std::stringstream ss(text);
  std::string id;
  while (std::getline(ss, id, ',')) {
    const auto begin = id.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    id = id.substr(begin, id.find_last_not_of(" \t") - begin + 1);
    const auto idx = p.find(id);
    if (!idx) throw Error(Errc::ParseError, "unknown element '" + id + "' in system argument '" + text + "'");
    out.insert(*idx);
  }
  if (!p.is_ideal(out)) throw Error(Errc::NotAnIdeal, "system argument '" + text + "' is not an ideal");
  return out;
}

// Every command refuses domains over the cap, including those that never
// enumerate ideals, so --max-ideals means the same thing everywhere.
Problem load(const GlobalOptions& g, const std::string& path, ParseOptions opts) {
  auto pr = load_instance(path, opts);
  if (count_ideals(pr.poset(), g.max_ideals) > g.max_ideals)
    throw Error(Errc::DomainTooLarge, path + ": more than " + std::to_string(g.max_ideals) + " ideals");
  return pr;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::DomainTooLarge:
      return kResourceCap;
    case Errc::ParseError:
    case Errc::NotAnIdeal:
    case Errc::UnknownElement:
    case Errc::DuplicateElement:
    case Errc::CycleDetected:
    case Errc::TableIncomplete:
    case Errc::ValueNotSubset:
    case Errc::ValueNotIdeal:
    case Errc::NotAPartition:
    case Errc::OrderCrossesParts:
    case Errc::QuotaOnNontrivialPoset:
    case Errc::MalformedPreferences:
    case Errc::EmptyFamily:
    case Errc::PosetMismatch:
      return kUsageError;
    default:
      return kContractFailure;
  }
}

ojson report_json(const Poset& p, const ChoiceFunction& cf, const PlottReport& r) {
  ojson out;
  out["family"] = std::string(to_string(cf.family()));
  out["ok"] = r.ok();
  out["consistency_ok"] = r.consistency_ok;
  out["substitutability_ok"] = r.substitutability_ok;
  out["ideal_valued_ok"] = r.ideal_valued_ok;
  out["union_laws_ok"] = r.union_laws_ok;
  out["cases_checked"] = r.cases_checked;
  auto witnesses = ojson::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"law", std::string(to_string(w.law))},
                         {"a", names(p, w.a)},
                         {"b", names(p, w.b)},
                         {"choice_a", names(p, w.choice_a)},
                         {"choice_b", names(p, w.choice_b)}});
  }
  out["witnesses"] = std::move(witnesses);
  return out;
}

int cmd_validate(const GlobalOptions& g, const std::string& path, std::ostream& out) {
  auto opts = g.parse();
  opts.mode = Mode::Permissive;
  opts.validate_tables = false;
  const auto pr = load(g, path, opts);
  const auto& p = pr.poset();
  const auto rw = validate_plott(pr.worker(), g.max_ideals);
  const auto rf = validate_plott(pr.firm(), g.max_ideals);
  if (g.json()) {
    ojson doc;
    doc["worker"] = report_json(p, pr.worker(), rw);
    doc["firm"] = report_json(p, pr.firm(), rf);
    doc["ok"] = rw.ok() && rf.ok();
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& [who, r] : {std::pair{"worker", &rw}, std::pair{"firm", &rf}}) {
      out << who << ": " << (r->ok() ? "plott" : "NOT plott") << " (" << r->cases_checked << " cases)\n";
      for (const auto& w : r->witnesses) {
        out << "  " << to_string(w.law) << ": A=" << braces(p, w.a) << " B=" << braces(p, w.b)
            << " C(A)=" << braces(p, w.choice_a) << " C(B)=" << braces(p, w.choice_b) << "\n";
      }
    }
  }
  return rw.ok() && rf.ok() ? kSuccess : kContractFailure;
}

int cmd_solve(const GlobalOptions& g, const std::string& path, std::ostream& out) {
  const auto pr = load(g, path, g.parse());
  const auto e = extremal_stable(pr);
  const auto& p = pr.poset();
  if (g.json()) {
    ojson doc;
    doc["s_max_w"] = names(p, e.max_w);
    doc["s_min_w"] = names(p, e.min_w);
    out << doc.dump() << "\n";
  } else {
    out << "s_max_w: " << braces(p, e.max_w) << "\n" << "s_min_w: " << braces(p, e.min_w) << "\n";
  }
  return kSuccess;
}

int cmd_enumerate(const GlobalOptions& g, const std::string& path, const std::string& kind_name, std::ostream& out) {
  const auto kind = oracle::parse_system_class(kind_name);
  if (!kind) throw Error(Errc::ParseError, "unknown kind '" + kind_name + "'");
  const auto pr = load(g, path, g.parse());
  const auto systems = oracle::enumerate_class(pr, *kind, g.max_ideals);
  const auto& p = pr.poset();
  if (g.json()) {
    auto doc = ojson::array();
    for (const auto& s : systems) doc.push_back(names(p, s));
    out << doc.dump() << "\n";
  } else {
    for (const auto& s : systems) out << braces(p, s) << "\n";
  }
  return kSuccess;
}

int cmd_lattice(const GlobalOptions& g, const std::string& path, const std::vector<std::string>& args,
                std::ostream& out) {
  const auto pr = load(g, path, g.parse());
  const auto& p = pr.poset();
  std::vector<System> family;
  for (const auto& a : args) family.push_back(parse_system_arg(p, a));
  ojson doc;
  for (auto op : {LatticeOp::MeetW, LatticeOp::JoinW, LatticeOp::InfW, LatticeOp::SupW})
    doc[std::string(to_string(op))] = names(p, lattice_op(pr, op, family));
  if (g.json()) {
    out << doc.dump() << "\n";
  } else {
    for (auto op : {LatticeOp::MeetW, LatticeOp::JoinW, LatticeOp::InfW, LatticeOp::SupW})
      out << to_string(op) << ": " << braces(p, lattice_op(pr, op, family)) << "\n";
  }
  return kSuccess;
}

int cmd_compare(const GlobalOptions& g, const std::string& first, const std::string& second, std::ostream& out) {
  const auto original = load(g, first, g.parse());
  const auto modified = load(g, second, g.parse());
  const auto check = check_comparative(original, modified, g.max_ideals);
  const auto& p = original.poset();
  ojson doc;
  doc["comparable"] = check.holds;
  if (!check.holds) {
    doc["violation"] = check.violation == ComparativeCheck::Violation::FirmDesirability ? "firm_desirability"
                                                                                         : "worker_choice";
    doc["witness"] = names(p, *check.witness);
    if (g.json()) {
      out << doc.dump() << "\n";
    } else {
      out << "not comparable: " << doc["violation"].get<std::string>() << " fails at " << braces(p, *check.witness)
          << "\n";
    }
    return kContractFailure;
  }
  auto transfers = ojson::array();
  std::ostringstream text;
  text << "comparable\n";
  for (const auto& s : oracle::enumerate_class(original, oracle::SystemClass::Stable, g.max_ideals)) {
    const auto image = transfer_unchecked(original, modified, s);
    transfers.push_back({{"from", names(p, s)}, {"to", names(p, image)}});
    text << braces(p, s) << " -> " << braces(p, image) << "\n";
  }
  doc["transfers"] = std::move(transfers);
  if (g.json()) {
    out << doc.dump() << "\n";
  } else {
    out << text.str();
  }
  return kSuccess;
}

int cmd_trace(const GlobalOptions& g, const std::string& path, const std::optional<std::string>& seed_arg,
              std::ostream& out) {
  const auto pr = load(g, path, g.parse());
  const auto& p = pr.poset();
  const auto seed = seed_arg ? parse_system_arg(p, *seed_arg) : p.full_system();
  const auto res = sigma(pr, seed);
  for (std::size_t i = 0; i < res.trace.rounds.size(); ++i) {
    const auto& r = res.trace.rounds[i];
    if (g.json()) {
      ojson line;
      line["round"] = i;
      line["current"] = names(p, r.current);
      line["offered"] = names(p, r.offered);
      line["retained"] = names(p, r.retained);
      line["rejected"] = names(p, r.rejected);
      line["next"] = names(p, r.next);
      out << line.dump() << "\n";
    } else {
      out << "round " << i << ": B=" << braces(p, r.current) << " W(B)=" << braces(p, r.offered)
          << " retained=" << braces(p, r.retained) << " rejected=" << braces(p, r.rejected)
          << " next=" << braces(p, r.next) << "\n";
    }
  }
  if (g.json()) {
    ojson last;
    last["fixpoint"] = names(p, res.trace.fixpoint);
    last["stable"] = names(p, res.stable);
    out << last.dump() << "\n";
  } else {
    out << "fixpoint: " << braces(p, res.trace.fixpoint) << "\n" << "stable: " << braces(p, res.stable) << "\n";
  }
  return kSuccess;
}

int cmd_verify(const GlobalOptions& g, const std::string& path, std::ostream& out) {
  const auto pr = load(g, path, g.parse());
  const auto& p = pr.poset();
  oracle::VerifyOptions opts;
  opts.seed = g.seed;
  opts.cap = g.max_ideals;
  const auto report = oracle::verify_theorems(pr, opts);

  if (g.json()) {
    ojson doc;
    doc["seed"] = report.seed;
    doc["ideals"] = report.ideal_count;
    doc["all_passed"] = report.all_passed();
    auto checks = ojson::array();
    for (const auto& c : report.checks) {
      ojson entry{{"id", c.id}, {"passed", c.passed}, {"checked", c.checked}};
      if (!c.passed) {
        auto witness = ojson::array();
        for (const auto& s : c.witness) witness.push_back(names(p, s));
        entry["witness"] = std::move(witness);
      }
      checks.push_back(std::move(entry));
    }
    doc["checks"] = std::move(checks);
    auto list = [&](const std::vector<System>& systems) {
      auto arr = ojson::array();
      for (const auto& s : systems) arr.push_back(names(p, s));
      return arr;
    };
    doc["stable"] = list(report.stable);
    doc["neat"] = list(report.neat);
    doc["ample"] = list(report.ample);
    doc["quasi_stable"] = list(report.quasi_stable);
    doc["minimal_ample"] = names(p, report.minimal_ample);
    doc["minimal_ample_core"] = names(p, report.minimal_ample_core);
    doc["intersection_of_ample"] = names(p, report.intersection_of_ample);
    doc["intersection_of_stable"] = names(p, report.intersection_of_stable);
    doc["intersections_differ"] = !(report.intersection_of_ample == report.intersection_of_stable);
    doc["ample_closure_of_empty"] = names(p, report.ample_closure_of_empty);
    doc["closure_of_empty_is_minimal_ample"] = report.ample_closure_of_empty == report.minimal_ample;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.id << " (" << c.checked << " cases)";
      if (!c.passed) {
        out << " witness:";
        for (const auto& s : c.witness) out << " " << braces(p, s);
      }
      out << "\n";
    }
    out << "stable systems: " << report.stable.size() << "\n";
    out << "minimal ample: " << braces(p, report.minimal_ample) << "\n";
    out << "intersection of ample: " << braces(p, report.intersection_of_ample)
        << ", of stable: " << braces(p, report.intersection_of_stable) << "\n";
    out << "ample closure of empty: " << braces(p, report.ample_closure_of_empty) << "\n";
  }
  return report.all_passed() ? kSuccess : kContractFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable contract systems for two agents with Plott choice functions", "plottlat"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", g.seed, "Seed for randomized oracle checks");
  app.add_option("--max-ideals", g.max_ideals, "Cap on the number of ideals visited");
  app.add_flag("--permissive", g.permissive, "Accept choice functions that are not verified Plott");

  std::string instance;
  std::string second;
  std::string kind;
  std::vector<std::string> systems;
  std::optional<std::string> seed_system;

  auto* validate = app.add_subcommand("validate", "Check the Plott axioms for both choice functions");
  validate->add_option("instance", instance)->required();
  auto* solve = app.add_subcommand("solve", "Worker-best and worker-worst stable systems");
  solve->add_option("instance", instance)->required();
  auto* enumerate = app.add_subcommand("enumerate", "List every system of a class");
  enumerate->add_option("instance", instance)->required();
  enumerate->add_option("--kind", kind, "stable|neat|ample|quasi_stable|acceptable_w|acceptable_f")->required();
  auto* lattice = app.add_subcommand("lattice", "Meet and join of stable systems in the worker order");
  lattice->add_option("instance", instance)->required();
  lattice->add_option("--system", systems, "Stable system as comma-separated ids (repeatable)")->required();
  auto* compare = app.add_subcommand("compare", "Comparative statics between two instances");
  compare->add_option("original", instance)->required();
  compare->add_option("modified", second)->required();
  auto* trace = app.add_subcommand("trace", "Rounds of the descending iteration from an ample seed");
  trace->add_option("instance", instance)->required();
  trace->add_option("--seed-system", seed_system, "Ample seed as comma-separated ids (default: all)");
  auto* verify = app.add_subcommand("verify", "Exhaustive theorem verification against brute force");
  verify->add_option("instance", instance)->required();

  std::vector<const char*> argv{"plottlat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (validate->parsed()) return cmd_validate(g, instance, out);
    if (solve->parsed()) return cmd_solve(g, instance, out);
    if (enumerate->parsed()) return cmd_enumerate(g, instance, kind, out);
    if (lattice->parsed()) return cmd_lattice(g, instance, systems, out);
    if (compare->parsed()) return cmd_compare(g, instance, second, out);
    if (trace->parsed()) return cmd_trace(g, instance, seed_system, out);
    if (verify->parsed()) return cmd_verify(g, instance, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsageError;
}

}  // namespace plottlat::cli
