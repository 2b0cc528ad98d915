// agc: command-line front end for mission files.
//
// Exit codes: 0 affirmative result, 1 negative verdict, 2 usage or load
// error, 3 external tool error.

#include "agc/contract/contract.hpp"
#include "agc/engine/engine.hpp"
#include "agc/engine/realizability.hpp"
#include "agc/error.hpp"
#include "agc/library/library.hpp"
#include "agc/ltl/formula.hpp"
#include "agc/ltl/transform.hpp"
#include "agc/mission/mission.hpp"
#include "agc/patterns/patterns.hpp"
#include "agc/sat/automaton.hpp"
#include "agc/sat/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

namespace {

using agc::contract::Contract;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kToolError = 3;

struct Settings {
  std::string mission;
  bool json = false;
  std::size_t ap_cap = 12;
  std::size_t subset_cap = 4;
  std::optional<std::uint64_t> seed;
  std::string adapter_cmd;
  long timeout = 60;
  bool dump_automata = false;
  bool pairwise_adjacency = false;
};

class Reporter {
public:
  explicit Reporter(bool json_mode) : json_(json_mode) {}

  json &doc() { return doc_; }
  std::ostream &text() { return text_; }

  void flush() {
    if (json_) {
      std::cout << doc_.dump(2) << '\n';
    } else {
      std::cout << text_.str();
    }
  }

private:
  bool json_;
  json doc_ = json::object();
  std::ostringstream text_;
};

json contract_json(const Contract &c) {
  const Contract s = c.simplified();
  return {{"assumes", agc::ltl::print(s.assumptions())},
          {"guarantees", agc::ltl::print(s.guarantees())}};
}

std::string contract_text(const Contract &c, const std::string &indent = "  ") {
  const Contract s = c.simplified();
  return indent + "assumes:    " + agc::ltl::print(s.assumptions()) + "\n" +
         indent + "guarantees: " + agc::ltl::print(s.guarantees()) + "\n";
}

std::string percent(double x) {
  std::ostringstream os;
  if (std::abs(x - std::round(x)) < 1e-9) {
    os << static_cast<long long>(std::llround(x));
  } else {
    os.precision(4);
    os << x;
  }
  return os.str() + "%";
}

json candidate_json(const agc::library::CandidateComposition &c) {
  return {{"selection", c.selection},
          {"composed", contract_json(c.composed)},
          {"similarity", c.similarity},
          {"refinement_score", c.refinement_score}};
}

std::string join(const std::vector<std::string> &v, const char *sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

class App {
public:
  explicit App(Settings s) : s_(std::move(s)), solver_(agc::sat::SatOptions{s_.ap_cap}) {
    ctx_.solver = &solver_;
    ctx_.adjacency = s_.pairwise_adjacency ? agc::world::AdjacencyMode::Pairwise
                                           : agc::world::AdjacencyMode::PerLocation;
  }

  agc::mission::MissionFile &mission() {
    if (!loaded_) {
      if (s_.mission.empty()) {
        throw agc::Error("no mission file given (use --mission or AGC_MISSION)");
      }
      agc::mission::LoadOptions opts;
      opts.context = ctx_;
      mission_ = agc::mission::load_mission(s_.mission, opts);
      for (const auto &w : mission_.warnings) std::cerr << "warning: " << w << '\n';
      ctx_.world = &mission_.world;
      loaded_ = true;
    }
    return mission_;
  }

  // A contract name, or Library.Component.
  Contract lookup(const std::string &name) {
    auto &m = mission();
    if (m.contracts.count(name)) return m.contracts.at(name);
    const auto dot = name.find('.');
    if (dot != std::string::npos) {
      const auto &lib = m.library(name.substr(0, dot));
      if (const auto *c = lib.find(name.substr(dot + 1))) return c->contract;
      throw agc::Error("no component '" + name.substr(dot + 1) +
                       "' in library '" + lib.name() + "'");
    }
    throw agc::Error("no contract named '" + name + "'");
  }

  void warn_alignment(const Contract &a, const Contract &b) {
    const auto extra = agc::contract::misaligned_atoms(a, b);
    if (!extra.empty()) {
      std::cerr << "warning: atoms used by only one contract are unconstrained "
                   "on the other side: "
                << join(std::vector<std::string>(extra.begin(), extra.end()))
                << '\n';
    }
  }

  void dump(const char *label, const agc::ltl::Formula &f) {
    if (!s_.dump_automata) return;
    const auto a = agc::sat::to_buchi(agc::ltl::nnf(agc::ltl::simplify(f)),
                                      {s_.ap_cap});
    std::cerr << "# automaton for " << label << ": " << agc::ltl::print(f)
              << '\n'
              << a.dump();
  }

  int check(const std::string &name, Reporter &r) {
    const Contract c = lookup(name);
    dump("assumptions", ctx_.world->in_context(c.assumptions(), ctx_.adjacency));
    dump("guarantees", ctx_.world->in_context(c.guarantees(), ctx_.adjacency));
    const bool compatible = agc::contract::is_compatible(c, ctx_);
    const bool consistent = agc::contract::is_consistent(c, ctx_);
    const bool wf = compatible && consistent;
    r.doc() = {{"command", "check"},
               {"contract", name},
               {"definition", contract_json(c)},
               {"compatible", compatible},
               {"consistent", consistent},
               {"well_formed", wf}};
    r.text() << "contract " << name << "\n"
             << contract_text(c) << "compatible:  " << (compatible ? "yes" : "no")
             << "\nconsistent:  " << (consistent ? "yes" : "no")
             << "\nwell-formed: " << (wf ? "yes" : "no") << '\n';
    return wf ? kOk : kNegative;
  }

  int refines(const std::string &a, const std::string &b, Reporter &r) {
    const Contract c1 = lookup(a), c2 = lookup(b);
    warn_alignment(c1, c2);
    const auto rep = agc::contract::check_refinement(c1, c2, ctx_);
    const bool ok = rep.verdict == agc::contract::Verdict::Refines;
    r.doc() = {{"command", "refines"},
               {"refining", a},
               {"refined", b},
               {"refines", ok},
               {"verdict", std::string(agc::contract::verdict_name(rep.verdict))},
               {"detail", rep.detail}};
    r.text() << a << (ok ? " refines " : " does not refine ") << b << " ("
             << rep.detail << ")\n";
    return ok ? kOk : kNegative;
  }

  int algebra(const std::string &op, const std::string &a, const std::string &b,
              Reporter &r) {
    const Contract c1 = lookup(a), c2 = lookup(b);
    warn_alignment(c1, c2);
    Contract out;
    if (op == "compose") {
      out = agc::contract::compose(c1, c2);
    } else if (op == "quotient") {
      out = agc::contract::quotient(c1, c2);
    } else if (op == "merge") {
      out = agc::contract::merge(c1, c2);
    } else {
      out = agc::contract::separate(c1, c2);
    }
    const bool wf = agc::contract::is_well_formed(out, ctx_);
    r.doc() = {{"command", op},
               {"operands", {a, b}},
               {"result", contract_json(out)},
               {"well_formed", wf}};
    r.text() << op << "(" << a << ", " << b << ")\n"
             << contract_text(out) << "well-formed: " << (wf ? "yes" : "no")
             << '\n';
    return kOk;
  }

  agc::library::CandidateOptions candidate_options(bool least) const {
    agc::library::CandidateOptions o;
    o.subset_cap = s_.subset_cap;
    o.prefer_least_refined = least;
    o.seed = s_.seed;
    return o;
  }

  int candidate(const std::string &cname, const std::string &lname, bool least,
                Reporter &r) {
    const Contract c = lookup(cname);
    const auto &lib = mission().library(lname);
    const auto cand = agc::library::best_candidate_composition(
        c, lib, mission().world, candidate_options(least), ctx_);
    const bool ref = agc::contract::refines(cand.composed, c, ctx_);
    r.doc() = {{"command", "candidate"},
               {"contract", cname},
               {"library", lname},
               {"candidate", candidate_json(cand)},
               {"best_similarity_subsets", cand.best_similarity_subsets},
               {"finalists", cand.finalists},
               {"refines_contract", ref}};
    r.text() << "candidate for " << cname << " from " << lname << ": {"
             << join(cand.selection) << "}\n"
             << contract_text(cand.composed)
             << "similarity:       " << percent(cand.similarity) << '\n'
             << "refinement score: " << percent(cand.refinement_score) << '\n'
             << "refines " << cname << ": " << (ref ? "yes" : "no") << '\n';
    return kOk;
  }

  int analyze(const std::string &cname, const std::string &lname,
              const std::vector<std::string> &extra, bool repair, bool search,
              bool least, Reporter &r) {
    const Contract c = lookup(cname);
    auto &m = mission();
    const auto &lib = m.library(lname);
    std::vector<agc::library::ComponentLibrary> extras;
    for (const auto &e : extra) extras.push_back(m.library(e));
    const auto opts = candidate_options(least);
    const auto cand =
        agc::library::best_candidate_composition(c, lib, m.world, opts, ctx_);
    agc::engine::AnalysisOptions aopts;
    aopts.force_repair = repair;
    aopts.force_search = search;
    aopts.candidate = opts;
    const auto out = agc::engine::refinement_analysis(c, lib, cand, extras,
                                                      aopts, m.world, ctx_);
    using agc::engine::Status;
    json j = {{"command", "analyze"},
              {"contract", cname},
              {"library", lname},
              {"extra_libraries", extra},
              {"status", std::string(agc::engine::status_name(out.status))},
              {"reason", out.reason},
              {"candidate", candidate_json(out.candidate)}};
    std::ostream &t = r.text();
    t << "status: " << agc::engine::status_name(out.status) << " (" << out.reason
      << ")\n"
      << "candidate L^: {" << join(out.candidate.selection) << "}, similarity "
      << percent(out.candidate.similarity) << "\n"
      << contract_text(out.candidate.composed);
    bool affirmative = out.status == Status::Complete ||
                       out.status == Status::RepairResult;
    if (out.search) {
      const auto &s = *out.search;
      json js = {{"quotient", contract_json(s.quotient)},
                 {"quotient_consistent", s.quotient_consistent},
                 {"rejected_libraries", s.rejected}};
      t << "quotient Q:\n" << contract_text(s.quotient);
      if (s.found) {
        js["library"] = *s.library;
        js["found"] = candidate_json(*s.found);
        t << "found L' in " << *s.library << ": {" << join(s.found->selection)
          << "}\n"
          << contract_text(s.found->composed);
      } else {
        t << "no library composition refines Q\n";
      }
      if (s.final_contract) {
        const bool verified = agc::contract::refines(*s.final_contract, c, ctx_);
        js["final"] = contract_json(*s.final_contract);
        js["final_refines_contract"] = verified;
        t << "L* = L' || L^:\n"
          << contract_text(*s.final_contract) << "refines " << cname << ": "
          << (verified ? "yes" : "no") << '\n';
        affirmative = verified;
      }
      j["search"] = js;
    }
    if (out.repair) {
      const auto &rp = *out.repair;
      const bool verified =
          agc::contract::refines(out.candidate.composed, rp.repaired, ctx_);
      j["repair"] = {{"separation", contract_json(rp.separation)},
                     {"repaired", contract_json(rp.repaired)},
                     {"candidate_refines_repaired", verified}};
      t << "separation S:\n"
        << contract_text(rp.separation) << "repaired " << cname << "':\n"
        << contract_text(rp.repaired) << "L^ refines " << cname
        << "': " << (verified ? "yes" : "no") << '\n';
    }
    if (out.refinement) j["refinement"] = contract_json(*out.refinement);
    r.doc() = std::move(j);
    return affirmative ? kOk : kNegative;
  }

  int expand(const std::string &call, Reporter &r) {
    agc::ltl::Formula f;
    if (!s_.mission.empty()) {
      f = mission().parse_formula(call);
    } else {
      f = agc::patterns::expand_call(call);
    }
    r.doc() = {{"command", "expand"}, {"call", call}, {"formula", agc::ltl::print(f)}};
    r.text() << agc::ltl::print(f) << '\n';
    return kOk;
  }

  int score(const std::string &cname, const std::string &lname, Reporter &r) {
    const Contract c = lookup(cname);
    auto &m = mission();
    const auto &lib = m.library(lname);
    std::vector<const agc::library::Component *> all;
    std::vector<Contract> pool;
    for (const auto &comp : lib.components()) {
      all.push_back(&comp);
      pool.push_back(comp.contract);
    }
    const double sim = agc::library::similarity_score(c, all, m.world);
    const double ref = agc::library::refinement_score(c, pool, ctx_);
    json comps = json::array();
    r.text() << cname << " against " << lname << ":\n"
             << "  similarity of the whole library: " << percent(sim) << '\n'
             << "  refinement score of " << cname << ": " << percent(ref) << '\n';
    for (const auto &comp : lib.components()) {
      const agc::library::Component *one[] = {&comp};
      const double s1 = agc::library::similarity_score(c, one, m.world);
      const double r1 = agc::library::refinement_score(comp.contract, pool, ctx_);
      const bool refines = agc::contract::refines(comp.contract, c, ctx_);
      comps.push_back({{"name", comp.name},
                       {"similarity", s1},
                       {"refinement_score", r1},
                       {"refines_contract", refines}});
      r.text() << "  " << comp.name << ": similarity " << percent(s1)
               << ", refinement score " << percent(r1) << ", refines " << cname
               << ": " << (refines ? "yes" : "no") << '\n';
    }
    r.doc() = {{"command", "score"},
               {"contract", cname},
               {"library", lname},
               {"similarity", sim},
               {"refinement_score", ref},
               {"components", comps}};
    return kOk;
  }

  int realizable(const std::string &cname, const std::vector<std::string> &inputs,
                 const std::vector<std::string> &outputs, Reporter &r) {
    const Contract c = lookup(cname);
    std::optional<agc::engine::SynthAdapter> adapter;
    if (!s_.adapter_cmd.empty()) {
      adapter.emplace(agc::engine::ExternalSynthConfig{
          s_.adapter_cmd, std::chrono::seconds(s_.timeout)});
    }
    const auto res = agc::engine::check_realizability(
        c, mission().world, adapter ? &*adapter : nullptr, inputs, outputs, ctx_);
    const std::string verdict(agc::engine::realizability_name(res.verdict));
    r.doc() = {{"command", "realizable"},
               {"contract", cname},
               {"verdict", verdict},
               {"formula", agc::ltl::print(res.formula)},
               {"inputs", res.inputs},
               {"outputs", res.outputs},
               {"decided_locally", res.decided_locally},
               {"message", res.message}};
    r.text() << verdict << "\nformula: " << agc::ltl::print(res.formula)
             << "\ninputs: " << join(res.inputs) << "\noutputs: "
             << join(res.outputs) << '\n';
    if (!res.message.empty()) r.text() << res.message << '\n';
    switch (res.verdict) {
    case agc::engine::Realizability::Realizable:
      return kOk;
    case agc::engine::Realizability::Unrealizable:
      return kNegative;
    case agc::engine::Realizability::ToolError:
      return kToolError;
    }
    return kToolError;
  }

private:
  Settings s_;
  agc::sat::Solver solver_;
  agc::contract::Context ctx_;
  agc::mission::MissionFile mission_;
  bool loaded_ = false;
};

std::vector<std::string> split_csv(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App cli{"Assume-guarantee contracts for robotic missions"};
  cli.require_subcommand(1);
  Settings s;
  std::uint64_t seed = 0;
  cli.add_option("-m,--mission", s.mission, "Mission file")->envname("AGC_MISSION");
  cli.add_flag("--json", s.json, "Machine-readable report")->envname("AGC_JSON");
  cli.add_option("--ap-cap", s.ap_cap, "Maximum atoms per satisfiability check")
      ->envname("AGC_AP_CAP")
      ->check(CLI::PositiveNumber);
  cli.add_option("--subset-cap", s.subset_cap, "Largest candidate subset")
      ->envname("AGC_SUBSET_CAP")
      ->check(CLI::PositiveNumber);
  auto *seed_opt = cli.add_option("--seed", seed, "Random tie-break with this seed")
                       ->envname("AGC_SEED");
  cli.add_option("--adapter-cmd", s.adapter_cmd,
                 "Synthesizer command; {input} is the input file")
      ->envname("AGC_ADAPTER_CMD");
  cli.add_option("--timeout", s.timeout, "Synthesizer timeout in seconds")
      ->envname("AGC_TIMEOUT")
      ->check(CLI::PositiveNumber);
  cli.add_flag("--dump-automata", s.dump_automata,
               "Print the automata built by 'check' to stderr")
      ->envname("AGC_DUMP_AUTOMATA");
  cli.add_flag("--pairwise-adjacency", s.pairwise_adjacency,
               "Generate one adjacency clause per adjacent pair")
      ->envname("AGC_PAIRWISE_ADJACENCY");

  std::string a, b;
  std::vector<std::string> extra;
  bool repair = false, search = false, least = false;
  std::string inputs, outputs;

  auto *check = cli.add_subcommand("check", "Compatibility, consistency, well-formedness");
  check->add_option("contract", a)->required();
  auto *refines = cli.add_subcommand("refines", "Does the first contract refine the second");
  refines->add_option("refining", a)->required();
  refines->add_option("refined", b)->required();
  std::map<std::string, CLI::App *> ops;
  for (const char *op : {"compose", "quotient", "merge", "separate"}) {
    auto *sub = cli.add_subcommand(op, std::string("Contract ") + op);
    sub->add_option("first", a)->required();
    sub->add_option("second", b)->required();
    ops[op] = sub;
  }
  auto *candidate = cli.add_subcommand("candidate", "Best candidate composition");
  candidate->add_option("contract", a)->required();
  candidate->add_option("library", b)->required();
  candidate->add_flag("--prefer-least-refined", least);
  auto *analyze = cli.add_subcommand("analyze", "Refinement analysis");
  analyze->add_option("contract", a)->required();
  analyze->add_option("library", b)->required();
  analyze->add_option("--extra-lib", extra, "Library for the search procedure");
  auto *rep = analyze->add_flag("--repair", repair, "Force the repair procedure");
  auto *sea = analyze->add_flag("--search", search, "Force the search procedure");
  rep->excludes(sea);
  analyze->add_flag("--prefer-least-refined", least);
  auto *expand = cli.add_subcommand("expand", "Expand a pattern call");
  expand->add_option("call", a)->required();
  auto *score = cli.add_subcommand("score", "Similarity and refinement scores");
  score->add_option("contract", a)->required();
  score->add_option("library", b)->required();
  auto *realizable = cli.add_subcommand("realizable", "Realizability via an external tool");
  realizable->add_option("contract", a)->required();
  realizable->add_option("--inputs", inputs, "Comma-separated input atoms");
  realizable->add_option("--outputs", outputs, "Comma-separated output atoms");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (seed_opt->count() > 0) s.seed = seed;

  Reporter r(s.json);
  int code = kOk;
  try {
    App app(s);
    if (*check) {
      code = app.check(a, r);
    } else if (*refines) {
      code = app.refines(a, b, r);
    } else if (*candidate) {
      code = app.candidate(a, b, least, r);
    } else if (*analyze) {
      code = app.analyze(a, b, extra, repair, search, least, r);
    } else if (*expand) {
      code = app.expand(a, r);
    } else if (*score) {
      code = app.score(a, b, r);
    } else if (*realizable) {
      code = app.realizable(a, split_csv(inputs), split_csv(outputs), r);
    } else {
      for (const auto &[name, sub] : ops) {
        if (*sub) code = app.algebra(name, a, b, r);
      }
    }
  } catch (const agc::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    if (s.json) std::cout << json{{"error", e.what()}}.dump(2) << '\n';
    return kUsage;
  }
  r.flush();
  return code;
}
