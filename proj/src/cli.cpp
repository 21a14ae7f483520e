#include "nonant/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nonant/error.hpp"
#include "nonant/io.hpp"
#include "nonant/nonanticipation.hpp"
#include "nonant/oracle.hpp"
#include "nonant/scenarios.hpp"
#include "nonant/stepwise.hpp"

namespace nonant {

namespace {

using io::Json;

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string report_path;

  std::string file;
  std::size_t prefix = 0;
  std::string delta;
  std::string adversary = "exhaustive";
  std::string policy = "smallest";
  std::string scenario;
  std::string emit;
  std::string rho;
  std::uint64_t budget = oracle::EnumBudget{}.max_multiselectors;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return kExitUsage;
    case ErrorKind::kInfeasible: return kExitInfeasible;
    case ErrorKind::kOracleMismatch: return kExitOracleMismatch;
    case ErrorKind::kBudgetExceeded: return kExitBudget;
    default: return kExitValidation;
  }
}

Partition parse_delta(const TimeGrid& grid, const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::kUsage, "--delta is required");
  std::vector<std::size_t> idx;
  std::istringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      std::size_t pos = 0;
      idx.push_back(std::stoul(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kUsage, "bad --delta entry '" + tok + "'");
    }
  }
  return Partition(grid, std::move(idx));
}

std::string render_set(const Instance& inst, const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + inst.z().name(s[i]);
  return out + "}";
}

void print_mf(std::ostream& out, const Multifunction& a) {
  const Instance& inst = a.instance();
  for (std::size_t w = 0; w < a.size(); ++w) out << "  " << inst.omega().name(w) << " -> " << render_set(inst, a[w]) << "\n";
}

Json na_flags(const Multifunction& a) {
  Json na = Json::object();
  for (std::size_t len = 1; len <= a.instance().grid().cell_count(); ++len) {
    na[std::to_string(len)] = is_prefix_na(a, Prefix{len}).holds;
  }
  return na;
}

Json base_report(const std::string& command, const Multifunction& input, const Multifunction& result) {
  return Json{{"command", command},
              {"inputs_digest", io::digest(input)},
              {"result", io::multifunction_to_json(result)},
              {"flags", Json{{"total", is_total(result)}, {"na", na_flags(result)}}}};
}

Json trace_json(const Instance& inst, const StepTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(Json{{"step", s.step},
                         {"prefix_len", s.prefix_len},
                         {"revealed", inst.omega().render(s.revealed)},
                         {"omega", inst.omega().name(s.omega)},
                         {"h", inst.z().name(s.h)},
                         {"omega_consistent", s.omega_consistent},
                         {"h_consistent", s.h_consistent},
                         {"h_admissible", s.h_admissible}});
  }
  return Json{{"steps", std::move(steps)},
              {"final_omega", inst.omega().name(trace.final_omega)},
              {"final_h", inst.z().name(trace.final_h)}};
}

class Runner {
 public:
  Runner(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err)
      : opt_(opt), in_(in), out_(out), err_(err) {}

  int finish(const Json& report, int code) {
    if (!opt_.report_path.empty()) io::save(report, opt_.report_path);
    if (opt_.json) out_ << report.dump(2) << "\n";
    return code;
  }

  int project_cmd() {
    auto [inst, a] = io::load(opt_.file);
    Prefix p{opt_.prefix};
    auto r = project(a, p);
    Json report = base_report("project", a, r);
    report["prefix"] = p.len;
    if (!opt_.json) {
      out_ << "projection at prefix " << p.len << ":\n";
      print_mf(out_, r);
    }
    return finish(report, kExitOk);
  }

  int compose_cmd() {
    auto [inst, a] = io::load(opt_.file);
    auto delta = parse_delta(inst->grid(), opt_.delta);
    auto chain = partition_to_chain(inst->grid(), delta);
    auto r = compose_chain(a, chain);
    Json report = base_report("compose", a, r);
    report["delta"] = delta.indices();
    if (!opt_.json) {
      out_ << "greatest H_delta-non-anticipative multiselector:\n";
      print_mf(out_, r);
      out_ << "total: " << (is_total(r) ? "yes" : "no") << "\n";
    }
    return finish(report, kExitOk);
  }

  int feasible_cmd() {
    auto [inst, a] = io::load(opt_.file);
    auto delta = parse_delta(inst->grid(), opt_.delta);
    auto f = feasible(a, delta);
    Json report = base_report("feasible", a, f.greatest);
    report["delta"] = delta.indices();
    report["feasible"] = f.feasible;
    Json empty = Json::array();
    for (std::size_t w : f.empty_at) empty.push_back(inst->omega().name(w));
    report["empty_at"] = empty;
    if (!opt_.json) {
      if (f.feasible) {
        out_ << "feasible; witness (used as every phi_i):\n";
        print_mf(out_, f.greatest);
      } else {
        out_ << "infeasible; greatest multiselector is empty at:";
        for (std::size_t w : f.empty_at) out_ << " " << inst->omega().name(w);
        out_ << "\n";
      }
    }
    return finish(report, f.feasible ? kExitOk : kExitInfeasible);
  }

  int greatest_cmd() {
    auto [inst, a] = io::load(opt_.file);
    auto chain = canonical_chain(*inst);
    auto r = greatest_na(a);
    Json report = base_report("greatest", a, r);
    Json lens = Json::array();
    for (const auto& p : chain) lens.push_back(p.len);
    report["canonical_chain"] = lens;
    if (!opt_.json) {
      out_ << "canonical chain:";
      for (const auto& p : chain) out_ << " " << p.len;
      out_ << "\ngreatest non-anticipative multiselector:\n";
      print_mf(out_, r);
      out_ << "total: " << (is_total(r) ? "yes" : "no") << "\n";
    }
    return finish(report, kExitOk);
  }

  SelectorPolicy policy() const {
    if (opt_.policy == "smallest") return SelectorPolicy::smallest();
    if (opt_.policy == "random") return SelectorPolicy::seeded(opt_.seed);
    throw Error(ErrorKind::kUsage, "unknown --policy '" + opt_.policy + "'");
  }

  int simulate_cmd() {
    auto [inst, a] = io::load(opt_.file);
    auto delta = parse_delta(inst->grid(), opt_.delta);
    Json report = Json{{"command", "simulate"}, {"inputs_digest", io::digest(a)}, {"delta", delta.indices()}};

    auto f = feasible(a, delta);
    if (!f.feasible) {
      Json empty = Json::array();
      for (std::size_t w : f.empty_at) empty.push_back(inst->omega().name(w));
      report["feasible"] = false;
      report["empty_at"] = empty;
      err_ << "infeasible: greatest multiselector is empty at " << inst->omega().name(f.empty_at.front()) << "\n";
      return finish(report, kExitInfeasible);
    }
    report["feasible"] = true;

    if (opt_.adversary == "exhaustive") {
      Json traces = Json::array();
      bool all_ok = true;
      for (const auto& path : revelation_paths(*inst, delta)) {
        PathAdversary adv(path);
        auto trace = run_stepwise(a, delta, adv, policy());
        const std::string problem = validate_trace(trace, a, delta);
        all_ok = all_ok && problem.empty();
        Json t = trace_json(*inst, trace);
        t["valid"] = problem.empty();
        if (!opt_.json) {
          out_ << inst->omega().name(trace.final_omega) << " -> " << inst->z().name(trace.final_h)
               << (problem.empty() ? "" : "  INVALID: " + problem) << "\n";
        }
        traces.push_back(std::move(t));
      }
      report["traces"] = std::move(traces);
      report["all_valid"] = all_ok;
      return finish(report, all_ok ? kExitOk : kExitOracleMismatch);
    }

    std::unique_ptr<Adversary> adv;
    StepObserver echo;
    const bool interactive = opt_.adversary == "interactive";
    if (interactive) {
      adv = std::make_unique<InteractiveAdversary>(in_, err_);
      echo = [&, inst = inst](const TraceStep& s) {
        auto key = restrict(inst->z().signal(s.h), Prefix{s.prefix_len});
        out_ << "h " << inst->z().name(s.h);
        for (const auto& tok : inst->z().render(key)) out_ << " " << tok;
        out_ << "\n" << std::flush;
      };
    } else if (opt_.adversary.rfind("scripted:", 0) == 0) {
      adv = std::make_unique<ScriptedAdversary>(inst->omega().index_of(opt_.adversary.substr(9)));
    } else {
      throw Error(ErrorKind::kUsage, "unknown --adversary '" + opt_.adversary + "'");
    }
    auto trace = run_stepwise(a, delta, *adv, policy(), echo);
    const std::string problem = validate_trace(trace, a, delta);
    report["trace"] = trace_json(*inst, trace);
    report["trace"]["valid"] = problem.empty();
    if (interactive) {
      out_ << report["trace"].dump() << "\n";
    } else if (!opt_.json) {
      for (const auto& s : trace.steps) {
        out_ << "step " << s.step << ": w=" << inst->omega().name(s.omega) << " h=" << inst->z().name(s.h) << "\n";
      }
      out_ << "final: " << inst->z().name(trace.final_h) << (problem.empty() ? "" : "  INVALID: " + problem) << "\n";
    }
    return finish(report, problem.empty() ? kExitOk : kExitOracleMismatch);
  }

  int oracle_cmd() {
    auto [inst, a] = io::load(opt_.file);
    auto delta = parse_delta(inst->grid(), opt_.delta);
    auto chain = partition_to_chain(inst->grid(), delta);
    oracle::EnumBudget budget;
    budget.max_multiselectors = opt_.budget;
    auto fast = compose_chain(a, chain);
    auto brute = oracle::brute_greatest(a, chain, budget, {opt_.threads, false});
    const bool match = fast == brute;
    Json report = base_report("oracle", a, fast);
    report["delta"] = delta.indices();
    report["oracle"] = io::multifunction_to_json(brute);
    report["match"] = match;
    if (!opt_.json) {
      out_ << (match ? "match" : "MISMATCH") << ": compose_chain vs brute-force greatest\n";
      if (!match) {
        out_ << "compose_chain:\n";
        print_mf(out_, fast);
        out_ << "oracle:\n";
        print_mf(out_, brute);
      }
    }
    return finish(report, match ? kExitOk : kExitOracleMismatch);
  }

  int scenario_cmd() {
    std::optional<Rational> rho;
    if (!opt_.rho.empty()) rho = parse_rational(opt_.rho);
    auto [inst, a] = scenarios::by_name(opt_.scenario, rho);
    Json meta = Json{{"scenario", opt_.scenario}};
    if (rho) meta["rho"] = format_rational(*rho);
    io::save_instance(a, opt_.emit, meta);
    Json report = Json{{"command", "scenario"}, {"inputs_digest", io::digest(a)}, {"emit", opt_.emit}};
    if (!opt_.json) out_ << "wrote " << opt_.emit << " (digest " << io::digest(a) << ")\n";
    return finish(report, kExitOk);
  }

  int check_cmd() {
    auto [inst, a] = io::load(opt_.file);
    oracle::EnumBudget budget;
    budget.max_multiselectors = opt_.budget;
    Json results = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
      all = all && ok;
      results.push_back(Json{{"check", name}, {"pass", ok}});
      if (!opt_.json) out_ << (ok ? "PASS " : "FAIL ") << name << "\n";
    };

    const auto& grid = inst->grid();
    const auto all_prefixes = PrefixChain::all(grid);
    for (const Prefix& p : all_prefixes) {
      const std::string at = " @" + std::to_string(p.len);
      auto r = project(a, p);
      record("non-expansive" + at, mf_le(r, a));
      record("idempotent" + at, project(r, p) == r);
      record("projection is na" + at, is_prefix_na(r, p).holds);
      record("fixed point iff na" + at, (r == a) == is_prefix_na(a, p).holds);
    }
    auto composed = compose_chain(a, all_prefixes);
    record("greatest_na equals all-prefix composition", greatest_na(a) == composed);
    record("composition below meet of projections", mf_le(composed, meet_of_projections(a, all_prefixes)));
    auto brute = oracle::brute_greatest(a, all_prefixes, budget, {opt_.threads, false});
    record("composition equals brute-force greatest", composed == brute);
    for (auto schedule : {oracle::Schedule::kAscending, oracle::Schedule::kShuffled}) {
      auto fp = oracle::fixpoint_iterate(a, all_prefixes, schedule, budget, opt_.seed);
      record(std::string("fixpoint ") + (schedule == oracle::Schedule::kAscending ? "ascending" : "shuffled") +
                 " reaches composition",
             fp.result == composed);
    }
    for (const auto& [label, delta] : {std::pair{"coarsest", Partition::coarsest(grid)},
                                       std::pair{"finest", Partition::finest(grid)}}) {
      auto f = feasible(a, delta);
      const bool game = revelation_game_winnable(a, delta);
      std::vector<Multifunction> phis(delta.step_count(), f.greatest);
      const bool witness = verify_witness(phis, delta, a).ok;
      record(std::string("feasibility equivalence, ") + label + " partition",
             f.feasible == game && f.feasible == witness);
    }
    Json report = Json{{"command", "check"}, {"inputs_digest", io::digest(a)}, {"checks", results}, {"pass", all}};
    return finish(report, all ? kExitOk : kExitOracleMismatch);
  }

 private:
  const Options& opt_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Partially non-anticipative multiselectors over finite function spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json, "Print the report as JSON");
  app.add_option("--seed", opt.seed, "Seed for randomized policies and schedules");
  app.add_option("--threads", opt.threads, "Worker threads for brute-force enumeration")->check(CLI::PositiveNumber);
  app.add_option("--report", opt.report_path, "Also write the JSON report to this path");

  auto* project = app.add_subcommand("project", "Greatest multiselector non-anticipative at one prefix");
  project->add_option("file", opt.file)->required();
  project->add_option("--prefix", opt.prefix, "Prefix length in cells")->required();

  auto* compose = app.add_subcommand("compose", "Greatest multiselector non-anticipative on a partition chain");
  compose->add_option("file", opt.file)->required();
  compose->add_option("--delta", opt.delta, "Partition as stamp indices, e.g. 0,1,3")->required();

  auto* feas = app.add_subcommand("feasible", "Decide feasibility of the step-by-step procedure");
  feas->add_option("file", opt.file)->required();
  feas->add_option("--delta", opt.delta)->required();

  auto* greatest = app.add_subcommand("greatest", "Greatest fully non-anticipative multiselector");
  greatest->add_option("file", opt.file)->required();

  auto* simulate = app.add_subcommand("simulate", "Run the step-by-step procedure against an adversary");
  simulate->add_option("file", opt.file)->required();
  simulate->add_option("--delta", opt.delta)->required();
  simulate->add_option("--adversary", opt.adversary, "scripted:<name> | interactive | exhaustive");
  simulate->add_option("--policy", opt.policy, "smallest | random");

  auto* orc = app.add_subcommand("oracle", "Cross-check composition against brute-force enumeration");
  orc->add_option("file", opt.file)->required();
  orc->add_option("--delta", opt.delta)->required();
  orc->add_option("--budget", opt.budget, "Maximum enumeration candidates");

  auto* scen = app.add_subcommand("scenario", "Emit a built-in scenario as an instance file");
  scen->add_option("name", opt.scenario, "ex1 | ex2 | ex3:<n> | ex4[:levels] | random:<seed>:<sizes>")->required();
  scen->add_option("--emit", opt.emit, "Output path")->required();
  scen->add_option("--rho", opt.rho, "ex4 only: build alpha at this rho instead of the optimum");

  auto* check = app.add_subcommand("check", "Run the invariant suite on one instance");
  check->add_option("file", opt.file)->required();
  check->add_option("--budget", opt.budget, "Maximum enumeration candidates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Runner runner(opt, in, out, err);
  try {
    if (*project) return runner.project_cmd();
    if (*compose) return runner.compose_cmd();
    if (*feas) return runner.feasible_cmd();
    if (*greatest) return runner.greatest_cmd();
    if (*simulate) return runner.simulate_cmd();
    if (*orc) return runner.oracle_cmd();
    if (*scen) return runner.scenario_cmd();
    if (*check) return runner.check_cmd();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return kExitUsage;
}

}  // namespace nonant
