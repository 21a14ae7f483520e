#include <doctest.h>

#include <random>
#include <sstream>

#include "nonant/stepwise.hpp"
#include "support.hpp"

using namespace nonant;

namespace {

using Members = std::vector<SignalFamily::Member>;

class BogusAdversary : public Adversary {
 public:
  std::vector<SymbolId> reveal(const Instance&, std::size_t, const RestrictionKey& revealed,
                               std::size_t target_len) override {
    return std::vector<SymbolId>(target_len - revealed.cells.size(), SymbolId{999});
  }
};

}  // namespace

TEST_CASE("example 4: scripted v1 ends on the optimal control") {
  auto [inst, a] = scenarios::by_name("ex4");
  Partition delta(inst->grid(), {0, 1, 3});
  ScriptedAdversary adv(inst->omega().index_of("v1"));
  auto trace = run_stepwise(a, delta, adv);
  CHECK(validate_trace(trace, a, delta).empty());
  CHECK(trace.final_omega == inst->omega().index_of("v1"));
  CHECK(inst->z().tokens(trace.final_h) == std::vector<std::string>{"1/2", "1", "1"});
  CHECK(trace.steps.size() == 2);

  ScriptedAdversary adv2(inst->omega().index_of("v2"));
  auto trace2 = run_stepwise(a, delta, adv2);
  CHECK(inst->z().tokens(trace2.final_h) == std::vector<std::string>{"1/2", "-1", "-1"});
  CHECK(inst->z().tokens(trace2.steps[0].h)[0] == "1/2");
}

TEST_CASE("example 3: scripted v2 ends on some u_i with i >= 2") {
  auto [inst, a] = scenarios::build_example3(3);
  const std::size_t mid = scenarios::example3_stamp_index(3, 2);
  Partition delta(inst->grid(), {0, mid, inst->grid().cell_count()});
  ScriptedAdversary adv(inst->omega().index_of("v2"));
  auto trace = run_stepwise(a, delta, adv);
  CHECK(validate_trace(trace, a, delta).empty());
  const std::string name = inst->z().name(trace.final_h);
  CHECK((name == "u2" || name == "u3"));
}

TEST_CASE("single disturbance: one step, admissible choice") {
  TimeGrid g({Rational(0), Rational(1), Rational(2)});
  auto inst = make_instance(g, SignalFamily(FamilyRole::kDisturbance, 2, Members{{"w", {"0", "0"}}}),
                            SignalFamily(FamilyRole::kTrajectory, 2, Members{{"x", {"0", "0"}}, {"y", {"1", "0"}}}));
  Multifunction a(inst, {{1}});
  ScriptedAdversary adv(0);
  auto trace = run_stepwise(a, Partition::coarsest(g), adv);
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.final_h == 1);
  CHECK(validate_trace(trace, a, Partition::coarsest(g)).empty());
}

TEST_CASE("infeasible conditions and inconsistent adversaries are errors") {
  auto [inst, a] = scenarios::by_name("ex4", Rational(-15, 4));
  Partition delta(inst->grid(), {0, 1, 3});
  ScriptedAdversary adv(0);
  CHECK_ERROR_KIND(run_stepwise(a, delta, adv), ErrorKind::kInfeasible);

  auto [inst2, a2] = scenarios::by_name("ex4");
  BogusAdversary bogus;
  CHECK_ERROR_KIND(run_stepwise(a2, Partition(inst2->grid(), {0, 1, 3}), bogus), ErrorKind::kAdversaryInconsistency);
}

TEST_CASE("interactive adversary protocol") {
  auto [inst, a] = scenarios::by_name("ex4");
  Partition delta(inst->grid(), {0, 1, 3});
  {
    std::istringstream in("0\n#1\n");
    std::ostringstream prompt;
    InteractiveAdversary adv(in, prompt);
    auto trace = run_stepwise(a, delta, adv);
    CHECK(validate_trace(trace, a, delta).empty());
    CHECK(prompt.str().find("#0") != std::string::npos);
    CHECK(trace.final_omega < 2);
  }
  {
    std::istringstream in("7\n");
    std::ostringstream prompt;
    InteractiveAdversary adv(in, prompt);
    CHECK_ERROR_KIND(run_stepwise(a, delta, adv), ErrorKind::kAdversaryInconsistency);
  }
  {
    std::istringstream in("#0\n#5\n");
    std::ostringstream prompt;
    InteractiveAdversary adv(in, prompt);
    CHECK_ERROR_KIND(run_stepwise(a, delta, adv), ErrorKind::kAdversaryInconsistency);
  }
  {
    std::istringstream in("");
    std::ostringstream prompt;
    InteractiveAdversary adv(in, prompt);
    CHECK_ERROR_KIND(run_stepwise(a, delta, adv), ErrorKind::kAdversaryInconsistency);
  }
}

TEST_CASE("legal extensions and revelation paths") {
  auto [inst, a] = scenarios::build_example2();
  auto exts = legal_extensions(*inst, RestrictionKey{}, 1);
  CHECK(exts.size() == 1);
  auto finest = Partition::finest(inst->grid());
  CHECK(revelation_paths(*inst, finest).size() == inst->omega().size());
  CHECK(revelation_paths(*inst, Partition::coarsest(inst->grid())).size() == inst->omega().size());
}

TEST_CASE("omega-delta tuples match the naive filter") {
  auto [inst2, a2] = scenarios::build_example2();
  auto finest = Partition::finest(inst2->grid());
  auto tuples2 = enumerate_omega_delta(*inst2, finest);
  std::sort(tuples2.begin(), tuples2.end());
  CHECK(tuples2 == testsupport::ref::omega_delta(*inst2, finest));

  std::mt19937_64 rng(301);
  for (int i = 0; i < 200; ++i) {
    auto c = testsupport::random_case(rng);
    auto d = testsupport::random_partition(c.inst->grid(), rng);
    auto got = enumerate_omega_delta(*c.inst, d);
    std::sort(got.begin(), got.end());
    CHECK(got == testsupport::ref::omega_delta(*c.inst, d));
    if (d.step_count() == 1) CHECK(got.size() == c.inst->omega().size());
  }

  TimeGrid g({Rational(0), Rational(1), Rational(2)});
  auto inst = make_instance(
      g, SignalFamily(FamilyRole::kDisturbance, 2, Members{{"a", {"0", "0"}}, {"b", {"1", "0"}}, {"c", {"2", "0"}}}),
      SignalFamily(FamilyRole::kTrajectory, 2, Members{{"x", {"0", "0"}}}));
  auto tuples = enumerate_omega_delta(*inst, Partition::finest(g));
  CHECK(tuples.size() == 3);
  for (const auto& t : tuples) CHECK(t[0] == t[1]);
}

TEST_CASE("witness verification") {
  auto [inst, alpha] = scenarios::build_example2();
  auto finest = Partition::finest(inst->grid());
  auto f = feasible(alpha, finest);
  REQUIRE(f.feasible);
  std::vector<Multifunction> good(finest.step_count(), f.greatest);
  CHECK(verify_witness(good, finest, alpha).ok);

  std::vector<Multifunction> raw(finest.step_count(), alpha);
  auto bad = verify_witness(raw, finest, alpha);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violation);
  CHECK(bad.violation->kind == WitnessViolation::Kind::kRestrictionMismatch);

  std::vector<Multifunction> over(finest.step_count(), Multifunction::full(inst));
  auto not_sub = verify_witness(over, finest, alpha);
  REQUIRE(not_sub.violation);
  CHECK(not_sub.violation->kind == WitnessViolation::Kind::kNotMultiselector);

  std::vector<Multifunction> empty(finest.step_count(), Multifunction(inst));
  auto e = verify_witness(empty, finest, alpha);
  REQUIRE(e.violation);
  CHECK(e.violation->kind == WitnessViolation::Kind::kEmptyValue);

  auto coarse = Partition::coarsest(inst->grid());
  CHECK(verify_witness({alpha}, coarse, alpha).ok);
  CHECK_ERROR_KIND(verify_witness(good, coarse, alpha), ErrorKind::kValidation);
}

TEST_CASE("validator catches a tampered trace") {
  auto [inst, a] = scenarios::by_name("ex4");
  Partition delta(inst->grid(), {0, 1, 3});
  ScriptedAdversary adv(0);
  auto trace = run_stepwise(a, delta, adv);
  REQUIRE(validate_trace(trace, a, delta).empty());
  auto t2 = trace;
  t2.final_h = inst->z().index_of("u(-1,-1,-1)");
  t2.steps.back().h = t2.final_h;
  CHECK_FALSE(validate_trace(t2, a, delta).empty());
}

TEST_CASE("feasibility agrees with the revelation game, the witness check and every stepwise run") {
  std::mt19937_64 rng(302);
  int feasible_seen = 0;
  for (int i = 0; i < 200; ++i) {
    auto c = testsupport::random_case(rng);
    auto d = testsupport::random_partition(c.inst->grid(), rng);
    auto f = feasible(c.a, d);
    feasible_seen += f.feasible;
    CHECK(revelation_game_winnable(c.a, d) == f.feasible);
    std::vector<Multifunction> phis(d.step_count(), f.greatest);
    CHECK(verify_witness(phis, d, c.a).ok == f.feasible);
    for (const auto& path : revelation_paths(*c.inst, d)) {
      PathAdversary adv(path);
      if (f.feasible) {
        auto policy = (i % 2) ? SelectorPolicy::seeded(c.seed) : SelectorPolicy::smallest();
        auto trace = run_stepwise(c.a, d, adv, policy);
        CHECK(validate_trace(trace, c.a, d).empty());
      } else {
        CHECK_ERROR_KIND(run_stepwise(c.a, d, adv), ErrorKind::kInfeasible);
      }
    }
  }
  CHECK(feasible_seen > 0);
  CHECK(feasible_seen < 200);
}
