#include <doctest.h>

#include <random>
#include <set>

#include "nonant/signals.hpp"
#include "support.hpp"

using namespace nonant;
using Members = std::vector<SignalFamily::Member>;

TEST_CASE("symbol table interns tokens once") {
  SymbolTable t;
  auto a = t.intern("a");
  auto b = t.intern("b");
  CHECK(t.intern("a") == a);
  CHECK(a != b);
  CHECK(t.size() == 2);
  CHECK(t.token(b) == "b");
}

TEST_CASE("family validation") {
  CHECK_ERROR_KIND(SignalFamily(FamilyRole::kDisturbance, 2, Members{}), ErrorKind::kValidation);
  CHECK_ERROR_KIND(SignalFamily(FamilyRole::kDisturbance, 2, Members{{"x", {"0"}}}), ErrorKind::kValidation);
  CHECK_ERROR_KIND(SignalFamily(FamilyRole::kDisturbance, 1, Members{{"x", {"0"}}, {"x", {"1"}}}),
                   ErrorKind::kValidation);
  CHECK_ERROR_KIND(SignalFamily(FamilyRole::kDisturbance, 1, Members{{"x", {"0"}}, {"y", {"0"}}}),
                   ErrorKind::kValidation);
  SignalFamily f(FamilyRole::kTrajectory, 2, Members{{"x", {"0", "1"}}, {"y", {"0", "2"}}});
  CHECK(f.index_of("y") == 1);
  CHECK_ERROR_KIND(f.index_of("z"), ErrorKind::kValidation);
  CHECK(f.tokens(1) == std::vector<std::string>{"0", "2"});
  CHECK(f.render(restrict(f.signal(1), Prefix{1})) == std::vector<std::string>{"0"});
}

TEST_CASE("classes and common prefixes on a small family") {
  SignalFamily f(FamilyRole::kDisturbance, 3,
                 Members{{"a", {"0", "1", "1"}}, {"b", {"0", "0", "1"}}, {"c", {"0", "0", "0"}}, {"d", {"1", "0", "0"}}});
  CHECK(equiv_class(f, 0, Prefix{1}) == std::vector<std::size_t>{0, 1, 2});
  CHECK(equiv_class(f, 1, Prefix{2}) == std::vector<std::size_t>{1, 2});
  CHECK(equiv_class(f, 3, Prefix{1}) == std::vector<std::size_t>{3});
  CHECK(f.class_count(Prefix{1}) == 2);
  CHECK(f.class_count(Prefix{2}) == 3);
  CHECK(f.class_count(Prefix{3}) == 4);
  CHECK(f.common_prefix_len(0, 1) == 1);
  CHECK(f.common_prefix_len(1, 2) == 2);
  CHECK(f.common_prefix_len(2, 3) == 0);
  CHECK(f.common_prefix_len(2, 2) == 3);

  std::vector<std::size_t> all{0, 1, 2, 3};
  auto keys = restriction_set(f, all, Prefix{2});
  CHECK(keys.size() == 3);
  CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("class ids agree with raw cell comparison, classes partition the family and refine with length") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = testsupport::random_case(rng);
    const auto& fam = c.inst->omega();
    const std::size_t m = fam.cell_count();
    for (std::size_t len = 1; len <= m; ++len) {
      Prefix p{len};
      std::set<std::size_t> seen;
      for (const auto& cls : equiv_classes(fam, p)) {
        for (std::size_t i : cls) CHECK(seen.insert(i).second);
      }
      CHECK(seen.size() == fam.size());
      for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = 0; j < fam.size(); ++j) {
          const bool same = testsupport::ref::agree(fam.signal(i), fam.signal(j), len);
          CHECK((fam.class_id(p, i) == fam.class_id(p, j)) == same);
          CHECK((restrict(fam.signal(i), p) == restrict(fam.signal(j), p)) == same);
          if (len > 1 && same) {
            CHECK(fam.class_id(Prefix{len - 1}, i) == fam.class_id(Prefix{len - 1}, j));
          }
        }
      }
    }
  }
}
