#include <doctest.h>

#include <random>

#include "nonant/timebase.hpp"
#include "support.hpp"

using namespace nonant;

namespace {

TimeGrid integer_grid(std::size_t cells) {
  std::vector<Rational> s;
  for (std::size_t k = 0; k <= cells; ++k) s.emplace_back(static_cast<std::int64_t>(k));
  return TimeGrid(s);
}

}  // namespace

TEST_CASE("rationals parse and format exactly") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("+4") == Rational(4));
  CHECK(format_rational(Rational(-7, 2)) == "-7/2");
  CHECK(format_rational(Rational(3)) == "3");
  CHECK(format_rational_pq(Rational(3)) == "3/1");
  CHECK_ERROR_KIND(parse_rational("1/0"), ErrorKind::kValidation);
  CHECK_ERROR_KIND(parse_rational("x"), ErrorKind::kValidation);
  CHECK_ERROR_KIND(parse_rational(""), ErrorKind::kValidation);
  CHECK_ERROR_KIND(parse_rational("1/2/3"), ErrorKind::kValidation);
}

TEST_CASE("time grid") {
  TimeGrid g({Rational(0), Rational(1), Rational(3, 2), Rational(2)});
  CHECK(g.cell_count() == 3);
  CHECK(g.width(1) == Rational(1, 2));
  CHECK_ERROR_KIND(TimeGrid({Rational(0)}), ErrorKind::kValidation);
  CHECK_ERROR_KIND(TimeGrid({Rational(0), Rational(2), Rational(1)}), ErrorKind::kValidation);
  CHECK_ERROR_KIND(TimeGrid({Rational(0), Rational(0)}), ErrorKind::kValidation);
}

TEST_CASE("prefix validity") {
  auto g = integer_grid(3);
  CHECK_NOTHROW(check_prefix(g, Prefix{1}));
  CHECK_NOTHROW(check_prefix(g, Prefix{3}));
  CHECK_ERROR_KIND(check_prefix(g, Prefix{0}), ErrorKind::kValidation);
  CHECK_ERROR_KIND(check_prefix(g, Prefix{4}), ErrorKind::kValidation);
}

TEST_CASE("partitions") {
  auto g = integer_grid(3);
  Partition p(g, {3, 1, 0, 1});
  CHECK(p.indices() == std::vector<std::size_t>{0, 1, 3});
  CHECK(p.step_count() == 2);
  CHECK(Partition::coarsest(g).indices() == std::vector<std::size_t>{0, 3});
  CHECK(Partition::finest(g).indices() == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK_ERROR_KIND(Partition(g, {1, 3}), ErrorKind::kInvalidPartition);
  CHECK_ERROR_KIND(Partition(g, {0, 2}), ErrorKind::kInvalidPartition);
  CHECK_ERROR_KIND(Partition(g, {0, 1, 5}), ErrorKind::kInvalidPartition);
}

TEST_CASE("prefix chains") {
  auto g = integer_grid(4);
  CHECK(PrefixChain::all(g).size() == 4);
  CHECK_ERROR_KIND(PrefixChain({}), ErrorKind::kValidation);
  CHECK_ERROR_KIND(PrefixChain({Prefix{2}, Prefix{2}}), ErrorKind::kValidation);
  CHECK_ERROR_KIND(PrefixChain({Prefix{3}, Prefix{1}}), ErrorKind::kValidation);

  auto chain = partition_to_chain(g, Partition(g, {0, 1, 3, 4}));
  REQUIRE(chain.size() == 3);
  CHECK(chain[0].len == 1);
  CHECK(chain[1].len == 3);
  CHECK(chain[2].len == 4);
  CHECK(partition_to_chain(g, Partition::coarsest(g)).size() == 1);
}

TEST_CASE("refining a partition only adds chain prefixes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = integer_grid(1 + rng() % 6);
    auto coarse = testsupport::random_partition(g, rng);
    auto idx = coarse.indices();
    for (std::size_t k = 1; k < g.cell_count(); ++k) {
      if (rng() % 3 == 0) idx.push_back(k);
    }
    Partition fine(g, idx);
    auto c1 = partition_to_chain(g, coarse);
    auto c2 = partition_to_chain(g, fine);
    for (const auto& p : c1) {
      CHECK(std::find(c2.begin(), c2.end(), p) != c2.end());
    }
    CHECK(c1.size() == coarse.step_count());
  }
}
