#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace nonant {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q", "p" or "-p/q". Throws Error(kValidation) on malformed input.
Rational parse_rational(std::string_view text);

// Canonical short form: "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& r);

// Always "p/q", also for integers. Used for grid stamps in files.
std::string format_rational_pq(const Rational& r);

/// Discretized time interval t_0 < t_1 < ... < t_m.
///
/// Cell k covers [t_k, t_{k+1}); the last cell is closed on the right. Every
/// signal in this library is constant on cells, so a prefix of k cells carries
/// exactly the information of the closed interval [t_0, t_k].
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<Rational> stamps);

  const std::vector<Rational>& stamps() const { return stamps_; }
  std::size_t cell_count() const { return stamps_.size() - 1; }
  Rational width(std::size_t cell) const { return stamps_.at(cell + 1) - stamps_.at(cell); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<Rational> stamps_;
};

/// Initial segment of the grid: the first `len` cells.
struct Prefix {
  std::size_t len = 1;

  friend auto operator<=>(const Prefix&, const Prefix&) = default;
};

// Throws Error(kValidation) unless 1 <= p.len <= grid.cell_count().
void check_prefix(const TimeGrid& grid, Prefix p);

/// Sorted set of stamp indices {0 = i_0 < ... < i_n = m}.
class Partition {
 public:
  // Validates against the grid; throws Error(kInvalidPartition).
  Partition(const TimeGrid& grid, std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t step_count() const { return indices_.size() - 1; }

  // Coarsest (0, m) and finest (0, 1, ..., m) partitions.
  static Partition coarsest(const TimeGrid& grid);
  static Partition finest(const TimeGrid& grid);

 private:
  std::vector<std::size_t> indices_;
};

/// Strictly increasing, non-empty list of prefixes.
class PrefixChain {
 public:
  explicit PrefixChain(std::vector<Prefix> prefixes);

  const std::vector<Prefix>& prefixes() const { return prefixes_; }
  std::size_t size() const { return prefixes_.size(); }
  const Prefix& operator[](std::size_t i) const { return prefixes_[i]; }
  auto begin() const { return prefixes_.begin(); }
  auto end() const { return prefixes_.end(); }

  // Every prefix 1..m of the grid.
  static PrefixChain all(const TimeGrid& grid);

  friend bool operator==(const PrefixChain&, const PrefixChain&) = default;

 private:
  std::vector<Prefix> prefixes_;
};

// H_i = first indices[i] cells, i = 1..n.
PrefixChain partition_to_chain(const TimeGrid& grid, const Partition& delta);

}  // namespace nonant
