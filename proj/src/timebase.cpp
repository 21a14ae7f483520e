#include "nonant/timebase.hpp"

#include <algorithm>
#include <charconv>

#include "nonant/error.hpp"

namespace nonant {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw Error(ErrorKind::kValidation, "malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorKind::kValidation, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_rational_pq(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

TimeGrid::TimeGrid(std::vector<Rational> stamps) : stamps_(std::move(stamps)) {
  if (stamps_.size() < 2) throw Error(ErrorKind::kValidation, "grid needs at least 2 stamps");
  for (std::size_t k = 1; k < stamps_.size(); ++k) {
    if (!(stamps_[k - 1] < stamps_[k])) {
      throw Error(ErrorKind::kValidation,
                  "grid stamps not strictly increasing at index " + std::to_string(k));
    }
  }
}

void check_prefix(const TimeGrid& grid, Prefix p) {
  if (p.len < 1 || p.len > grid.cell_count()) {
    throw Error(ErrorKind::kValidation, "prefix length " + std::to_string(p.len) +
                                            " outside 1.." + std::to_string(grid.cell_count()));
  }
}

Partition::Partition(const TimeGrid& grid, std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  const std::size_t m = grid.cell_count();
  if (!indices_.empty() && indices_.back() > m) {
    throw Error(ErrorKind::kInvalidPartition, "partition index " + std::to_string(indices_.back()) +
                                                  " out of range 0.." + std::to_string(m));
  }
  if (indices_.size() < 2 || indices_.front() != 0 || indices_.back() != m) {
    throw Error(ErrorKind::kInvalidPartition,
                "partition must contain stamp indices 0 and " + std::to_string(m));
  }
}

Partition Partition::coarsest(const TimeGrid& grid) { return Partition(grid, {0, grid.cell_count()}); }

Partition Partition::finest(const TimeGrid& grid) {
  std::vector<std::size_t> idx(grid.cell_count() + 1);
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  return Partition(grid, std::move(idx));
}

PrefixChain::PrefixChain(std::vector<Prefix> prefixes) : prefixes_(std::move(prefixes)) {
  if (prefixes_.empty()) throw Error(ErrorKind::kValidation, "empty prefix chain");
  for (std::size_t i = 0; i < prefixes_.size(); ++i) {
    if (prefixes_[i].len == 0) throw Error(ErrorKind::kValidation, "prefix of length 0");
    if (i > 0 && !(prefixes_[i - 1] < prefixes_[i])) {
      throw Error(ErrorKind::kValidation, "prefix chain not strictly increasing");
    }
  }
}

PrefixChain PrefixChain::all(const TimeGrid& grid) {
  std::vector<Prefix> ps;
  for (std::size_t len = 1; len <= grid.cell_count(); ++len) ps.push_back(Prefix{len});
  return PrefixChain(std::move(ps));
}

PrefixChain partition_to_chain(const TimeGrid& grid, const Partition& delta) {
  std::vector<Prefix> ps;
  for (std::size_t i = 1; i < delta.indices().size(); ++i) {
    std::size_t len = delta.indices()[i];
    if (len > grid.cell_count()) {
      throw Error(ErrorKind::kInvalidPartition, "partition index out of range for grid");
    }
    ps.push_back(Prefix{len});
  }
  return PrefixChain(std::move(ps));
}

}  // namespace nonant
