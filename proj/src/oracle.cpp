#include "nonant/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <set>

#include "nonant/error.hpp"
#include "nonant/nonanticipation.hpp"

namespace nonant::oracle {

namespace {

using Cells = std::vector<SymbolId>;
using KeySet = std::vector<Cells>;  // sorted, unique

bool agree_prefix(const Signal& a, const Signal& b, std::size_t len) {
  return std::equal(a.cells.begin(), a.cells.begin() + len, b.cells.begin());
}

KeySet key_set(const SignalFamily& z, const IndexSet& value, std::size_t len) {
  std::set<Cells> keys;
  for (std::size_t h : value) {
    const auto& c = z.signal(h).cells;
    keys.emplace(c.begin(), c.begin() + len);
  }
  return {keys.begin(), keys.end()};
}

// Advances `pos` (strictly increasing positions in [0, n)) to the next
// combination of the same size in lexicographic order.
bool next_combination(std::vector<std::size_t>& pos, std::size_t n) {
  const std::size_t k = pos.size();
  for (std::size_t i = k; i-- > 0;) {
    if (pos[i] < n - k + i) {
      ++pos[i];
      for (std::size_t j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Calls fn(subset) for every subset of `value`, largest first.
template <typename Fn>
bool for_each_subset_desc(const IndexSet& value, Fn&& fn) {
  const std::size_t n = value.size();
  for (std::size_t size = n + 1; size-- > 0;) {
    std::vector<std::size_t> pos(size);
    for (std::size_t i = 0; i < size; ++i) pos[i] = i;
    do {
      IndexSet subset;
      subset.reserve(size);
      for (std::size_t p : pos) subset.push_back(value[p]);
      if (!fn(subset)) return false;
    } while (size > 0 && next_combination(pos, n));
  }
  return true;
}

// Depth-first assignment of subsets to disturbances 0..n-1, pruning any
// partial assignment that already violates non-anticipativity on the chain.
class Enumerator {
 public:
  Enumerator(const Multifunction& a, const PrefixChain& h, const EnumBudget& budget,
             std::atomic<std::uint64_t>& work)
      : a_(a), budget_(budget), work_(work) {
    const Instance& inst = a.instance();
    const auto& omega = inst.omega();
    for (const Prefix& p : h) lens_.push_back(p.len);
    agree_.assign(lens_.size(), std::vector<std::vector<char>>(omega.size(), std::vector<char>(omega.size())));
    for (std::size_t pi = 0; pi < lens_.size(); ++pi) {
      for (std::size_t w = 0; w < omega.size(); ++w) {
        for (std::size_t v = 0; v < omega.size(); ++v) {
          agree_[pi][w][v] = agree_prefix(omega.signal(w), omega.signal(v), lens_[pi]);
        }
      }
    }
    chosen_.assign(omega.size(), {});
    keys_.assign(omega.size(), {});
  }

  // visit(chosen) -> bool continue
  template <typename Visit>
  bool run(std::size_t w, Visit&& visit) {
    if (w == chosen_.size()) return visit(chosen_);
    const auto& z = a_.instance().z();
    return for_each_subset_desc(a_[w], [&](const IndexSet& subset) {
      if (++work_ > budget_.max_multiselectors) {
        throw Error(ErrorKind::kBudgetExceeded, "multiselector enumeration exceeded " +
                                                    std::to_string(budget_.max_multiselectors) + " candidates");
      }
      std::vector<KeySet> keys(lens_.size());
      for (std::size_t pi = 0; pi < lens_.size(); ++pi) keys[pi] = key_set(z, subset, lens_[pi]);
      for (std::size_t v = 0; v < w; ++v) {
        for (std::size_t pi = 0; pi < lens_.size(); ++pi) {
          if (agree_[pi][w][v] && keys[pi] != keys_[v][pi]) return true;  // prune, try next subset
        }
      }
      chosen_[w] = subset;
      keys_[w] = std::move(keys);
      return run(w + 1, visit);
    });
  }

  // Only the subsets of a(0) at positions [begin, end) in descending order.
  template <typename Visit>
  bool run_first_slice(std::size_t begin, std::size_t end, Visit&& visit) {
    const auto& z = a_.instance().z();
    std::size_t index = 0;
    return for_each_subset_desc(a_[0], [&](const IndexSet& subset) {
      const std::size_t mine = index++;
      if (mine < begin) return true;
      if (mine >= end) return false;
      if (++work_ > budget_.max_multiselectors) {
        throw Error(ErrorKind::kBudgetExceeded, "multiselector enumeration exceeded " +
                                                    std::to_string(budget_.max_multiselectors) + " candidates");
      }
      chosen_[0] = subset;
      keys_[0].assign(lens_.size(), {});
      for (std::size_t pi = 0; pi < lens_.size(); ++pi) keys_[0][pi] = key_set(z, subset, lens_[pi]);
      return run(1, visit);
    });
  }

 private:
  const Multifunction& a_;
  const EnumBudget& budget_;
  std::atomic<std::uint64_t>& work_;
  std::vector<std::size_t> lens_;
  std::vector<std::vector<std::vector<char>>> agree_;
  std::vector<IndexSet> chosen_;
  std::vector<std::vector<KeySet>> keys_;
};

}  // namespace

std::uint64_t multiselector_space(const Multifunction& a) {
  std::uint64_t total = 1;
  for (const auto& v : a.values()) {
    if (v.size() >= 64) return std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t factor = std::uint64_t{1} << v.size();
    if (total > std::numeric_limits<std::uint64_t>::max() / factor) return std::numeric_limits<std::uint64_t>::max();
    total *= factor;
  }
  return total;
}

void enumerate_na_multiselectors(const Multifunction& a, const PrefixChain& h, const EnumBudget& budget,
                                 const std::function<bool(const Multifunction&)>& visit) {
  check_prefix(a.instance().grid(), h.prefixes().back());
  std::atomic<std::uint64_t> work{0};
  Enumerator e(a, h, budget, work);
  e.run(0, [&](const std::vector<IndexSet>& chosen) { return visit(Multifunction(a.instance_ptr(), chosen)); });
}

std::uint64_t count_na_multiselectors(const Multifunction& a, const PrefixChain& h, const EnumBudget& budget) {
  std::uint64_t count = 0;
  std::atomic<std::uint64_t> work{0};
  Enumerator e(a, h, budget, work);
  e.run(0, [&](const std::vector<IndexSet>&) {
    ++count;
    return true;
  });
  return count;
}

Multifunction brute_greatest(const Multifunction& a, const PrefixChain& h, const EnumBudget& budget,
                             const GreatestOptions& opts) {
  check_prefix(a.instance().grid(), h.prefixes().back());
  const std::size_t n = a.size();
  std::atomic<std::uint64_t> work{0};

  auto join_into = [](std::vector<IndexSet>& acc, const std::vector<IndexSet>& chosen) {
    for (std::size_t w = 0; w < acc.size(); ++w) {
      if (!is_subset(chosen[w], acc[w])) acc[w] = set_union(acc[w], chosen[w]);
    }
  };

  const std::size_t first_subsets = a[0].size() >= 63 ? SIZE_MAX : (std::size_t{1} << a[0].size());
  const std::size_t threads = std::max<std::size_t>(1, std::min(opts.threads, first_subsets));

  if (threads == 1) {
    std::vector<IndexSet> acc(n);
    std::optional<Multifunction> bound;
    if (opts.prune_with_upper_bound) bound = meet_of_projections(a, h);
    Enumerator e(a, h, budget, work);
    e.run(0, [&](const std::vector<IndexSet>& chosen) {
      join_into(acc, chosen);
      return !(bound && acc == bound->values());
    });
    return Multifunction(a.instance_ptr(), std::move(acc));
  }

  // Split the subsets of a(0) into contiguous slices; each worker joins its
  // own slice and the partial joins are merged. The join is order-free, so
  // the result does not depend on the worker count.
  std::vector<std::future<std::vector<IndexSet>>> parts;
  const std::size_t per = (first_subsets + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * per;
    const std::size_t end = std::min(first_subsets, begin + per);
    parts.push_back(std::async(std::launch::async, [&, begin, end] {
      std::vector<IndexSet> acc(n);
      Enumerator e(a, h, budget, work);
      e.run_first_slice(begin, end, [&](const std::vector<IndexSet>& chosen) {
        join_into(acc, chosen);
        return true;
      });
      return acc;
    }));
  }
  std::vector<IndexSet> acc(n);
  for (auto& f : parts) join_into(acc, f.get());
  return Multifunction(a.instance_ptr(), std::move(acc));
}

FixpointResult fixpoint_iterate(const Multifunction& a, const PrefixChain& h, Schedule schedule,
                                const EnumBudget& budget, std::uint64_t seed) {
  std::vector<Prefix> order(h.begin(), h.end());
  switch (schedule) {
    case Schedule::kDescending:
      std::reverse(order.begin(), order.end());
      break;
    case Schedule::kAscending:
      break;
    case Schedule::kShuffled: {
      std::mt19937_64 rng(seed);
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
      break;
    }
  }

  FixpointResult out{a, 0, 0, {}};
  while (true) {
    if (out.sweeps >= budget.max_sweeps) {
      throw Error(ErrorKind::kBudgetExceeded, "fixpoint iteration exceeded " + std::to_string(budget.max_sweeps) +
                                                  " sweeps");
    }
    Multifunction next = out.result;
    for (const Prefix& p : order) next = project(next, p);
    ++out.sweeps;
    const bool changed = !(next == out.result);
    out.after_sweep.push_back(next);
    out.result = std::move(next);
    if (!changed) break;
    ++out.changing_sweeps;
  }
  return out;
}

bool na_by_definition(const Multifunction& a, const PrefixChain& h) {
  const Instance& inst = a.instance();
  const auto& omega = inst.omega();
  const auto& z = inst.z();
  for (const Prefix& p : h) {
    for (std::size_t w = 0; w < omega.size(); ++w) {
      for (std::size_t v = w + 1; v < omega.size(); ++v) {
        if (!agree_prefix(omega.signal(w), omega.signal(v), p.len)) continue;
        if (key_set(z, a[w], p.len) != key_set(z, a[v], p.len)) return false;
      }
    }
  }
  return true;
}

}  // namespace nonant::oracle
