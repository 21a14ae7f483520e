#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nonant/multifunction.hpp"
#include "nonant/timebase.hpp"

namespace nonant::oracle {

struct EnumBudget {
  std::uint64_t max_multiselectors = std::uint64_t{1} << 22;
  std::uint64_t max_omega_tuples = 1'000'000;
  std::size_t max_sweeps = 1000;
};

// Product over w of 2^|a(w)|, saturating at UINT64_MAX.
std::uint64_t multiselector_space(const Multifunction& a);

/// Visits every h-non-anticipative multiselector of `a` exactly once,
/// including the all-empty one. Subsets of each a(w) are tried in
/// popcount-descending order and partial assignments are pruned as soon as a
/// pair of already-assigned disturbances violates the definition. Throws
/// Error(kBudgetExceeded) if multiselector_space(a) exceeds the budget.
/// `visit` may return false to stop.
void enumerate_na_multiselectors(const Multifunction& a, const PrefixChain& h,
                                 const EnumBudget& budget,
                                 const std::function<bool(const Multifunction&)>& visit);

std::uint64_t count_na_multiselectors(const Multifunction& a, const PrefixChain& h,
                                      const EnumBudget& budget);

struct GreatestOptions {
  std::size_t threads = 1;
  // Stop once the running join reaches meet_of_projections(a, h). That bound
  // comes from the projection operator, so this couples the oracle to the
  // code under test. Off by default.
  bool prune_with_upper_bound = false;
};

/// Pointwise join of every h-non-anticipative multiselector of `a`.
Multifunction brute_greatest(const Multifunction& a, const PrefixChain& h,
                             const EnumBudget& budget, const GreatestOptions& opts = {});

enum class Schedule { kDescending, kAscending, kShuffled };

struct FixpointResult {
  Multifunction result;
  std::size_t sweeps = 0;           // sweeps performed, the last one unchanged
  std::size_t changing_sweeps = 0;  // sweeps that modified some entry
  std::vector<Multifunction> after_sweep;
};

/// Applies project over `h` in schedule order until a full sweep leaves the
/// multifunction unchanged. Throws Error(kBudgetExceeded) after
/// budget.max_sweeps sweeps.
FixpointResult fixpoint_iterate(const Multifunction& a, const PrefixChain& h, Schedule schedule,
                                const EnumBudget& budget = {}, std::uint64_t seed = 0);

// A-non-anticipativity straight from the definition, independent of the
// library's class tables: for all w, w' agreeing on the prefix the sets of
// restricted cell sequences coincide.
bool na_by_definition(const Multifunction& a, const PrefixChain& h);

}  // namespace nonant::oracle
