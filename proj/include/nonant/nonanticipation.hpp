#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nonant/multifunction.hpp"
#include "nonant/signals.hpp"
#include "nonant/timebase.hpp"

namespace nonant {

/// Counterexample to A-non-anticipativity: omega and other agree on the
/// prefix, but `key` is a restriction of exactly one side's value set.
struct NaViolation {
  Prefix prefix;
  std::size_t omega = 0;
  std::size_t other = 0;
  RestrictionKey key;
  bool key_on_omega_side = true;
};

struct NaReport {
  bool holds = true;
  std::optional<NaViolation> witness;
};

NaReport is_prefix_na(const Multifunction& a, Prefix p);

// Checks the chain prefixes in increasing order and reports the first failure.
NaReport is_chain_na(const Multifunction& a, const PrefixChain& h);

/// Greatest p-non-anticipative multiselector of `a`.
///
/// For each equivalence class C of disturbances at p, a trajectory h stays in
/// a(w), w in C, iff its restriction to p occurs in a(w')|p for every w' in C.
/// The class intersection is evaluated once per class.
Multifunction project(const Multifunction& a, Prefix p);

/// Greatest h-non-anticipative multiselector of `a`: projections applied from
/// the longest prefix of the chain down to the shortest, one pass each.
Multifunction compose_chain(const Multifunction& a, const PrefixChain& h);

// Pointwise meet of project(a, p) over p in h. An upper bound for every
// h-non-anticipative multiselector of a.
Multifunction meet_of_projections(const Multifunction& a, const PrefixChain& h);

// Prefixes on which members i and j of Omega agree.
std::vector<Prefix> stm_set(const Instance& inst, std::size_t i, std::size_t j);
// The longest of them, or nullopt if the members differ on the first cell.
std::optional<Prefix> stmb(const Instance& inst, std::size_t i, std::size_t j);

// Sorted distinct stmb values over all pairs (including i == j). Empty when
// the instance has no pair agreeing on a prefix, which cannot happen since
// every member agrees with itself on the full grid.
std::vector<Prefix> canonical_prefixes(const Instance& inst);
PrefixChain canonical_chain(const Instance& inst);

// Greatest fully non-anticipative multiselector.
Multifunction greatest_na(const Multifunction& a);

struct Feasibility {
  bool feasible = false;
  // compose_chain over the partition chain; always filled.
  Multifunction greatest;
  // Disturbances where `greatest` is empty.
  IndexSet empty_at;
};

/// Decides whether the step-by-step procedure over `delta` can always end in
/// a(w) for the realized disturbance w.
Feasibility feasible(const Multifunction& a, const Partition& delta);

}  // namespace nonant
