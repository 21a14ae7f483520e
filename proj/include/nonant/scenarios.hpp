#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonant/multifunction.hpp"
#include "nonant/signals.hpp"
#include "nonant/timebase.hpp"

namespace nonant::scenarios {

using Scenario = std::pair<InstancePtr, Multifunction>;

enum class Dynamics { kPlus, kMinus };  // x' = u + v  or  x' = u - v

/// Scalar system x' = u +- v with cell-constant controls.
struct ControlSystem {
  TimeGrid grid;
  std::vector<Rational> levels;
  std::vector<SignalFamily::Member> disturbances;  // tokens are rationals
  Dynamics dynamics = Dynamics::kPlus;
  Rational x0{0};
};

// Exact terminal state x0 + sum_k (u_k +- v_k) * width_k. Signals are given
// by their cell tokens, which must parse as rationals
// (Error(kNonNumericPayload) otherwise).
Rational integrate(const ControlSystem& sys, const std::vector<std::string>& u,
                   const std::vector<std::string>& v);

// Entrywise intersection with the admissible set n.
Multifunction build_retention(const Multifunction& s, const IndexSet& n);

Scenario build_example1();
Scenario build_example2();

// Truncation of the approach game: Omega = {v_1..v_n}, Z = {u_1..u_n} on the
// grid {0, 1, 1 + 1/n, ..., 1 + 1/2, 2}; alpha(v_j) = {u_i : i >= j}.
Scenario build_example3(std::size_t n);
// Stamp index of 1 + 1/i in the example-3 grid for truncation n (i >= 1).
std::size_t example3_stamp_index(std::size_t n, std::size_t i);

std::vector<Rational> default_example4_levels();
ControlSystem build_example4(const std::vector<Rational>& levels);

// Z = all cell-level controls, Omega = the two disturbances, and
// alpha_rho(v) = {u : |x(3; u, v)| >= -rho}.
Scenario alpha_rho(const ControlSystem& sys, const Rational& rho);

struct RhoSearchResult {
  Rational rho_star;
  std::vector<Rational> candidates_tried;  // descending, last one infeasible if any
  std::optional<Rational> next_lower;      // first infeasible candidate below rho_star
  Multifunction witness;                   // greatest_na(alpha_rho_star)
};

// Scans {-|x(3;u,v)|} u {0} in descending order and returns the least rho
// whose greatest non-anticipative multiselector is total. Feasibility is
// monotone in rho, so the scan stops at the first infeasible candidate.
RhoSearchResult optimal_rho(const ControlSystem& sys);

struct RandomSizes {
  std::size_t omega = 3;
  std::size_t z = 4;
  std::size_t cells = 3;
  std::size_t alphabet = 2;
  double density = 0.5;
};

// Reproducible across platforms: only std::mt19937_64 output is consumed.
Scenario random_instance(std::uint64_t seed, const RandomSizes& sizes);

// Resolves ex1, ex2, ex3:<n>, ex4[:levels], random:<seed>:<sizes>.
// ex4 yields alpha at the optimal rho unless `rho` is given.
Scenario by_name(const std::string& name, const std::optional<Rational>& rho = std::nullopt);

}  // namespace nonant::scenarios
