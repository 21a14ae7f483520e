#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nonant/multifunction.hpp"
#include "nonant/nonanticipation.hpp"
#include "nonant/signals.hpp"
#include "nonant/timebase.hpp"

namespace nonant {

/// Reveals the realized disturbance one partition step at a time.
class Adversary {
 public:
  virtual ~Adversary() = default;

  // Cells [revealed.size(), target_len) of the disturbance. The result
  // appended to `revealed` must be the restriction of some member of Omega.
  virtual std::vector<SymbolId> reveal(const Instance& inst, std::size_t step,
                                       const RestrictionKey& revealed, std::size_t target_len) = 0;
};

/// Plays one fixed member of Omega.
class ScriptedAdversary : public Adversary {
 public:
  explicit ScriptedAdversary(std::size_t omega) : omega_(omega) {}
  std::vector<SymbolId> reveal(const Instance& inst, std::size_t step,
                               const RestrictionKey& revealed, std::size_t target_len) override;

 private:
  std::size_t omega_;
};

/// Follows a preset list of extension choices: at each step, the k-th legal
/// extension (in sorted order) is revealed. Used to walk every revelation path.
class PathAdversary : public Adversary {
 public:
  explicit PathAdversary(std::vector<std::size_t> choices) : choices_(std::move(choices)) {}
  std::vector<SymbolId> reveal(const Instance& inst, std::size_t step,
                               const RestrictionKey& revealed, std::size_t target_len) override;

 private:
  std::vector<std::size_t> choices_;
};

/// Line-oriented stdin protocol. Each step writes the legal extensions to
/// `prompt` and reads one line from `in`: either the extension's cell tokens
/// separated by blanks or "#k" for the k-th listed extension.
class InteractiveAdversary : public Adversary {
 public:
  InteractiveAdversary(std::istream& in, std::ostream& prompt) : in_(in), prompt_(prompt) {}
  std::vector<SymbolId> reveal(const Instance& inst, std::size_t step,
                               const RestrictionKey& revealed, std::size_t target_len) override;

 private:
  std::istream& in_;
  std::ostream& prompt_;
};

// Distinct extensions of `revealed` to `target_len` cells realized by Omega,
// sorted.
std::vector<std::vector<SymbolId>> legal_extensions(const Instance& inst,
                                                    const RestrictionKey& revealed,
                                                    std::size_t target_len);

/// Picks one trajectory index from a non-empty sorted candidate set.
class SelectorPolicy {
 public:
  static SelectorPolicy smallest();
  static SelectorPolicy seeded(std::uint64_t seed);

  std::size_t pick(const IndexSet& candidates);

 private:
  std::optional<std::mt19937_64> rng_;
};

struct TraceStep {
  std::size_t step = 0;  // 1-based partition step
  std::size_t prefix_len = 0;
  RestrictionKey revealed;
  std::size_t omega = 0;  // reconstructed w_i
  std::size_t h = 0;      // chosen h_i
  bool omega_consistent = true;  // w_i agrees with w_{i-1} on H_{i-1}
  bool h_consistent = true;      // h_i agrees with h_{i-1} on H_{i-1}
  bool h_admissible = true;      // h_i in phi(w_i)
};

struct StepTrace {
  std::vector<TraceStep> steps;
  std::size_t final_h = 0;
  std::size_t final_omega = 0;
};

// Trace observer, called after each step (used by the interactive CLI echo).
using StepObserver = std::function<void(const TraceStep&)>;

/// Runs the step-by-step procedure with phi_i = compose_chain(a, H_delta).
///
/// Throws Error(kInfeasible) naming an empty-valued disturbance when the
/// conditions are infeasible and Error(kAdversaryInconsistency) when the
/// adversary reveals a prefix no member of Omega realizes.
StepTrace run_stepwise(const Multifunction& a, const Partition& delta, Adversary& adv,
                       SelectorPolicy policy = SelectorPolicy::smallest(),
                       const StepObserver& observer = {});

// Independent re-check of a trace against `a` and the partition; returns an
// empty string when valid, else a description of the first problem.
std::string validate_trace(const StepTrace& trace, const Multifunction& a, const Partition& delta);

/// Every revelation path, in sorted extension order. One entry per member of
/// Omega since the last step reveals the whole signal.
std::vector<std::vector<std::size_t>> revelation_paths(const Instance& inst, const Partition& delta);

/// Backward induction over the revelation tree: can the controller, committing
/// the trajectory restriction on H_i after seeing the disturbance on H_i,
/// always finish inside a(w)? Does not use the projection operator.
bool revelation_game_winnable(const Multifunction& a, const Partition& delta);

/// Calls `visit` on every tuple (w_1..w_n) with w_i, w_{i+1} agreeing on H_i.
/// Tuples are produced by fixing w_n and walking backwards through classes.
/// Stops early when `visit` returns false.
void for_each_omega_delta(const Instance& inst, const Partition& delta,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit);

std::vector<std::vector<std::size_t>> enumerate_omega_delta(const Instance& inst,
                                                            const Partition& delta);

struct WitnessViolation {
  enum class Kind { kNotMultiselector, kEmptyValue, kRestrictionMismatch };
  Kind kind;
  std::size_t step = 0;  // 1-based; for kNotMultiselector the offending phi
  std::vector<std::size_t> tuple;
  std::size_t omega = 0;
};

struct WitnessReport {
  bool ok = true;
  std::optional<WitnessViolation> violation;
};

/// Checks phi_i <= a and, for every tuple of enumerate_omega_delta, that
/// (phi_i(w_i))_i has non-empty entries whose restriction sets to H_i agree
/// between consecutive steps. Throws Error(kValidation) if phis.size() != n.
WitnessReport verify_witness(const std::vector<Multifunction>& phis, const Partition& delta,
                             const Multifunction& a);

}  // namespace nonant
