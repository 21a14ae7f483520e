#include "nonant/stepwise.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "nonant/error.hpp"

namespace nonant {

namespace {

bool agrees_on(const Signal& s, const std::vector<SymbolId>& cells) {
  return std::equal(cells.begin(), cells.end(), s.cells.begin());
}

bool agree_prefix(const Signal& a, const Signal& b, std::size_t len) {
  return std::equal(a.cells.begin(), a.cells.begin() + len, b.cells.begin());
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<std::string> render_cells(const SignalFamily& fam, const std::vector<SymbolId>& cells) {
  return fam.render(RestrictionKey{cells});
}

}  // namespace

std::vector<std::vector<SymbolId>> legal_extensions(const Instance& inst, const RestrictionKey& revealed,
                                                    std::size_t target_len) {
  std::set<std::vector<SymbolId>> out;
  const auto& omega = inst.omega();
  for (std::size_t w = 0; w < omega.size(); ++w) {
    const Signal& s = omega.signal(w);
    if (!agrees_on(s, revealed.cells)) continue;
    out.emplace(s.cells.begin() + revealed.cells.size(), s.cells.begin() + target_len);
  }
  return {out.begin(), out.end()};
}

std::vector<SymbolId> ScriptedAdversary::reveal(const Instance& inst, std::size_t, const RestrictionKey& revealed,
                                                std::size_t target_len) {
  const Signal& s = inst.omega().signal(omega_);
  return {s.cells.begin() + revealed.cells.size(), s.cells.begin() + target_len};
}

std::vector<SymbolId> PathAdversary::reveal(const Instance& inst, std::size_t step, const RestrictionKey& revealed,
                                            std::size_t target_len) {
  auto exts = legal_extensions(inst, revealed, target_len);
  std::size_t k = step - 1 < choices_.size() ? choices_[step - 1] : 0;
  if (k >= exts.size()) {
    throw Error(ErrorKind::kAdversaryInconsistency,
                "path choice " + std::to_string(k) + " at step " + std::to_string(step) + " has no extension");
  }
  return exts[k];
}

std::vector<SymbolId> InteractiveAdversary::reveal(const Instance& inst, std::size_t step,
                                                   const RestrictionKey& revealed, std::size_t target_len) {
  const auto& omega = inst.omega();
  auto exts = legal_extensions(inst, revealed, target_len);
  prompt_ << "step " << step << ": reveal cells " << revealed.cells.size() << ".." << target_len - 1 << "\n";
  for (std::size_t k = 0; k < exts.size(); ++k) {
    prompt_ << "  #" << k << ": " << join_tokens(render_cells(omega, exts[k])) << "\n";
  }
  prompt_ << "> " << std::flush;

  std::string line;
  if (!std::getline(in_, line)) {
    throw Error(ErrorKind::kAdversaryInconsistency, "input ended before step " + std::to_string(step));
  }
  std::istringstream ls(line);
  std::vector<std::string> words;
  for (std::string w; ls >> w;) words.push_back(w);
  if (words.size() == 1 && words[0].size() > 1 && words[0][0] == '#') {
    std::size_t k = 0;
    try {
      k = std::stoul(words[0].substr(1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kAdversaryInconsistency, "bad extension index '" + words[0] + "'");
    }
    if (k >= exts.size()) {
      throw Error(ErrorKind::kAdversaryInconsistency, "extension index " + words[0] + " out of range");
    }
    return exts[k];
  }
  for (const auto& ext : exts) {
    if (render_cells(omega, ext) == words) return ext;
  }
  // Not a realizable extension. Return it anyway (unknown tokens mapped to an
  // impossible id) so that run_stepwise reports the inconsistency.
  std::vector<SymbolId> cells;
  for (const auto& w : words) {
    SymbolId id = static_cast<SymbolId>(omega.symbols().size());
    for (SymbolId s = 0; s < omega.symbols().size(); ++s) {
      if (omega.symbols().token(s) == w) id = s;
    }
    cells.push_back(id);
  }
  return cells;
}

SelectorPolicy SelectorPolicy::smallest() { return SelectorPolicy{}; }

SelectorPolicy SelectorPolicy::seeded(std::uint64_t seed) {
  SelectorPolicy p;
  p.rng_.emplace(seed);
  return p;
}

std::size_t SelectorPolicy::pick(const IndexSet& candidates) {
  if (!rng_) return candidates.front();
  return candidates[(*rng_)() % candidates.size()];
}

StepTrace run_stepwise(const Multifunction& a, const Partition& delta, Adversary& adv, SelectorPolicy policy,
                       const StepObserver& observer) {
  const Instance& inst = a.instance();
  const auto chain = partition_to_chain(inst.grid(), delta);
  auto feas = feasible(a, delta);
  if (!feas.feasible) {
    throw Error(ErrorKind::kInfeasible, "conditions infeasible: greatest multiselector is empty at '" +
                                            inst.omega().name(feas.empty_at.front()) + "'");
  }
  const Multifunction& phi = feas.greatest;
  const auto& omega = inst.omega();
  const auto& z = inst.z();

  StepTrace trace;
  RestrictionKey revealed;
  std::size_t prev_len = 0;
  for (std::size_t i = 1; i <= chain.size(); ++i) {
    const std::size_t len = chain[i - 1].len;
    auto ext = adv.reveal(inst, i, revealed, len);
    if (ext.size() != len - revealed.cells.size()) {
      throw Error(ErrorKind::kAdversaryInconsistency,
                  "step " + std::to_string(i) + ": adversary revealed " + std::to_string(ext.size()) +
                      " cells, expected " + std::to_string(len - revealed.cells.size()));
    }
    revealed.cells.insert(revealed.cells.end(), ext.begin(), ext.end());

    std::optional<std::size_t> w_i;
    for (std::size_t w = 0; w < omega.size() && !w_i; ++w) {
      if (agrees_on(omega.signal(w), revealed.cells)) w_i = w;
    }
    if (!w_i) {
      throw Error(ErrorKind::kAdversaryInconsistency,
                  "step " + std::to_string(i) + ": revealed prefix matches no disturbance");
    }

    IndexSet candidates;
    for (std::size_t h : phi[*w_i]) {
      if (i == 1 || agree_prefix(z.signal(h), z.signal(trace.steps.back().h), prev_len)) candidates.push_back(h);
    }
    if (candidates.empty()) {
      // Unreachable for a non-anticipative phi; kept as a hard failure.
      throw Error(ErrorKind::kInfeasible, "step " + std::to_string(i) + ": no admissible trajectory");
    }

    TraceStep step;
    step.step = i;
    step.prefix_len = len;
    step.revealed = revealed;
    step.omega = *w_i;
    step.h = policy.pick(candidates);
    if (i > 1) {
      const auto& prev = trace.steps.back();
      step.omega_consistent = agree_prefix(omega.signal(step.omega), omega.signal(prev.omega), prev_len);
      step.h_consistent = agree_prefix(z.signal(step.h), z.signal(prev.h), prev_len);
    }
    step.h_admissible = std::binary_search(phi[step.omega].begin(), phi[step.omega].end(), step.h);
    trace.steps.push_back(step);
    if (observer) observer(trace.steps.back());
    prev_len = len;
  }
  trace.final_h = trace.steps.back().h;
  trace.final_omega = trace.steps.back().omega;
  return trace;
}

std::string validate_trace(const StepTrace& trace, const Multifunction& a, const Partition& delta) {
  const Instance& inst = a.instance();
  const auto chain = partition_to_chain(inst.grid(), delta);
  const auto& omega = inst.omega();
  const auto& z = inst.z();
  if (trace.steps.size() != chain.size()) return "trace has wrong number of steps";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const std::size_t len = chain[i].len;
    if (s.prefix_len != len) return "step " + std::to_string(i + 1) + ": wrong prefix length";
    if (s.revealed.cells.size() != len || !agrees_on(omega.signal(s.omega), s.revealed.cells)) {
      return "step " + std::to_string(i + 1) + ": reconstructed disturbance does not match revealed prefix";
    }
    if (!s.omega_consistent || !s.h_consistent || !s.h_admissible) {
      return "step " + std::to_string(i + 1) + ": consistency flag false";
    }
    if (i > 0) {
      const auto& prev = trace.steps[i - 1];
      const std::size_t prev_len = chain[i - 1].len;
      if (!agree_prefix(omega.signal(s.omega), omega.signal(prev.omega), prev_len)) {
        return "step " + std::to_string(i + 1) + ": disturbance reconstruction not consistent";
      }
      if (!agree_prefix(z.signal(s.h), z.signal(prev.h), prev_len)) {
        return "step " + std::to_string(i + 1) + ": trajectory choice not consistent";
      }
      if (!agrees_on(omega.signal(s.omega), prev.revealed.cells)) {
        return "step " + std::to_string(i + 1) + ": revealed prefix rewritten";
      }
    }
  }
  if (trace.final_h != trace.steps.back().h || trace.final_omega != trace.steps.back().omega) {
    return "final indices do not match last step";
  }
  const auto& final_set = a[trace.final_omega];
  if (!std::binary_search(final_set.begin(), final_set.end(), trace.final_h)) {
    return "final trajectory not in a(w)";
  }
  return {};
}

std::vector<std::vector<std::size_t>> revelation_paths(const Instance& inst, const Partition& delta) {
  const auto chain = partition_to_chain(inst.grid(), delta);
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> choices;
  auto walk = [&](auto&& self, const RestrictionKey& revealed, std::size_t step) -> void {
    if (step > chain.size()) {
      paths.push_back(choices);
      return;
    }
    auto exts = legal_extensions(inst, revealed, chain[step - 1].len);
    for (std::size_t k = 0; k < exts.size(); ++k) {
      RestrictionKey next = revealed;
      next.cells.insert(next.cells.end(), exts[k].begin(), exts[k].end());
      choices.push_back(k);
      self(self, next, step + 1);
      choices.pop_back();
    }
  };
  walk(walk, RestrictionKey{}, 1);
  return paths;
}

bool revelation_game_winnable(const Multifunction& a, const Partition& delta) {
  const Instance& inst = a.instance();
  const auto chain = partition_to_chain(inst.grid(), delta);
  const auto& omega = inst.omega();
  const auto& z = inst.z();

  IndexSet all_z(z.size());
  for (std::size_t h = 0; h < all_z.size(); ++h) all_z[h] = h;

  // `open` holds the trajectories still compatible with the commitments so far.
  auto controller_wins = [&](auto&& self, const RestrictionKey& revealed, const IndexSet& open,
                             std::size_t step) -> bool {
    const std::size_t len = chain[step - 1].len;
    for (const auto& ext : legal_extensions(inst, revealed, len)) {
      RestrictionKey next = revealed;
      next.cells.insert(next.cells.end(), ext.begin(), ext.end());
      bool answered = false;
      if (step == chain.size()) {
        // The whole disturbance is known: it is the unique member matching it.
        for (std::size_t w = 0; w < omega.size() && !answered; ++w) {
          if (!agrees_on(omega.signal(w), next.cells)) continue;
          for (std::size_t h : open) {
            if (std::binary_search(a[w].begin(), a[w].end(), h)) {
              answered = true;
              break;
            }
          }
        }
      } else {
        // Commit to the restriction of some open trajectory on H_step.
        std::set<std::vector<SymbolId>> tried;
        for (std::size_t h : open) {
          const auto& cells = z.signal(h).cells;
          std::vector<SymbolId> commit(cells.begin(), cells.begin() + len);
          if (!tried.insert(commit).second) continue;
          IndexSet narrowed;
          for (std::size_t g : open) {
            if (agrees_on(z.signal(g), commit)) narrowed.push_back(g);
          }
          if (self(self, next, narrowed, step + 1)) {
            answered = true;
            break;
          }
        }
      }
      if (!answered) return false;
    }
    return true;
  };
  return controller_wins(controller_wins, RestrictionKey{}, all_z, 1);
}

void for_each_omega_delta(const Instance& inst, const Partition& delta,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  const auto chain = partition_to_chain(inst.grid(), delta);
  const std::size_t n = chain.size();
  const auto& omega = inst.omega();
  std::vector<std::size_t> tuple(n);
  bool stop = false;
  // Fill positions i-1, i-2, ..., 0 given tuple[i].
  auto back = [&](auto&& self, std::size_t i) -> void {
    if (stop) return;
    if (i == 0) {
      if (!visit(tuple)) stop = true;
      return;
    }
    for (std::size_t w : equiv_class(omega, tuple[i], chain[i - 1])) {
      tuple[i - 1] = w;
      self(self, i - 1);
      if (stop) return;
    }
  };
  for (std::size_t last = 0; last < omega.size() && !stop; ++last) {
    tuple[n - 1] = last;
    back(back, n - 1);
  }
}

std::vector<std::vector<std::size_t>> enumerate_omega_delta(const Instance& inst, const Partition& delta) {
  std::vector<std::vector<std::size_t>> out;
  for_each_omega_delta(inst, delta, [&](const std::vector<std::size_t>& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

WitnessReport verify_witness(const std::vector<Multifunction>& phis, const Partition& delta,
                             const Multifunction& a) {
  const Instance& inst = a.instance();
  const auto chain = partition_to_chain(inst.grid(), delta);
  if (phis.size() != chain.size()) {
    throw Error(ErrorKind::kValidation, "witness has " + std::to_string(phis.size()) + " multifunctions for " +
                                            std::to_string(chain.size()) + " partition steps");
  }
  for (std::size_t i = 0; i < phis.size(); ++i) {
    if (!mf_le(phis[i], a)) {
      return WitnessReport{false, WitnessViolation{WitnessViolation::Kind::kNotMultiselector, i + 1, {}, 0}};
    }
  }
  const auto& z = inst.z();
  WitnessReport report;
  for_each_omega_delta(inst, delta, [&](const std::vector<std::size_t>& tuple) {
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (phis[i][tuple[i]].empty()) {
        report = WitnessReport{false, WitnessViolation{WitnessViolation::Kind::kEmptyValue, i + 1, tuple, tuple[i]}};
        return false;
      }
      if (i + 1 < tuple.size()) {
        const Prefix p = chain[i];
        if (restriction_set(z, phis[i][tuple[i]], p) != restriction_set(z, phis[i + 1][tuple[i + 1]], p)) {
          report = WitnessReport{
              false, WitnessViolation{WitnessViolation::Kind::kRestrictionMismatch, i + 1, tuple, tuple[i]}};
          return false;
        }
      }
    }
    return true;
  });
  return report;
}

}  // namespace nonant
