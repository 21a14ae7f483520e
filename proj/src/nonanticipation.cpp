#include "nonant/nonanticipation.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "nonant/error.hpp"

namespace nonant {

namespace {

// Sorted distinct Z-class ids at p of the trajectories in `value`.
std::vector<std::uint32_t> restriction_ids(const SignalFamily& z, const IndexSet& value, Prefix p) {
  std::vector<std::uint32_t> ids;
  ids.reserve(value.size());
  for (std::size_t h : value) ids.push_back(z.class_id(p, h));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::optional<NaViolation> first_violation(const Multifunction& a, Prefix p) {
  const Instance& inst = a.instance();
  check_prefix(inst.grid(), p);
  const auto& omega = inst.omega();
  const auto& z = inst.z();

  std::vector<std::vector<std::uint32_t>> ids(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) ids[w] = restriction_ids(z, a[w], p);

  for (std::size_t w = 0; w < a.size(); ++w) {
    for (std::size_t v = w + 1; v < a.size(); ++v) {
      if (omega.class_id(p, w) != omega.class_id(p, v) || ids[w] == ids[v]) continue;
      // Smallest key present on exactly one side.
      std::optional<RestrictionKey> best;
      bool best_on_w = true;
      auto consider = [&](std::size_t side, std::size_t other, bool on_w) {
        for (std::size_t h : a[side]) {
          auto id = z.class_id(p, h);
          if (std::binary_search(ids[other].begin(), ids[other].end(), id)) continue;
          RestrictionKey key = restrict(z.signal(h), p);
          if (!best || key < *best) {
            best = std::move(key);
            best_on_w = on_w;
          }
        }
      };
      consider(w, v, true);
      consider(v, w, false);
      return NaViolation{p, w, v, std::move(*best), best_on_w};
    }
  }
  return std::nullopt;
}

}  // namespace

NaReport is_prefix_na(const Multifunction& a, Prefix p) {
  auto violation = first_violation(a, p);
  return NaReport{!violation.has_value(), std::move(violation)};
}

NaReport is_chain_na(const Multifunction& a, const PrefixChain& h) {
  for (const Prefix& p : h) {
    auto report = is_prefix_na(a, p);
    if (!report.holds) return report;
  }
  return NaReport{};
}

Multifunction project(const Multifunction& a, Prefix p) {
  const Instance& inst = a.instance();
  check_prefix(inst.grid(), p);
  const auto& z = inst.z();

  std::vector<IndexSet> out(a.size());
  std::vector<std::size_t> count(z.class_count(p), 0);
  std::vector<std::size_t> last_member(z.class_count(p), SIZE_MAX);

  for (const auto& cls : equiv_classes(inst.omega(), p)) {
    std::fill(count.begin(), count.end(), 0);
    std::fill(last_member.begin(), last_member.end(), SIZE_MAX);
    for (std::size_t w : cls) {
      for (std::size_t h : a[w]) {
        auto id = z.class_id(p, h);
        if (last_member[id] == w) continue;
        last_member[id] = w;
        ++count[id];
      }
    }
    // A restriction survives iff every member of the class offers it.
    for (std::size_t w : cls) {
      for (std::size_t h : a[w]) {
        if (count[z.class_id(p, h)] == cls.size()) out[w].push_back(h);
      }
    }
  }
  return Multifunction(a.instance_ptr(), std::move(out));
}

Multifunction compose_chain(const Multifunction& a, const PrefixChain& h) {
  Multifunction result = a;
  for (auto it = h.prefixes().rbegin(); it != h.prefixes().rend(); ++it) result = project(result, *it);
  return result;
}

Multifunction meet_of_projections(const Multifunction& a, const PrefixChain& h) {
  std::vector<Multifunction> projections;
  projections.reserve(h.size());
  for (const Prefix& p : h) projections.push_back(project(a, p));
  return mf_meet(projections);
}

std::vector<Prefix> stm_set(const Instance& inst, std::size_t i, std::size_t j) {
  std::vector<Prefix> out;
  const std::size_t common = inst.omega().common_prefix_len(i, j);
  for (std::size_t len = 1; len <= common; ++len) out.push_back(Prefix{len});
  return out;
}

std::optional<Prefix> stmb(const Instance& inst, std::size_t i, std::size_t j) {
  const std::size_t common = inst.omega().common_prefix_len(i, j);
  if (common == 0) return std::nullopt;
  return Prefix{common};
}

std::vector<Prefix> canonical_prefixes(const Instance& inst) {
  std::set<Prefix> lens;
  const std::size_t n = inst.omega().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (auto p = stmb(inst, i, j)) lens.insert(*p);
    }
  }
  return {lens.begin(), lens.end()};
}

PrefixChain canonical_chain(const Instance& inst) { return PrefixChain(canonical_prefixes(inst)); }

Multifunction greatest_na(const Multifunction& a) {
  auto prefixes = canonical_prefixes(a.instance());
  if (prefixes.empty()) return a;
  return compose_chain(a, PrefixChain(std::move(prefixes)));
}

Feasibility feasible(const Multifunction& a, const Partition& delta) {
  Multifunction g = compose_chain(a, partition_to_chain(a.instance().grid(), delta));
  IndexSet empty_at;
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (g[w].empty()) empty_at.push_back(w);
  }
  const bool ok = empty_at.empty();
  return Feasibility{ok, std::move(g), std::move(empty_at)};
}

}  // namespace nonant
