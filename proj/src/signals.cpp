#include "nonant/signals.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nonant/error.hpp"

namespace nonant {

SymbolId SymbolTable::intern(std::string_view token) {
  std::string key(token);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<SymbolId>(tokens_.size());
  tokens_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

RestrictionKey restrict(const Signal& s, Prefix a) {
  return RestrictionKey{std::vector<SymbolId>(s.cells.begin(), s.cells.begin() + a.len)};
}

SignalFamily::SignalFamily(FamilyRole role, std::size_t cell_count, const std::vector<Member>& members)
    : role_(role), cell_count_(cell_count) {
  const char* what = role == FamilyRole::kDisturbance ? "omega" : "z";
  if (members.empty()) throw Error(ErrorKind::kValidation, std::string(what) + ": family is empty");
  if (cell_count == 0) throw Error(ErrorKind::kValidation, std::string(what) + ": zero cells");

  std::map<std::vector<SymbolId>, std::string> seen;
  for (const auto& m : members) {
    if (m.cells.size() != cell_count) {
      throw Error(ErrorKind::kValidation, std::string(what) + ": signal '" + m.name + "' has " +
                                              std::to_string(m.cells.size()) + " cells, expected " +
                                              std::to_string(cell_count));
    }
    if (!by_name_.emplace(m.name, names_.size()).second) {
      throw Error(ErrorKind::kValidation, std::string(what) + ": duplicate name '" + m.name + "'");
    }
    Signal s;
    for (const auto& tok : m.cells) s.cells.push_back(symbols_.intern(tok));
    auto [it, fresh] = seen.emplace(s.cells, m.name);
    if (!fresh) {
      throw Error(ErrorKind::kValidation, std::string(what) + ": signals '" + it->second + "' and '" +
                                              m.name + "' are identical");
    }
    names_.push_back(m.name);
    signals_.push_back(std::move(s));
  }

  // Refine class ids one cell at a time.
  const std::size_t n = signals_.size();
  class_ids_.assign(cell_count_, std::vector<std::uint32_t>(n));
  class_counts_.assign(cell_count_, 0);
  std::vector<std::uint32_t> prev(n, 0);
  for (std::size_t k = 0; k < cell_count_; ++k) {
    std::map<std::pair<std::uint32_t, SymbolId>, std::uint32_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      auto key = std::make_pair(prev[i], signals_[i].cells[k]);
      auto [it, fresh] = ids.emplace(key, static_cast<std::uint32_t>(ids.size()));
      class_ids_[k][i] = it->second;
    }
    class_counts_[k] = ids.size();
    prev = class_ids_[k];
  }
}

std::vector<std::string> SignalFamily::tokens(std::size_t idx) const {
  std::vector<std::string> out;
  for (SymbolId id : signals_.at(idx).cells) out.push_back(symbols_.token(id));
  return out;
}

std::vector<std::string> SignalFamily::render(const RestrictionKey& key) const {
  std::vector<std::string> out;
  for (SymbolId id : key.cells) out.push_back(symbols_.token(id));
  return out;
}

std::size_t SignalFamily::index_of(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) {
    const char* what = role_ == FamilyRole::kDisturbance ? "omega" : "z";
    throw Error(ErrorKind::kValidation, "unknown " + std::string(what) + " name '" + std::string(name) + "'");
  }
  return it->second;
}

std::size_t SignalFamily::common_prefix_len(std::size_t i, std::size_t j) const {
  // Class ids are nested, so agreement is monotone in the length.
  std::size_t len = 0;
  while (len < cell_count_ && class_ids_[len][i] == class_ids_[len][j]) ++len;
  return len;
}

std::vector<std::size_t> equiv_class(const SignalFamily& fam, std::size_t idx, Prefix a) {
  std::vector<std::size_t> out;
  const auto id = fam.class_id(a, idx);
  for (std::size_t j = 0; j < fam.size(); ++j) {
    if (fam.class_id(a, j) == id) out.push_back(j);
  }
  return out;
}

std::vector<std::vector<std::size_t>> equiv_classes(const SignalFamily& fam, Prefix a) {
  // Class ids are assigned in order of first member, so id order is already
  // the smallest-member order.
  std::vector<std::vector<std::size_t>> out(fam.class_count(a));
  for (std::size_t j = 0; j < fam.size(); ++j) out[fam.class_id(a, j)].push_back(j);
  return out;
}

std::vector<RestrictionKey> restriction_set(const SignalFamily& fam,
                                            std::span<const std::size_t> indices, Prefix a) {
  std::set<RestrictionKey> keys;
  for (std::size_t i : indices) keys.insert(restrict(fam.signal(i), a));
  return {keys.begin(), keys.end()};
}

}  // namespace nonant
