#pragma once

#include <compare>
#include <span>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nonant/timebase.hpp"

namespace nonant {

using SymbolId = std::uint32_t;

/// Interned cell tokens. Ids are dense and assigned in order of first use.
class SymbolTable {
 public:
  SymbolId intern(std::string_view token);
  const std::string& token(SymbolId id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, SymbolId> ids_;
};

/// A cell-constant function: one symbol per grid cell.
struct Signal {
  std::vector<SymbolId> cells;

  friend bool operator==(const Signal&, const Signal&) = default;
};

/// Leading subsequence of a signal.
struct RestrictionKey {
  std::vector<SymbolId> cells;

  friend auto operator<=>(const RestrictionKey&, const RestrictionKey&) = default;
};

RestrictionKey restrict(const Signal& s, Prefix a);

enum class FamilyRole { kDisturbance, kTrajectory };

/// Indexed family of pairwise distinct named signals over one grid.
///
/// Besides the raw symbols the family keeps, for every prefix length, a dense
/// class id per member: two members share the id at length k exactly when
/// their first k cells coincide. Ids are built by refining the length-(k-1)
/// partition with cell k-1, so the table is the longest-common-prefix
/// structure of the family.
class SignalFamily {
 public:
  struct Member {
    std::string name;
    std::vector<std::string> cells;
  };

  // Throws Error(kValidation) on empty input, wrong lengths, duplicate names
  // or duplicate signals.
  SignalFamily(FamilyRole role, std::size_t cell_count, const std::vector<Member>& members);

  FamilyRole role() const { return role_; }
  std::size_t size() const { return signals_.size(); }
  std::size_t cell_count() const { return cell_count_; }

  const Signal& signal(std::size_t idx) const { return signals_.at(idx); }
  const std::string& name(std::size_t idx) const { return names_.at(idx); }
  const SymbolTable& symbols() const { return symbols_; }
  const std::string& token(std::size_t idx, std::size_t cell) const {
    return symbols_.token(signals_.at(idx).cells.at(cell));
  }
  std::vector<std::string> tokens(std::size_t idx) const;
  std::vector<std::string> render(const RestrictionKey& key) const;

  // Throws Error(kValidation) if absent.
  std::size_t index_of(std::string_view name) const;

  // Dense class id of member `idx` at prefix length `len` (1..cell_count).
  std::uint32_t class_id(Prefix a, std::size_t idx) const { return class_ids_[a.len - 1][idx]; }
  std::size_t class_count(Prefix a) const { return class_counts_[a.len - 1]; }

  // Number of leading cells on which two members agree (0..cell_count).
  std::size_t common_prefix_len(std::size_t i, std::size_t j) const;

 private:
  FamilyRole role_;
  std::size_t cell_count_;
  SymbolTable symbols_;
  std::vector<Signal> signals_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::vector<std::vector<std::uint32_t>> class_ids_;
  std::vector<std::size_t> class_counts_;
};

// Members whose restriction to `a` equals that of member `idx`. Sorted.
std::vector<std::size_t> equiv_class(const SignalFamily& fam, std::size_t idx, Prefix a);

// All equivalence classes at `a`, each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> equiv_classes(const SignalFamily& fam, Prefix a);

// Distinct restrictions of the given members, sorted.
std::vector<RestrictionKey> restriction_set(const SignalFamily& fam,
                                            std::span<const std::size_t> indices, Prefix a);

}  // namespace nonant
