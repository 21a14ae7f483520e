#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "nonant/signals.hpp"
#include "nonant/timebase.hpp"

namespace nonant {

/// Sorted, duplicate-free set of member indices.
using IndexSet = std::vector<std::size_t>;

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);

/// A grid with its disturbance family (Omega) and trajectory family (Z).
class Instance {
 public:
  Instance(TimeGrid grid, SignalFamily omega, SignalFamily z);

  const TimeGrid& grid() const { return grid_; }
  const SignalFamily& omega() const { return omega_; }
  const SignalFamily& z() const { return z_; }
  std::uint64_t id() const { return id_; }

 private:
  TimeGrid grid_;
  SignalFamily omega_;
  SignalFamily z_;
  std::uint64_t id_;
};

using InstancePtr = std::shared_ptr<const Instance>;

InstancePtr make_instance(TimeGrid grid, SignalFamily omega, SignalFamily z);

/// Set-valued map from disturbance indices to sets of trajectory indices.
///
/// Value type. Entries may be empty. Every multifunction is bound to one
/// instance; combining multifunctions of different instances throws
/// Error(kInstanceMismatch).
class Multifunction {
 public:
  // All-empty multifunction.
  explicit Multifunction(InstancePtr inst);
  // Entries are sorted and deduplicated; out-of-range indices throw.
  Multifunction(InstancePtr inst, std::vector<IndexSet> values);

  static Multifunction full(InstancePtr inst);

  const Instance& instance() const { return *inst_; }
  const InstancePtr& instance_ptr() const { return inst_; }
  std::size_t size() const { return values_.size(); }

  const IndexSet& operator[](std::size_t omega) const { return values_[omega]; }
  const IndexSet& at(std::size_t omega) const { return values_.at(omega); }
  const std::vector<IndexSet>& values() const { return values_; }

  void set(std::size_t omega, IndexSet value);

  bool same_instance(const Multifunction& other) const { return inst_ == other.inst_; }

  // Equality of values; throws on instance mismatch.
  friend bool operator==(const Multifunction& a, const Multifunction& b);

 private:
  InstancePtr inst_;
  std::vector<IndexSet> values_;
};

void require_same_instance(const Multifunction& a, const Multifunction& b);

// a(w) is a subset of b(w) for every w.
bool mf_le(const Multifunction& a, const Multifunction& b);

// Pointwise union / intersection. Throw Error(kEmptyInput) on an empty span.
Multifunction mf_join(std::span<const Multifunction> ms);
Multifunction mf_meet(std::span<const Multifunction> ms);

IndexSet dom(const Multifunction& a);
bool is_total(const Multifunction& a);

}  // namespace nonant
