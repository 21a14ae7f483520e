#include "nonant/multifunction.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>

#include "nonant/error.hpp"

namespace nonant {

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

namespace {
std::atomic<std::uint64_t> next_instance_id{1};
}

Instance::Instance(TimeGrid grid, SignalFamily omega, SignalFamily z)
    : grid_(std::move(grid)), omega_(std::move(omega)), z_(std::move(z)), id_(next_instance_id++) {
  if (omega_.cell_count() != grid_.cell_count() || z_.cell_count() != grid_.cell_count()) {
    throw Error(ErrorKind::kValidation, "signal families and grid disagree on the cell count");
  }
  if (omega_.role() != FamilyRole::kDisturbance || z_.role() != FamilyRole::kTrajectory) {
    throw Error(ErrorKind::kValidation, "family roles swapped");
  }
}

InstancePtr make_instance(TimeGrid grid, SignalFamily omega, SignalFamily z) {
  return std::make_shared<const Instance>(std::move(grid), std::move(omega), std::move(z));
}

Multifunction::Multifunction(InstancePtr inst)
    : inst_(std::move(inst)), values_(inst_->omega().size()) {}

Multifunction::Multifunction(InstancePtr inst, std::vector<IndexSet> values)
    : inst_(std::move(inst)), values_(std::move(values)) {
  if (values_.size() != inst_->omega().size()) {
    throw Error(ErrorKind::kValidation, "multifunction has " + std::to_string(values_.size()) +
                                            " entries for " + std::to_string(inst_->omega().size()) +
                                            " disturbances");
  }
  for (auto& v : values_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (!v.empty() && v.back() >= inst_->z().size()) {
      throw Error(ErrorKind::kValidation, "trajectory index " + std::to_string(v.back()) + " out of range");
    }
  }
}

Multifunction Multifunction::full(InstancePtr inst) {
  IndexSet all(inst->z().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<IndexSet> values(inst->omega().size(), all);
  return Multifunction(std::move(inst), std::move(values));
}

void Multifunction::set(std::size_t omega, IndexSet value) {
  std::sort(value.begin(), value.end());
  value.erase(std::unique(value.begin(), value.end()), value.end());
  if (!value.empty() && value.back() >= inst_->z().size()) {
    throw Error(ErrorKind::kValidation, "trajectory index out of range");
  }
  values_.at(omega) = std::move(value);
}

bool operator==(const Multifunction& a, const Multifunction& b) {
  require_same_instance(a, b);
  return a.values_ == b.values_;
}

void require_same_instance(const Multifunction& a, const Multifunction& b) {
  if (!a.same_instance(b)) {
    throw Error(ErrorKind::kInstanceMismatch, "multifunctions belong to different instances");
  }
}

bool mf_le(const Multifunction& a, const Multifunction& b) {
  require_same_instance(a, b);
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (!is_subset(a[w], b[w])) return false;
  }
  return true;
}

Multifunction mf_join(std::span<const Multifunction> ms) {
  if (ms.empty()) throw Error(ErrorKind::kEmptyInput, "join of an empty family");
  std::vector<IndexSet> values = ms.front().values();
  for (const auto& m : ms.subspan(1)) {
    require_same_instance(ms.front(), m);
    for (std::size_t w = 0; w < values.size(); ++w) values[w] = set_union(values[w], m[w]);
  }
  return Multifunction(ms.front().instance_ptr(), std::move(values));
}

Multifunction mf_meet(std::span<const Multifunction> ms) {
  if (ms.empty()) throw Error(ErrorKind::kEmptyInput, "meet of an empty family");
  std::vector<IndexSet> values = ms.front().values();
  for (const auto& m : ms.subspan(1)) {
    require_same_instance(ms.front(), m);
    for (std::size_t w = 0; w < values.size(); ++w) values[w] = set_intersection(values[w], m[w]);
  }
  return Multifunction(ms.front().instance_ptr(), std::move(values));
}

IndexSet dom(const Multifunction& a) {
  IndexSet out;
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (!a[w].empty()) out.push_back(w);
  }
  return out;
}

bool is_total(const Multifunction& a) {
  return std::none_of(a.values().begin(), a.values().end(), [](const IndexSet& v) { return v.empty(); });
}

}  // namespace nonant
