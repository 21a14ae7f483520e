#pragma once

// Shared helpers for the test executables: name-based builders, seeded
// generators and straight-from-the-definition reference implementations that
// share no code with the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nonant/error.hpp"
#include "nonant/multifunction.hpp"
#include "nonant/nonanticipation.hpp"
#include "nonant/scenarios.hpp"
#include "nonant/timebase.hpp"

namespace testsupport {

using namespace nonant;

inline Multifunction by_names(const InstancePtr& inst, const std::map<std::string, std::vector<std::string>>& m) {
  Multifunction out(inst);
  for (const auto& [w, hs] : m) {
    IndexSet s;
    for (const auto& h : hs) s.push_back(inst->z().index_of(h));
    out.set(inst->omega().index_of(w), s);
  }
  return out;
}

inline std::vector<std::string> names_at(const Multifunction& a, const std::string& w) {
  const Instance& inst = a.instance();
  std::vector<std::string> out;
  for (std::size_t h : a[inst.omega().index_of(w)]) out.push_back(inst.z().name(h));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct Case {
  InstancePtr inst;
  Multifunction a;
  std::uint64_t seed = 0;
  scenarios::RandomSizes sizes;
};

// Draws sizes with |Omega| <= 4, |Z| <= 6, cells <= 4, then builds the
// instance from a derived seed.
inline Case random_case(std::mt19937_64& rng) {
  scenarios::RandomSizes s;
  s.omega = 1 + rng() % 4;
  s.z = 1 + rng() % 6;
  s.cells = 1 + rng() % 4;
  s.alphabet = 2 + rng() % 2;
  auto capacity = [&] {
    std::size_t c = 1;
    for (std::size_t k = 0; k < s.cells; ++k) c *= s.alphabet;
    return c;
  };
  while (capacity() < std::max(s.omega, s.z)) ++s.alphabet;
  const double densities[] = {0.3, 0.5, 0.7, 0.9};
  s.density = densities[rng() % 4];
  const std::uint64_t seed = rng();
  auto [inst, a] = scenarios::random_instance(seed, s);
  return Case{inst, a, seed, s};
}

inline PrefixChain random_subchain(const TimeGrid& grid, std::mt19937_64& rng) {
  std::vector<Prefix> ps;
  for (std::size_t len = 1; len <= grid.cell_count(); ++len) {
    if (rng() % 2) ps.push_back(Prefix{len});
  }
  if (ps.empty()) ps.push_back(Prefix{1 + rng() % grid.cell_count()});
  return PrefixChain(ps);
}

inline Partition random_partition(const TimeGrid& grid, std::mt19937_64& rng) {
  std::vector<std::size_t> idx{0, grid.cell_count()};
  for (std::size_t k = 1; k < grid.cell_count(); ++k) {
    if (rng() % 2) idx.push_back(k);
  }
  return Partition(grid, idx);
}

// Random multiselector of a: each element kept with probability 1/2.
inline Multifunction random_sub(const Multifunction& a, std::mt19937_64& rng) {
  Multifunction out(a.instance_ptr());
  for (std::size_t w = 0; w < a.size(); ++w) {
    IndexSet s;
    for (std::size_t h : a[w]) {
      if (rng() % 2) s.push_back(h);
    }
    out.set(w, s);
  }
  return out;
}

namespace ref {

inline bool agree(const Signal& x, const Signal& y, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    if (x.cells[k] != y.cells[k]) return false;
  }
  return true;
}

inline bool omega_agree(const Instance& inst, std::size_t w1, std::size_t w2, std::size_t len) {
  return agree(inst.omega().signal(w1), inst.omega().signal(w2), len);
}

// Some element of set s agrees with trajectory h on the first len cells.
inline bool has_restriction(const Instance& inst, const IndexSet& s, std::size_t h, std::size_t len) {
  for (std::size_t g : s) {
    if (agree(inst.z().signal(g), inst.z().signal(h), len)) return true;
  }
  return false;
}

inline bool is_na(const Multifunction& a, std::size_t len) {
  const Instance& inst = a.instance();
  for (std::size_t w1 = 0; w1 < a.size(); ++w1) {
    for (std::size_t w2 = 0; w2 < a.size(); ++w2) {
      if (!omega_agree(inst, w1, w2, len)) continue;
      for (std::size_t h : a[w1]) {
        if (!has_restriction(inst, a[w2], h, len)) return false;
      }
    }
  }
  return true;
}

inline bool is_chain_na(const Multifunction& a, const PrefixChain& h) {
  for (const auto& p : h) {
    if (!is_na(a, p.len)) return false;
  }
  return true;
}

// Keep h in a(w) iff every w' agreeing with w on len has some element whose
// restriction matches h's.
inline Multifunction project(const Multifunction& a, std::size_t len) {
  const Instance& inst = a.instance();
  Multifunction out(a.instance_ptr());
  for (std::size_t w = 0; w < a.size(); ++w) {
    IndexSet keep;
    for (std::size_t h : a[w]) {
      bool ok = true;
      for (std::size_t w2 = 0; w2 < a.size() && ok; ++w2) {
        if (omega_agree(inst, w, w2, len)) ok = has_restriction(inst, a[w2], h, len);
      }
      if (ok) keep.push_back(h);
    }
    out.set(w, keep);
  }
  return out;
}

inline bool le(const Multifunction& x, const Multifunction& y) {
  for (std::size_t w = 0; w < x.size(); ++w) {
    for (std::size_t h : x[w]) {
      if (std::find(y[w].begin(), y[w].end(), h) == y[w].end()) return false;
    }
  }
  return true;
}

// Every multiselector of a, by counting through all per-disturbance bitmasks.
inline void for_each_multiselector(const Multifunction& a, const std::function<void(const Multifunction&)>& visit) {
  const std::size_t n = a.size();
  std::vector<std::uint64_t> mask(n, 0);
  while (true) {
    Multifunction m(a.instance_ptr());
    for (std::size_t w = 0; w < n; ++w) {
      IndexSet s;
      for (std::size_t b = 0; b < a[w].size(); ++b) {
        if (mask[w] >> b & 1) s.push_back(a[w][b]);
      }
      m.set(w, s);
    }
    visit(m);
    std::size_t w = 0;
    while (w < n) {
      if (++mask[w] < (std::uint64_t{1} << a[w].size())) break;
      mask[w] = 0;
      ++w;
    }
    if (w == n) return;
  }
}

inline std::uint64_t count_na(const Multifunction& a, const PrefixChain& h) {
  std::uint64_t c = 0;
  for_each_multiselector(a, [&](const Multifunction& m) { c += ref::is_chain_na(m, h); });
  return c;
}

inline Multifunction greatest(const Multifunction& a, const PrefixChain& h) {
  std::vector<IndexSet> acc(a.size());
  for_each_multiselector(a, [&](const Multifunction& m) {
    if (!ref::is_chain_na(m, h)) return;
    for (std::size_t w = 0; w < m.size(); ++w) {
      for (std::size_t x : m[w]) acc[w].push_back(x);
    }
  });
  for (auto& s : acc) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return Multifunction(a.instance_ptr(), acc);
}

// All n-tuples over Omega, filtered by agreement on H_i between neighbours.
inline std::vector<std::vector<std::size_t>> omega_delta(const Instance& inst, const Partition& delta) {
  const std::size_t n = delta.step_count();
  const std::size_t k = inst.omega().size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) {
      ok = omega_agree(inst, t[i], t[i + 1], delta.indices()[i + 1]);
    }
    if (ok) out.push_back(t);
    std::size_t i = n;
    while (i > 0) {
      if (++t[i - 1] < k) break;
      t[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ref

}  // namespace testsupport

#define CHECK_ERROR_KIND(expr, expected_kind)                                  \
  do {                                                                         \
    bool thrown_ = false;                                                      \
    try {                                                                      \
      (void)(expr);                                                            \
    } catch (const nonant::Error& e_) {                                        \
      thrown_ = true;                                                          \
      CHECK_MESSAGE(e_.kind() == (expected_kind), nonant::to_string(e_.kind())); \
    }                                                                          \
    CHECK_MESSAGE(thrown_, #expr " did not throw");                            \
  } while (0)
