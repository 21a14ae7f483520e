#include "nonant/scenarios.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "nonant/error.hpp"
#include "nonant/nonanticipation.hpp"

namespace nonant::scenarios {

namespace {

using Members = std::vector<SignalFamily::Member>;

Rational payload(const std::string& token) {
  try {
    return parse_rational(token);
  } catch (const Error&) {
    throw Error(ErrorKind::kNonNumericPayload, "cell token '" + token + "' is not a rational");
  }
}

std::vector<Rational> integer_stamps(std::size_t cells) {
  std::vector<Rational> stamps;
  for (std::size_t k = 0; k <= cells; ++k) stamps.emplace_back(static_cast<std::int64_t>(k));
  return stamps;
}

Scenario make(TimeGrid grid, const Members& omega, const Members& z,
              const std::vector<std::vector<std::string>>& alpha_names) {
  const std::size_t cells = grid.cell_count();
  auto inst = make_instance(std::move(grid), SignalFamily(FamilyRole::kDisturbance, cells, omega),
                            SignalFamily(FamilyRole::kTrajectory, cells, z));
  std::vector<IndexSet> values;
  for (const auto& names : alpha_names) {
    IndexSet v;
    for (const auto& n : names) v.push_back(inst->z().index_of(n));
    values.push_back(std::move(v));
  }
  Multifunction alpha(inst, std::move(values));
  return {inst, std::move(alpha)};
}

// Affine piece on a cell: value at the cell start and slope.
std::string piece(const Rational& start, const Rational& slope) {
  return "(" + format_rational(start) + "," + format_rational(slope) + ")";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::kUsage, "bad " + what + " '" + s + "'");
  }
}

}  // namespace

Rational integrate(const ControlSystem& sys, const std::vector<std::string>& u, const std::vector<std::string>& v) {
  const std::size_t cells = sys.grid.cell_count();
  if (u.size() != cells || v.size() != cells) {
    throw Error(ErrorKind::kValidation, "signal length does not match the control grid");
  }
  Rational x = sys.x0;
  for (std::size_t k = 0; k < cells; ++k) {
    const Rational rate = sys.dynamics == Dynamics::kPlus ? payload(u[k]) + payload(v[k]) : payload(u[k]) - payload(v[k]);
    x += rate * sys.grid.width(k);
  }
  return x;
}

Multifunction build_retention(const Multifunction& s, const IndexSet& n) {
  IndexSet allowed = n;
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  std::vector<IndexSet> values;
  for (const auto& v : s.values()) values.push_back(set_intersection(v, allowed));
  return Multifunction(s.instance_ptr(), std::move(values));
}

Scenario build_example1() {
  // Disturbances share cell 0; w2 and w3 also share cell 1. h1 and h2 share
  // cell 0 only; h3 differs from both on cell 0.
  Members omega = {
      {"w1", {"0", "1", "1"}},
      {"w2", {"0", "0", "1"}},
      {"w3", {"0", "0", "0"}},
  };
  Members z = {
      {"h1", {"a", "b", "b"}},
      {"h2", {"a", "c", "c"}},
      {"h3", {"e", "e", "e"}},
  };
  return make(TimeGrid(integer_stamps(3)), omega, z, {{"h1", "h2"}, {"h1", "h2", "h3"}, {"h2", "h3"}});
}

Scenario build_example2() {
  // w_ij(t) = (-1)^i max(0, t - j) and h_ij(t) = a_i (1 + max(0, t - j)),
  // encoded per unit cell as affine pieces.
  Members omega;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const Rational sign(i % 2 == 0 ? 1 : -1);
      SignalFamily::Member m{"w" + std::to_string(i) + std::to_string(j), {}};
      for (int k = 0; k < 3; ++k) {
        const bool active = k >= j;
        m.cells.push_back(piece(sign * Rational(std::max(0, k - j)), active ? sign : Rational(0)));
      }
      omega.push_back(std::move(m));
    }
  }
  const char* directions[] = {"[1,0]", "[0,1]", "[-1,0]", "[0,-1]"};
  Members z;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 0; j <= 2; ++j) {
      SignalFamily::Member m{"h" + std::to_string(i) + std::to_string(j), {}};
      for (int k = 0; k < 3; ++k) {
        m.cells.push_back(std::string(directions[i - 1]) + "*" +
                          piece(Rational(1 + std::max(0, k - j)), Rational(k >= j ? 1 : 0)));
      }
      z.push_back(std::move(m));
    }
  }
  return make(TimeGrid(integer_stamps(3)), omega, z,
              {
                  {"h10", "h11", "h12", "h21", "h32", "h41"},  // w11
                  {"h20", "h21", "h22", "h11", "h32", "h42"},  // w12
                  {"h30", "h31", "h32", "h12", "h21", "h41"},  // w21
                  {"h40", "h41", "h42", "h12", "h22", "h31"},  // w22
              });
}

std::size_t example3_stamp_index(std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw Error(ErrorKind::kValidation, "example-3 index out of range");
  return n + 2 - i;
}

Scenario build_example3(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::kValidation, "example-3 truncation must be at least 1");
  std::vector<Rational> stamps = {Rational(0), Rational(1)};
  for (std::size_t i = n; i >= 2; --i) stamps.push_back(Rational(1) + Rational(1, static_cast<std::int64_t>(i)));
  stamps.push_back(Rational(2));
  ControlSystem sys{TimeGrid(stamps), {}, {}, Dynamics::kMinus, Rational(0)};
  const std::size_t cells = sys.grid.cell_count();

  // v_i jumps to 1 right after 1 + 1/i; u_i switches to 1 - 1/i right after 1.
  Members omega;
  Members z;
  for (std::size_t i = 1; i <= n; ++i) {
    SignalFamily::Member v{"v" + std::to_string(i), {}};
    SignalFamily::Member u{"u" + std::to_string(i), {}};
    const std::size_t jump = example3_stamp_index(n, i);
    for (std::size_t k = 0; k < cells; ++k) {
      v.cells.push_back(k >= jump ? "1" : "0");
      u.cells.push_back(k == 0 ? "0" : format_rational(Rational(1) - Rational(1, static_cast<std::int64_t>(i))));
    }
    omega.push_back(std::move(v));
    z.push_back(std::move(u));
  }

  // Meeting criterion x(2) >= 0.
  std::vector<std::vector<std::string>> alpha(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (integrate(sys, z[i].cells, omega[j].cells) >= Rational(0)) alpha[j].push_back(z[i].name);
    }
  }
  return make(sys.grid, omega, z, alpha);
}

std::vector<Rational> default_example4_levels() {
  return {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
}

ControlSystem build_example4(const std::vector<Rational>& levels) {
  if (levels.empty()) throw Error(ErrorKind::kValidation, "example-4 needs at least one control level");
  std::vector<Rational> sorted = levels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& l : sorted) {
    if (l < Rational(-1) || l > Rational(1)) {
      throw Error(ErrorKind::kValidation, "control level " + format_rational(l) + " outside [-1, 1]");
    }
  }
  return ControlSystem{TimeGrid(integer_stamps(3)),
                       sorted,
                       {{"v1", {"0", "1", "0"}}, {"v2", {"0", "-1", "-1"}}},
                       Dynamics::kPlus,
                       Rational(0)};
}

namespace {

Members control_grid(const ControlSystem& sys) {
  Members z;
  const std::size_t cells = sys.grid.cell_count();
  std::vector<std::size_t> digits(cells, 0);
  while (true) {
    SignalFamily::Member m{"u(", {}};
    for (std::size_t k = 0; k < cells; ++k) {
      m.cells.push_back(format_rational(sys.levels[digits[k]]));
      m.name += (k ? "," : "") + m.cells.back();
    }
    m.name += ")";
    z.push_back(std::move(m));
    std::size_t k = cells;
    while (k > 0 && ++digits[k - 1] == sys.levels.size()) digits[--k] = 0;
    if (k == 0) break;
  }
  return z;
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

}  // namespace

Scenario alpha_rho(const ControlSystem& sys, const Rational& rho) {
  if (sys.levels.empty()) throw Error(ErrorKind::kValidation, "empty control level set");
  Members z = control_grid(sys);
  std::vector<std::vector<std::string>> alpha;
  for (const auto& v : sys.disturbances) {
    std::vector<std::string> names;
    for (const auto& u : z) {
      if (abs(integrate(sys, u.cells, v.cells)) >= -rho) names.push_back(u.name);
    }
    alpha.push_back(std::move(names));
  }
  return make(sys.grid, sys.disturbances, z, alpha);
}

RhoSearchResult optimal_rho(const ControlSystem& sys) {
  if (sys.levels.empty()) throw Error(ErrorKind::kValidation, "empty control level set");
  std::set<Rational> values = {Rational(0)};
  for (const auto& u : control_grid(sys)) {
    for (const auto& v : sys.disturbances) values.insert(-abs(integrate(sys, u.cells, v.cells)));
  }

  std::optional<RhoSearchResult> best;
  std::vector<Rational> tried;
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    tried.push_back(*it);
    auto [inst, alpha] = alpha_rho(sys, *it);
    Multifunction g = greatest_na(alpha);
    if (!is_total(g)) {
      best->next_lower = *it;
      break;
    }
    best = RhoSearchResult{*it, {}, std::nullopt, std::move(g)};
  }
  // rho = 0 admits every control, so `best` is always set.
  best->candidates_tried = std::move(tried);
  return std::move(*best);
}

Scenario random_instance(std::uint64_t seed, const RandomSizes& sizes) {
  if (sizes.omega == 0 || sizes.z == 0 || sizes.cells == 0 || sizes.alphabet == 0) {
    throw Error(ErrorKind::kValidation, "random instance sizes must be positive");
  }
  if (sizes.density < 0.0 || sizes.density > 1.0) {
    throw Error(ErrorKind::kValidation, "density must lie in [0, 1]");
  }
  double capacity = 1.0;
  for (std::size_t k = 0; k < sizes.cells; ++k) capacity *= static_cast<double>(sizes.alphabet);
  if (capacity < static_cast<double>(std::max(sizes.omega, sizes.z))) {
    throw Error(ErrorKind::kValidation, "alphabet too small for the requested number of distinct signals");
  }

  std::mt19937_64 rng(seed);
  auto draw_family = [&](const char* prefix, std::size_t count) {
    Members out;
    std::set<std::vector<std::string>> seen;
    while (out.size() < count) {
      std::vector<std::string> cells;
      for (std::size_t k = 0; k < sizes.cells; ++k) cells.push_back(std::to_string(rng() % sizes.alphabet));
      if (!seen.insert(cells).second) continue;
      out.push_back({prefix + std::to_string(out.size()), std::move(cells)});
    }
    return out;
  };
  Members omega = draw_family("w", sizes.omega);
  Members z = draw_family("h", sizes.z);

  std::vector<std::vector<std::string>> alpha(sizes.omega);
  for (auto& names : alpha) {
    for (const auto& h : z) {
      const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (r < sizes.density) names.push_back(h.name);
    }
  }
  return make(TimeGrid(integer_stamps(sizes.cells)), omega, z, alpha);
}

Scenario by_name(const std::string& name, const std::optional<Rational>& rho) {
  auto parts = split(name, ':');
  if (parts.empty()) throw Error(ErrorKind::kUsage, "empty scenario name");
  const std::string& kind = parts[0];
  if (kind == "ex1" && parts.size() == 1) return build_example1();
  if (kind == "ex2" && parts.size() == 1) return build_example2();
  if (kind == "ex3" && parts.size() == 2) return build_example3(parse_size(parts[1], "truncation"));
  if (kind == "ex4" && parts.size() <= 2) {
    std::vector<Rational> levels = default_example4_levels();
    if (parts.size() == 2) {
      levels.clear();
      for (const auto& l : split(parts[1], ',')) levels.push_back(parse_rational(l));
    }
    auto sys = build_example4(levels);
    return alpha_rho(sys, rho ? *rho : optimal_rho(sys).rho_star);
  }
  if (kind == "random" && parts.size() == 3) {
    RandomSizes sizes;
    auto fields = split(parts[2], ',');
    if (fields.size() < 3 || fields.size() > 5) {
      throw Error(ErrorKind::kUsage, "random sizes are omega,z,cells[,alphabet[,density]]");
    }
    sizes.omega = parse_size(fields[0], "omega size");
    sizes.z = parse_size(fields[1], "z size");
    sizes.cells = parse_size(fields[2], "cell count");
    if (fields.size() >= 4) sizes.alphabet = parse_size(fields[3], "alphabet size");
    if (fields.size() == 5) {
      try {
        sizes.density = std::stod(fields[4]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::kUsage, "bad density '" + fields[4] + "'");
      }
    }
    return random_instance(parse_size(parts[1], "seed"), sizes);
  }
  throw Error(ErrorKind::kUsage, "unknown scenario '" + name + "'");
}

}  // namespace nonant::scenarios
