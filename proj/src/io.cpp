#include "nonant/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "nonant/error.hpp"

namespace nonant::io {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::kValidation, what); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) invalid(where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::vector<SignalFamily::Member> members(const Json& arr, const std::string& where) {
  if (!arr.is_array()) invalid(where + ": expected an array");
  std::vector<SignalFamily::Member> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const Json& name = field(arr[i], "name", at);
    const Json& cells = field(arr[i], "cells", at);
    if (!name.is_string()) invalid(at + ".name: expected a string");
    if (!cells.is_array()) invalid(at + ".cells: expected an array");
    SignalFamily::Member m{name.get<std::string>(), {}};
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!cells[k].is_string()) invalid(at + ".cells[" + std::to_string(k) + "]: expected a string token");
      m.cells.push_back(cells[k].get<std::string>());
    }
    out.push_back(std::move(m));
  }
  return out;
}

Json family_to_json(const SignalFamily& fam) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    arr.push_back(Json{{"name", fam.name(i)}, {"cells", fam.tokens(i)}});
  }
  return arr;
}

}  // namespace

scenarios::Scenario instance_from_json(const Json& doc) {
  if (!doc.is_object()) invalid("instance: expected a JSON object");
  const Json& grid_json = field(doc, "grid", "instance");
  if (!grid_json.is_array()) invalid("grid: expected an array of \"p/q\" strings");
  std::vector<Rational> stamps;
  for (std::size_t k = 0; k < grid_json.size(); ++k) {
    if (!grid_json[k].is_string()) invalid("grid[" + std::to_string(k) + "]: expected a \"p/q\" string");
    try {
      stamps.push_back(parse_rational(grid_json[k].get<std::string>()));
    } catch (const Error& e) {
      invalid("grid[" + std::to_string(k) + "]: " + e.what());
    }
  }
  TimeGrid grid = [&] {
    try {
      return TimeGrid(stamps);
    } catch (const Error& e) {
      invalid(std::string("grid: ") + e.what());
    }
  }();
  const std::size_t cells = grid.cell_count();
  SignalFamily omega(FamilyRole::kDisturbance, cells, members(field(doc, "omega", "instance"), "omega"));
  SignalFamily z(FamilyRole::kTrajectory, cells, members(field(doc, "z", "instance"), "z"));
  auto inst = make_instance(std::move(grid), std::move(omega), std::move(z));

  const Json& alpha_json = field(doc, "alpha", "instance");
  if (!alpha_json.is_object()) invalid("alpha: expected an object keyed by omega names");
  std::vector<IndexSet> values(inst->omega().size());
  for (const auto& [key, value] : alpha_json.items()) {
    std::size_t w = 0;
    try {
      w = inst->omega().index_of(key);
    } catch (const Error&) {
      invalid("alpha: unknown omega name '" + key + "'");
    }
    if (!value.is_array()) invalid("alpha." + key + ": expected an array of z names");
    for (const auto& name : value) {
      if (!name.is_string()) invalid("alpha." + key + ": expected z names");
      try {
        values[w].push_back(inst->z().index_of(name.get<std::string>()));
      } catch (const Error&) {
        invalid("alpha." + key + ": unknown z name '" + name.get<std::string>() + "'");
      }
    }
  }
  Multifunction alpha(inst, std::move(values));
  return {inst, std::move(alpha)};
}

Json multifunction_to_json(const Multifunction& a) {
  const Instance& inst = a.instance();
  Json out = Json::object();
  for (std::size_t w = 0; w < a.size(); ++w) {
    Json names = Json::array();
    for (std::size_t h : a[w]) names.push_back(inst.z().name(h));
    out[inst.omega().name(w)] = std::move(names);
  }
  return out;
}

Json instance_to_json(const Multifunction& a, const Json& metadata) {
  const Instance& inst = a.instance();
  Json grid = Json::array();
  for (const auto& s : inst.grid().stamps()) grid.push_back(format_rational_pq(s));
  Json doc = {
      {"grid", std::move(grid)},
      {"omega", family_to_json(inst.omega())},
      {"z", family_to_json(inst.z())},
      {"alpha", multifunction_to_json(a)},
  };
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

scenarios::Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    // e.what() carries the line and column.
    invalid("parse error in '" + path.string() + "': " + e.what());
  }
  return instance_from_json(doc);
}

void save(const Json& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kValidation, "cannot write '" + path.string() + "'");
  out << report.dump(2) << "\n";
}

void save_instance(const Multifunction& a, const std::filesystem::path& path, const Json& metadata) {
  save(instance_to_json(a, metadata), path);
}

std::string digest(const Multifunction& a) {
  const std::string text = instance_to_json(a).dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace nonant::io
