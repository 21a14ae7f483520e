#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>
#include "nonant/multifunction.hpp"
#include "nonant/scenarios.hpp"

namespace nonant::io {

using Json = nlohmann::ordered_json;

/// Instance file:
///   { "grid":  ["0/1", "1/1", ...],
///     "omega": [{"name": ..., "cells": [tok, ...]}, ...],
///     "z":     [{"name": ..., "cells": [tok, ...]}, ...],
///     "alpha": {omega-name: [z-name, ...], ...},
///     "metadata": {...} }                      (optional)
/// Errors are Error(kValidation) naming the offending field.
scenarios::Scenario instance_from_json(const Json& doc);
Json instance_to_json(const Multifunction& a, const Json& metadata = Json::object());

scenarios::Scenario load(const std::filesystem::path& path);
void save_instance(const Multifunction& a, const std::filesystem::path& path,
                   const Json& metadata = Json::object());

// Name-keyed multifunction value, keys in Omega order, names in Z order.
Json multifunction_to_json(const Multifunction& a);

// FNV-1a 64 over the canonical dump of instance_to_json(a) without metadata,
// as 16 hex digits.
std::string digest(const Multifunction& a);

// Reports are arbitrary JSON documents written with 2-space indentation and a
// trailing newline.
void save(const Json& report, const std::filesystem::path& path);

}  // namespace nonant::io
