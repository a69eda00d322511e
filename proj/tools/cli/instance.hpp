#pragma once

#include <cstdint>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "plottlat/stability.hpp"

namespace plottlat::cli {

struct ParseOptions {
  Mode mode = Mode::Strict;
  /// Run the exhaustive Plott check on table families while parsing. When
  /// off, tables come back Unchecked.
  bool validate_tables = true;
  std::uint64_t cap = kDefaultIdealCap;
};

/// Builds a Problem from an instance document:
///
///   {"elements": ["a", "b"],
///    "covers":   [["a", "b"]],                       (optional)
///    "worker":   {"family": "quota", "params": {"priority": ["a", "b"], "quota": 1}},
///    "firm":     {"family": "table", "params": [{"ideal": ["a"], "choice": []}, ...],
///                 "default": "identity"},            (optional: identity | empty)
///   }
///
/// Aggregates read {"family": "aggregate", "params": {"parts": [[ids]...],
/// "children": [choice...]}}, each child choosing over its part.
///
/// Malformed documents throw Error(ParseError) whose message starts with the
/// JSON pointer of the offending value.
Problem parse_instance(const nlohmann::json& doc, const ParseOptions& options = {});

/// Reads and parses a file; unreadable files and invalid JSON are ParseErrors.
Problem load_instance(const std::filesystem::path& path, const ParseOptions& options = {});

/// Inverse of parse_instance. Tables are written out in full, in canonical
/// ideal order; parsing the result yields an equal Problem.
nlohmann::ordered_json serialize_instance(const Problem& pr);

}  // namespace plottlat::cli
