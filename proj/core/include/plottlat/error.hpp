#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plottlat/system.hpp"

namespace plottlat {

enum class Errc {
  DuplicateElement,
  UnknownElement,
  CycleDetected,
  DomainTooLarge,
  NotAnIdeal,
  TableIncomplete,
  ValueNotSubset,
  ValueNotIdeal,
  PlottFailed,
  QuotaOnNontrivialPoset,
  NotAPartition,
  OrderCrossesParts,
  PosetMismatch,
  UncheckedChoiceFunction,
  NotAmple,
  NotStable,
  EmptyFamily,
  PreconditionFailed,
  InternalInvariant,
  MalformedPreferences,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure of the library surfaces as an Error. `witness` holds the
// systems that demonstrate the failure, when there are any.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<System> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<System>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<System> witness_;
};

}  // namespace plottlat
