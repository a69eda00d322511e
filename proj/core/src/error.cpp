#include "plottlat/error.hpp"

namespace plottlat {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::DomainTooLarge: return "DomainTooLarge";
    case Errc::NotAnIdeal: return "NotAnIdeal";
    case Errc::TableIncomplete: return "TableIncomplete";
    case Errc::ValueNotSubset: return "ValueNotSubset";
    case Errc::ValueNotIdeal: return "ValueNotIdeal";
    case Errc::PlottFailed: return "PlottFailed";
    case Errc::QuotaOnNontrivialPoset: return "QuotaOnNontrivialPoset";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::OrderCrossesParts: return "OrderCrossesParts";
    case Errc::PosetMismatch: return "PosetMismatch";
    case Errc::UncheckedChoiceFunction: return "UncheckedChoiceFunction";
    case Errc::NotAmple: return "NotAmple";
    case Errc::NotStable: return "NotStable";
    case Errc::EmptyFamily: return "EmptyFamily";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::InternalInvariant: return "InternalInvariant";
    case Errc::MalformedPreferences: return "MalformedPreferences";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace plottlat
