#include "instance.hpp"

#include <algorithm>
#include <fstream>
#include <memory>

#include "plottlat/error.hpp"

namespace plottlat::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, (where.empty() ? "/" : where) + ": " + what);
}

const json& field(const json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> read_ids(const json& arr, const std::string& where) {
  if (!arr.is_array()) fail(where, "expected an array of identifiers");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) fail(where + "/" + std::to_string(i), "expected a string identifier");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

System read_system(const Poset& p, const json& arr, const std::string& where) {
  const auto ids = read_ids(arr, where);
  System out(p.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto idx = p.find(ids[i]);
    if (!idx) fail(where + "/" + std::to_string(i), "unknown element '" + ids[i] + "'");
    out.insert(*idx);
  }
  return out;
}

// Library errors raised while building a choice function become positioned
// parse errors, except for outcomes that are not about document shape.
template <typename Fn>
auto positioned(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::DomainTooLarge || e.code() == Errc::PlottFailed ||
        e.code() == Errc::InternalInvariant)
      throw;
    fail(where, e.what());
  }
}

ChoiceFunction parse_choice(const std::shared_ptr<const Poset>& poset, const json& node, const std::string& where,
                            const ParseOptions& options);

ChoiceFunction parse_table(const std::shared_ptr<const Poset>& poset, const json& node, const std::string& where,
                           const ParseOptions& options) {
  const auto& p = *poset;
  const auto& params = field(node, where, "params");
  const auto params_at = where + "/params";
  if (!params.is_array()) fail(params_at, "table params must be an array of {ideal, choice} entries");

  TableEntries entries;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto at = params_at + "/" + std::to_string(i);
    const auto key = read_system(p, field(params[i], at, "ideal"), at + "/ideal");
    const auto value = read_system(p, field(params[i], at, "choice"), at + "/choice");
    if (!p.is_ideal(key)) fail(at + "/ideal", "not an ideal of the poset");
    if (!value.subset_of(key)) fail(at + "/choice", "choice is not a subset of its ideal");
    if (!p.is_ideal(value)) fail(at + "/choice", "choice is not an ideal");
    if (!entries.emplace(key, value).second) fail(at + "/ideal", "ideal listed twice");
  }

  if (auto it = node.find("default"); it != node.end()) {
    if (!it->is_string() || (*it != "identity" && *it != "empty"))
      fail(where + "/default", "default must be \"identity\" or \"empty\"");
    const bool identity = *it == "identity";
    for (const auto& ideal : positioned(where, [&] { return enumerate_ideals(p, options.cap); })) {
      if (!entries.contains(ideal)) entries.emplace(ideal, identity ? ideal : p.empty_system());
    }
  }

  TableOptions table_options;
  table_options.validate = options.validate_tables && options.mode == Mode::Strict;
  table_options.strict = true;
  table_options.cap = options.cap;
  return positioned(where, [&] { return make_table(poset, std::move(entries), table_options); });
}

ChoiceFunction parse_quota(const std::shared_ptr<const Poset>& poset, const json& node, const std::string& where) {
  const auto& params = field(node, where, "params");
  const auto at = where + "/params";
  const auto ids = read_ids(field(params, at, "priority"), at + "/priority");
  const auto& q = field(params, at, "quota");
  if (!q.is_number_integer() || q.get<std::int64_t>() < 0) fail(at + "/quota", "quota must be a nonnegative integer");
  std::vector<std::size_t> priority;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto idx = poset->find(ids[i]);
    if (!idx) fail(at + "/priority/" + std::to_string(i), "unknown element '" + ids[i] + "'");
    priority.push_back(*idx);
  }
  return positioned(where, [&] { return make_quota(poset, priority, q.get<std::size_t>()); });
}

ChoiceFunction parse_aggregate(const std::shared_ptr<const Poset>& poset, const json& node, const std::string& where,
                               const ParseOptions& options) {
  const auto& params = field(node, where, "params");
  const auto at = where + "/params";
  const auto& parts_doc = field(params, at, "parts");
  const auto& children_doc = field(params, at, "children");
  if (!parts_doc.is_array()) fail(at + "/parts", "expected an array of parts");
  if (!children_doc.is_array()) fail(at + "/children", "expected an array of choice functions");
  if (parts_doc.size() != children_doc.size()) fail(at + "/children", "need exactly one child per part");

  // Parts keep document order: a child's element indices follow its part.
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t i = 0; i < parts_doc.size(); ++i) {
    const auto part_at = at + "/parts/" + std::to_string(i);
    const auto ids = read_ids(parts_doc[i], part_at);
    auto& part = parts.emplace_back();
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const auto idx = poset->find(ids[k]);
      if (!idx) fail(part_at + "/" + std::to_string(k), "unknown element '" + ids[k] + "'");
      if (std::find(part.begin(), part.end(), *idx) != part.end())
        fail(part_at + "/" + std::to_string(k), "element '" + ids[k] + "' listed twice");
      part.push_back(*idx);
    }
  }
  std::vector<ChoiceFunction> children;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto child_at = at + "/children/" + std::to_string(i);
    auto sub = std::make_shared<const Poset>(positioned(child_at, [&] { return poset->induced(parts[i]); }));
    children.push_back(parse_choice(sub, children_doc[i], child_at, options));
  }
  return positioned(where, [&] { return make_aggregate(poset, std::move(parts), std::move(children)); });
}

ChoiceFunction parse_choice(const std::shared_ptr<const Poset>& poset, const json& node, const std::string& where,
                            const ParseOptions& options) {
  const auto& family = field(node, where, "family");
  if (!family.is_string()) fail(where + "/family", "family must be a string");
  if (family == "table") return parse_table(poset, node, where, options);
  if (family == "quota") return parse_quota(poset, node, where);
  if (family == "aggregate") return parse_aggregate(poset, node, where, options);
  fail(where + "/family", "unknown family '" + family.get<std::string>() + "'");
}

nlohmann::ordered_json names_of(const Poset& p, const System& s) {
  auto out = nlohmann::ordered_json::array();
  for (auto& id : p.names(s)) out.push_back(std::move(id));
  return out;
}

nlohmann::ordered_json serialize_choice(const ChoiceFunction& cf) {
  const auto& p = cf.poset();
  nlohmann::ordered_json node;
  node["family"] = std::string(to_string(cf.family()));
  if (const auto* q = cf.quota_params()) {
    auto priority = nlohmann::ordered_json::array();
    for (auto e : q->priority) priority.push_back(p.name(e));
    node["params"] = {{"priority", priority}, {"quota", q->quota}};
  } else if (const auto* t = cf.table_params()) {
    std::vector<System> keys;
    for (const auto& [k, v] : t->entries) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), canonical_less);
    auto entries = nlohmann::ordered_json::array();
    for (const auto& k : keys)
      entries.push_back({{"ideal", names_of(p, k)}, {"choice", names_of(p, t->entries.at(k))}});
    node["params"] = std::move(entries);
  } else {
    const auto* g = cf.aggregate_params();
    auto parts = nlohmann::ordered_json::array();
    for (const auto& part : g->parts) {
      auto ids = nlohmann::ordered_json::array();
      for (auto e : part) ids.push_back(p.name(e));
      parts.push_back(std::move(ids));
    }
    auto children = nlohmann::ordered_json::array();
    for (const auto& child : g->children) children.push_back(serialize_choice(child));
    node["params"] = {{"parts", parts}, {"children", children}};
  }
  return node;
}

}  // namespace

Problem parse_instance(const json& doc, const ParseOptions& options) {
  if (!doc.is_object()) fail("", "instance must be a JSON object");
  const auto elements = read_ids(field(doc, "", "elements"), "/elements");
  std::vector<Poset::Cover> covers;
  if (auto it = doc.find("covers"); it != doc.end()) {
    if (!it->is_array()) fail("/covers", "expected an array of [lower, upper] pairs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto at = "/covers/" + std::to_string(i);
      const auto pair = read_ids((*it)[i], at);
      if (pair.size() != 2) fail(at, "a cover is a [lower, upper] pair");
      covers.emplace_back(pair[0], pair[1]);
    }
  }
  auto poset = std::make_shared<const Poset>(positioned("/covers", [&] { return Poset::build(elements, covers); }));
  auto worker = parse_choice(poset, field(doc, "", "worker"), "/worker", options);
  auto firm = parse_choice(poset, field(doc, "", "firm"), "/firm", options);
  return Problem(std::move(worker), std::move(firm), options.mode);
}

Problem load_instance(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, path.string() + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
  try {
    return parse_instance(doc, options);
  } catch (const Error& e) {
    if (e.code() != Errc::ParseError) throw;
    const std::string_view message = e.what();
    const auto prefix = to_string(Errc::ParseError).size() + 2;
    throw Error(Errc::ParseError, path.string() + ":" + std::string(message.substr(prefix)), e.witness());
  }
}

nlohmann::ordered_json serialize_instance(const Problem& pr) {
  const auto& p = pr.poset();
  nlohmann::ordered_json doc;
  doc["elements"] = p.elements();
  auto covers = nlohmann::ordered_json::array();
  for (const auto& [lo, hi] : p.cover_pairs()) covers.push_back({p.name(lo), p.name(hi)});
  doc["covers"] = std::move(covers);
  doc["worker"] = serialize_choice(pr.worker());
  doc["firm"] = serialize_choice(pr.firm());
  return doc;
}

}  // namespace plottlat::cli
