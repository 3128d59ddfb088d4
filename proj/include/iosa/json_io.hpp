#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "builtins.hpp"
#include "duality.hpp"
#include "subordination.hpp"

namespace iosa {

using json = nlohmann::json;

struct AlgebraInput {
  Carrier carrier;
  std::optional<std::vector<Elem>> neg;
};

inline std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline json read_json_file(const std::filesystem::path& p) { return parse_json_text(read_text_file(p), p.string()); }

namespace detail {

inline Elem json_index(const json& v, const FinPoset& p, const char* what) {
  if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
    auto i = v.get<std::size_t>();
    if (i >= p.size()) throw InputError(std::string(what) + " index out of range: " + std::to_string(i));
    return i;
  }
  if (v.is_string()) {
    auto i = p.index_of(v.get<std::string>());
    if (!i) throw InputError(std::string(what) + " names unknown element " + v.get<std::string>());
    return *i;
  }
  throw InputError(std::string(what) + " entries must be indices or element names");
}

inline std::vector<std::pair<Elem, Elem>> json_pairs(const json& arr, const FinPoset& p, const char* what) {
  if (!arr.is_array()) throw InputError(std::string(what) + " must be an array of pairs");
  std::vector<std::pair<Elem, Elem>> out;
  for (const auto& pr : arr) {
    if (!pr.is_array() || pr.size() != 2) throw InputError(std::string(what) + " entries must be pairs");
    out.emplace_back(json_index(pr[0], p, what), json_index(pr[1], p, what));
  }
  return out;
}

}  // namespace detail

inline Carrier carrier_from_poset(FinPoset p, std::string name) {
  try {
    return make_carrier(to_lattice(p), std::move(name));
  } catch (const NotALattice&) {
    return make_carrier(std::move(p), std::move(name));
  } catch (const InputError&) {  // unbounded
    return make_carrier(std::move(p), std::move(name));
  }
}

// {"elements":[...], "leq":[[0/1,...],...] | "hasse":[[i,j],...], "neg":[...]}
inline AlgebraInput algebra_from_json(const json& j) {
  if (!j.is_object()) throw InputError("algebra JSON must be an object");
  if (!j.contains("elements") || !j["elements"].is_array()) throw InputError("algebra JSON needs an \"elements\" array");
  std::vector<std::string> labels;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw InputError("element names must be strings");
    labels.push_back(e.get<std::string>());
  }
  const std::size_t n = labels.size();
  if (n == 0) throw InputError("algebra has no elements");
  if (n > kMaxElements) throw TooLarge("more than 256 elements");
  FinPoset p;
  if (j.contains("leq")) {
    const json& m = j["leq"];
    if (!m.is_array() || m.size() != n) throw InputError("\"leq\" must be an n x n matrix");
    Matrix mat(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
      if (!m[a].is_array() || m[a].size() != n) throw InputError("\"leq\" must be an n x n matrix");
      for (std::size_t b = 0; b < n; ++b) {
        const json& v = m[a][b];
        if (v.is_boolean()) mat[a][b] = v.get<bool>();
        else if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) mat[a][b] = v.get<int>() == 1;
        else throw InputError("\"leq\" entries must be 0/1 or booleans");
      }
    }
    p = validate_poset(mat, labels);
  } else if (j.contains("hasse")) {
    FinPoset plain = validate_poset([&] {
      Matrix id(n, std::vector<bool>(n));
      for (std::size_t a = 0; a < n; ++a) id[a][a] = true;
      return id;
    }(), labels);
    p = poset_from_hasse(n, detail::json_pairs(j["hasse"], plain, "hasse"), labels);
  } else {
    throw InputError("algebra JSON needs \"leq\" or \"hasse\"");
  }
  AlgebraInput out{carrier_from_poset(std::move(p), j.value("name", std::string{})), std::nullopt};
  if (j.contains("neg")) {
    const json& t = j["neg"];
    if (!t.is_array() || t.size() != n) throw InputError("\"neg\" must list one entry per element");
    std::vector<Elem> neg;
    for (const auto& v : t) neg.push_back(detail::json_index(v, *out.carrier.poset, "neg"));
    out.neg = std::move(neg);
  } else if (out.carrier.lattice && out.carrier.lattice->neg()) {
    out.neg = out.carrier.lattice->neg();
  }
  return out;
}

inline json algebra_to_json(const FinPoset& p, const std::optional<std::vector<Elem>>& neg, const std::string& name = {}) {
  json j;
  if (!name.empty()) j["name"] = name;
  j["elements"] = p.labels();
  json m = json::array();
  for (Elem a = 0; a < p.size(); ++a) {
    json row = json::array();
    for (Elem b = 0; b < p.size(); ++b) row.push_back(p.leq(a, b) ? 1 : 0);
    m.push_back(row);
  }
  j["leq"] = m;
  if (neg) j["neg"] = *neg;
  return j;
}

inline json pairs_to_json(const Relation& r) {
  json arr = json::array();
  for (auto [a, b] : r.pairs()) arr.push_back({a, b});
  return arr;
}

inline json subordination_to_json(const ProtoSubAlg& s) {
  return {{"algebra", algebra_to_json(s.poset(), s.neg, s.carrier.name)}, {"prec", pairs_to_json(s.prec)}};
}

// "builtin:NAME", a file path, or (when base_dir is given) a path relative to it.
inline AlgebraInput load_algebra(const std::string& spec, const std::filesystem::path& base_dir = {}) {
  if (spec.rfind("builtin:", 0) == 0) {
    Carrier c = builtin::carrier(spec.substr(8));
    std::optional<std::vector<Elem>> neg;
    if (c.lattice && c.lattice->neg()) neg = c.lattice->neg();
    return {std::move(c), neg};
  }
  std::filesystem::path p = spec;
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return algebra_from_json(read_json_file(p));
}

inline ProtoSubAlg subordination_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("prec"))
    throw InputError("subordination JSON needs \"algebra\" and \"prec\"");
  AlgebraInput alg = j["algebra"].is_string() ? load_algebra(j["algebra"].get<std::string>(), base_dir)
                                              : algebra_from_json(j["algebra"]);
  auto pairs = detail::json_pairs(j["prec"], *alg.carrier.poset, "prec");
  ProtoSubAlg s = make_subalg(alg.carrier, Relation::from_pairs(alg.carrier.size(), pairs));
  s.neg = alg.neg;
  return s;
}

inline Relation relation_from_json(const json& j, const FinPoset& p) {
  return Relation::from_pairs(p.size(), detail::json_pairs(j, p, "prec"));
}

inline json space_to_json(const SubordinationSpace& sp) {
  json order = json::array();
  for (std::size_t i = 0; i < sp.size(); ++i)
    for (std::size_t k = 0; k < sp.size(); ++k)
      if (sp.leq(i, k)) order.push_back({i, k});
  return {{"points", sp.labels}, {"order", order}, {"R", pairs_to_json(sp.R)}};
}

inline SubordinationSpace space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("R")) throw InputError("space JSON needs \"points\" and \"R\"");
  SubordinationSpace sp;
  sp.labels = j["points"].get<std::vector<std::string>>();
  const std::size_t n = sp.labels.size();
  sp.order.assign(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) sp.order[i][i] = true;
  auto idx = [&](const json& v) {
    auto i = v.get<std::size_t>();
    if (i >= n) throw InputError("space point index out of range");
    return i;
  };
  if (j.contains("order"))
    for (const auto& pr : j["order"]) sp.order[idx(pr.at(0))][idx(pr.at(1))] = true;
  sp.R = Relation(n);
  for (const auto& pr : j["R"]) sp.R.insert(idx(pr.at(0)), idx(pr.at(1)));
  return sp;
}

}  // namespace iosa
