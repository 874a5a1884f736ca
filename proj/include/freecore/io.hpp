#pragma once

/**
 * JSON documents and machine-readable reports.
 *
 * Algebra document (schema 1):
 *   {"schema": 1, "name": "...",
 *    "summands": [{"kind": "matrix", "eigenvalues": ["2/3", "1/3"]},
 *                 {"kind": "matrix", "size": 2, "weight": "1/2"},          // tracial block
 *                 {"kind": "hyperfinite", "weight": "1", "finite": true},
 *                 {"kind": "free_group_factor", "weight": "1", "param": "2", "amplification": "1"},
 *                 {"kind": "abstract_ii1", "weight": "1", "label": "N"},
 *                 {"kind": "full_iii", "weight": "1", "sd_generators": ["1/2"]}],
 *    "tail": {"gamma_generators": ["1/2", "1/3"], "scale": "1", "ratio": "1/2"}}
 *
 * Scenario document:
 *   {"kind": "compression_scenario", "distinguished": "o",
 *    "indices": [{"id": "o", "beta": "1/2", "atoms": ["1/2"], "q": "C"},
 *                {"id": "2", "beta": "1/2", "gamma": "1/4", "q": "R"}],
 *    "adjacency": [["o", "2"]]}
 *
 * Rationals are "p/q" strings (JSON integers are accepted); floats are rejected.
 */

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "freecore/algebra.hpp"
#include "freecore/amalg_engine.hpp"
#include "freecore/discrete_core.hpp"
#include "freecore/error.hpp"
#include "freecore/freeprod.hpp"
#include "freecore/mult_group.hpp"
#include "freecore/structure_expr.hpp"

namespace freecore::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Rational rational_of(const Json& j, const std::string& where) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error(ErrorKind::ParseError, where + ": expected a rational as \"p/q\" or an integer");
}

inline Extended extended_of(const Json& j, const std::string& where) {
  if (j.is_string()) return Extended::parse(j.get<std::string>());
  return Extended(rational_of(j, where));
}

inline std::vector<Rational> rationals_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline Rational weight_or(const Json& j, const std::string& where, const Rational& fallback) {
  return j.contains("weight") ? rational_of(j.at("weight"), where + ".weight") : fallback;
}

inline Summand summand_of(const Json& j, const std::string& where) {
  const auto kind = require(j, "kind", where).get<std::string>();
  if (kind == "matrix") {
    if (j.contains("eigenvalues")) {
      auto s = matrix_block(rationals_of(j.at("eigenvalues"), where + ".eigenvalues"));
      if (j.contains("weight")) s.weight = rational_of(j.at("weight"), where + ".weight");
      if (j.contains("size") && j.at("size").get<std::size_t>() != s.as<MatrixBlock>().size())
        throw Error(ErrorKind::ParseError, where + ": size disagrees with the eigenvalue count");
      return s;
    }
    auto n = require(j, "size", where).get<std::size_t>();
    if (n == 0) throw Error(ErrorKind::ParseError, where + ": size must be >= 1");
    return tracial_block(n, weight_or(j, where, Rational(1)));
  }
  if (kind == "hyperfinite")
    return Summand{HyperfiniteDiffuse{j.value("finite", true)}, weight_or(j, where, Rational(1))};
  if (kind == "free_group_factor") {
    FreeGroupFactor f;
    if (j.contains("param")) f.param = extended_of(j.at("param"), where + ".param");
    if (j.contains("amplification")) f.amplification = rational_of(j.at("amplification"), where + ".amplification");
    return Summand{f, weight_or(j, where, Rational(1))};
  }
  if (kind == "abstract_ii1") {
    AbstractII1 a{require(j, "label", where).get<std::string>(), Rational(1)};
    if (j.contains("amplification")) a.amplification = rational_of(j.at("amplification"), where + ".amplification");
    return Summand{a, weight_or(j, where, Rational(1))};
  }
  if (kind == "full_iii")
    return full_iii(rationals_of(require(j, "sd_generators", where), where + ".sd_generators"),
                    weight_or(j, where, Rational(1)));
  throw Error(ErrorKind::ParseError, where + ": unknown summand kind '" + kind + "'");
}

inline AlgebraSpec spec_of(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "algebra document must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw Error(ErrorKind::ParseError, "unsupported schema version " + j.at("schema").dump());
  AlgebraSpec s;
  s.name = j.value("name", std::string("unnamed"));
  if (j.contains("summands")) {
    const auto& arr = j.at("summands");
    if (!arr.is_array()) throw Error(ErrorKind::ParseError, "\"summands\" must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) s.summands.push_back(summand_of(arr[i], "summands[" + std::to_string(i) + "]"));
  }
  if (j.contains("tail")) {
    const auto& t = j.at("tail");
    TailRule rule;
    rule.gamma_generators = rationals_of(require(t, "gamma_generators", "tail"), "tail.gamma_generators");
    if (t.contains("scale")) rule.scale = rational_of(t.at("scale"), "tail.scale");
    if (t.contains("ratio")) rule.ratio = rational_of(t.at("ratio"), "tail.ratio");
    s.tail = rule;
  }
  return s;
}

inline Expr q_of(const std::string& text) {
  if (text == "C" || text == "ℂ") return expr::scalars();
  if (text == "R") return expr::hyperfinite(true);
  if (text.rfind("M_", 0) == 0) {
    try {
      return expr::matrix(static_cast<std::size_t>(std::stoul(text.substr(2))));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad matrix size in '" + text + "'");
    }
  }
  if (text.rfind("L(F_", 0) == 0 && text.back() == ')')
    return expr::free_group(Extended::parse(text.substr(4, text.size() - 5)));
  return expr::abstract(text);
}

inline CompressionScenario scenario_of(const Json& j) {
  if (j.value("kind", std::string()) != "compression_scenario")
    throw Error(ErrorKind::ParseError, "scenario document needs \"kind\": \"compression_scenario\"");
  CompressionScenario sc;
  const auto& arr = require(j, "indices", "scenario");
  if (!arr.is_array()) throw Error(ErrorKind::ParseError, "\"indices\" must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string where = "indices[" + std::to_string(i) + "]";
    const auto& x = arr[i];
    ScenarioIndex ix;
    ix.id = x.contains("id") ? (x.at("id").is_string() ? x.at("id").get<std::string>() : x.at("id").dump())
                             : std::to_string(i);
    ix.beta = rational_of(require(x, "beta", where), where + ".beta");
    if (x.contains("atoms")) ix.atoms = rationals_of(x.at("atoms"), where + ".atoms");
    if (x.contains("gamma")) ix.gamma = rational_of(x.at("gamma"), where + ".gamma");
    ix.q = q_of(x.value("q", std::string("R")));
    sc.indices.push_back(std::move(ix));
  }
  auto index_of = [&](const Json& ref) -> std::size_t {
    if (ref.is_number_unsigned()) return ref.get<std::size_t>();
    auto id = ref.is_string() ? ref.get<std::string>() : ref.dump();
    for (std::size_t i = 0; i < sc.indices.size(); ++i)
      if (sc.indices[i].id == id) return i;
    throw Error(ErrorKind::ParseError, "unknown index id '" + id + "'");
  };
  if (j.contains("distinguished")) sc.distinguished = index_of(j.at("distinguished"));
  if (j.contains("adjacency")) {
    Adjacency adj(sc.indices.size());
    for (const auto& e : j.at("adjacency")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "adjacency entries are [a, b] pairs");
      auto a = index_of(e[0]), b = index_of(e[1]);
      if (a >= adj.size() || b >= adj.size()) throw Error(ErrorKind::ParseError, "adjacency index out of range");
      if (a == b) continue;
      if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) adj[a].push_back(b);
      if (std::find(adj[b].begin(), adj[b].end(), a) == adj[b].end()) adj[b].push_back(a);
    }
    sc.adjacency = std::move(adj);
  }
  return sc;
}

inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, origin + ": " + e.what());
  }
}

inline Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline bool is_scenario(const Json& j) { return j.is_object() && j.value("kind", std::string()) == "compression_scenario"; }

// ---------------------------------------------------------------------------
// Serialization

inline std::string str(const Rational& r) { return r.to_string(); }

inline Json exponent_map(const MultGroup& g, const Rational& x) {
  Json m = Json::object();
  auto e = g.element_of(x);
  if (!e) return m;
  for (std::size_t k = 0; k < g.primes().size(); ++k)
    if (e->exponents[k] != 0) m[std::to_string(g.primes()[k])] = e->exponents[k];
  return m;
}

inline Json group_json(const MultGroup& g) {
  Json j;
  j["rank"] = g.rank();
  Json primes = Json::array();
  for (auto p : g.primes()) primes.push_back(p);
  j["primes"] = primes;
  Json basis = Json::array();
  for (const auto& gen : g.generators()) basis.push_back(exponent_map(g, gen));
  j["basis"] = basis;
  Json gens = Json::array();
  for (const auto& gen : g.generators()) gens.push_back(str(gen));
  j["generators"] = gens;
  auto l = g.cyclic_generator();
  j["cyclic_generator"] = l ? Json(str(*l)) : Json(nullptr);
  return j;
}

inline Json free_product_json(const FreeProductResult& r) {
  Json j;
  Json md = Json::array();
  for (const auto& a : r.m_d)
    md.push_back({{"weight", str(a.weight)}, {"first_summand", a.first_summand}, {"second_summand", a.second_summand}});
  j["m_d"] = md;
  j["m_c_type"] = r.m_c_type.to_string();
  j["m_c_unit_weight"] = str(r.m_c_unit_weight);
  j["sd"] = group_json(r.sd);
  j["t_set"] = r.t_set.to_string();
  if (r.reduction)
    j["reduction"] = {{"side", r.reduction->side}, {"summand", r.reduction->p.summand}, {"weight", str(r.reduction->weight)}};
  else
    j["reduction"] = nullptr;
  j["reduction_trace"] = r.reduction_trace;
  j["relative_commutant_trivial"] = r.relative_commutant_trivial;
  return j;
}

inline Json component_json(const CrossedComponent& c) {
  Json j;
  j["summand"] = c.source_index;
  j["shape"] = CrossedComponent::shape_name(c.shape);
  j["description"] = c.description.to_string();
  if (!c.amplifications.empty()) {
    Json a = Json::array();
    for (const auto& [g, t] : c.amplifications) a.push_back({{"coset", str(g)}, {"amplification", str(t)}});
    j["amplifications"] = a;
  }
  return j;
}

inline Json core_json(const CoreDecomposition& core) {
  Json j;
  j["gamma"] = group_json(core.labels.group);
  j["height"] = core.labels.height;
  Json table = Json::array();
  for (const auto& e : core.labels.labels)
    table.push_back({{"label", str(e.value)}, {"exponents", exponent_map(core.labels.group, e.value)},
                     {"trace", str(core.labels.trace_of_e(e.value))}});
  j["trace_table"] = table;
  j["trace_sum_diverges"] = core.labels.trace_sum_diverges();
  Json c1 = Json::array(), c2 = Json::array();
  for (const auto& c : core.first) c1.push_back(component_json(c));
  for (const auto& c : core.second) c2.push_back(component_json(c));
  j["components"] = {c1, c2};
  j["expression"] = core.expression.to_string();
  j["central_decomposition"] = {{"m_d_copies", core.m_d_copies ? Json(core.m_d_copies->to_string()) : Json(nullptr)},
                                {"core_of_m_c", core.core_of_m_c.to_string()}};
  Json actions = Json::array();
  for (const auto& g : core.labels.group.generators()) {
    auto d = dual_action(core, g);
    Json map = Json::array();
    for (const auto& [from, to] : d.relabel) map.push_back({str(from), str(to)});
    actions.push_back({{"gamma", str(g)}, {"trace_scaling", str(d.trace_scaling)}, {"relabel", map}});
  }
  j["dual_action"] = actions;
  return j;
}

inline Json centralizer_json(const CentralizerReport& r) {
  Json j;
  j["branch"] = branch_name(r.branch);
  j["expression"] = r.expression.to_string();
  j["canonical"] = r.canonical.to_string();
  j["canonical_key"] = r.canonical.key();
  j["citation"] = r.citation;
  j["gamma"] = group_json(r.gamma);
  j["core"] = r.core ? Json(describe_core(*r.core)) : Json(nullptr);
  Json ex = Json::array();
  for (const auto& g : r.expansion) ex.push_back(str(g));
  j["expansion"] = ex;
  j["flags"] = {{"cartan_free", r.cartan_free}, {"prime", r.prime}};
  return j;
}

inline Json compression_json(const CompressionScenario& sc, const CompressionResult& r) {
  Json j;
  j["r"] = str(r.r);
  j["expression"] = r.expr.to_string();
  Json order = Json::array();
  for (auto i : r.order) order.push_back(sc.indices[i].id);
  j["order"] = order;
  Json gammas = Json::object();
  for (std::size_t i = 0; i < sc.indices.size(); ++i)
    if (r.gamma[i]) gammas[sc.indices[i].id] = str(*r.gamma[i]);
  j["gamma"] = gammas;
  j["terms"] = r.terms;
  return j;
}

}  // namespace freecore::io
