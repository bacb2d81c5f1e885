#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "subcoup/coupling.hpp"
#include "subcoup/coverage.hpp"
#include "subcoup/matroid.hpp"
#include "subcoup/set_function.hpp"
#include "subcoup/sfm.hpp"
#include "subcoup/tensor.hpp"
#include "subcoup/universal.hpp"

namespace subcoup {

// Emission uses ordered_json with fixed key-insertion order and canonical
// rational strings, so identical inputs produce byte-identical output.
using ojson = nlohmann::ordered_json;
using ijson = nlohmann::json;

inline ojson labels_json(const GroundSet& g, Mask x) {
  ojson arr = ojson::array();
  for (const auto& l : g.mask_labels(x)) arr.push_back(l);
  return arr;
}

// ---- set functions: {"ground_set": [...], "values": ["0", "1/2", ...]} ----

inline ojson set_function_to_json(const SetFunction& f) {
  ojson j;
  j["ground_set"] = f.ground().labels();
  ojson vals = ojson::array();
  for (const Rat& v : f.values()) vals.push_back(rat_to_string(v));
  j["values"] = vals;
  return j;
}

inline GroundSet ground_set_from_json(const ijson& j) {
  if (!j.is_array()) throw std::invalid_argument("ground_set must be an array of labels");
  std::vector<std::string> labels;
  for (const auto& l : j) {
    if (!l.is_string()) throw std::invalid_argument("ground-set labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return GroundSet(std::move(labels));
}

inline SetFunction set_function_from_json(const ijson& j) {
  if (!j.is_object() || !j.contains("ground_set") || !j.contains("values"))
    throw std::invalid_argument("set function requires ground_set and values");
  GroundSet g = ground_set_from_json(j.at("ground_set"));
  const auto& vals = j.at("values");
  if (!vals.is_array() || vals.size() != (std::size_t{1} << g.size()))
    throw std::invalid_argument("values must be an array of length 2^n");
  std::vector<Rat> table;
  table.reserve(vals.size());
  for (const auto& v : vals) {
    if (!v.is_string()) throw std::invalid_argument("values must be rational strings");
    table.push_back(parse_rational(v.get<std::string>()));
  }
  return SetFunction(std::move(g), std::move(table));
}

// ---- modular weights: {"ground_set": [...], "weights": [...]} ----

inline ojson weights_to_json(const ModularWeights& w) {
  ojson j;
  j["ground_set"] = w.ground.labels();
  ojson vals = ojson::array();
  for (const Rat& v : w.w) vals.push_back(rat_to_string(v));
  j["weights"] = vals;
  return j;
}

inline ModularWeights weights_from_json(const ijson& j) {
  if (!j.is_object() || !j.contains("ground_set") || !j.contains("weights"))
    throw std::invalid_argument("weights require ground_set and weights");
  GroundSet g = ground_set_from_json(j.at("ground_set"));
  const auto& vals = j.at("weights");
  if (!vals.is_array() || static_cast<int>(vals.size()) != g.size())
    throw std::invalid_argument("weights must list one value per element");
  std::vector<Rat> w;
  for (const auto& v : vals) {
    if (!v.is_string()) throw std::invalid_argument("weights must be rational strings");
    w.push_back(parse_rational(v.get<std::string>()));
  }
  return ModularWeights(std::move(g), std::move(w));
}

// ---- matroids ----

inline Matroid matroid_from_json(const ijson& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("matroid JSON requires a type field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") {
    const int n = j.at("n").get<int>();
    const int r = j.at("r").get<int>();
    if (n < 0 || n > GroundSet::kMaxElements) throw std::invalid_argument("uniform: bad n");
    return Matroid::uniform(n, r);
  }
  if (type == "vamos") return Matroid::vamos();
  if (type == "linear") {
    const int p = j.at("p").get<int>();
    std::vector<std::vector<int>> matrix;
    for (const auto& row : j.at("matrix")) matrix.push_back(row.get<std::vector<int>>());
    const int cols = matrix.empty() ? 0 : static_cast<int>(matrix[0].size());
    for (const auto& row : matrix)
      if (static_cast<int>(row.size()) != cols)
        throw std::invalid_argument("linear: ragged matrix");
    GroundSet g = j.contains("labels") ? ground_set_from_json(j.at("labels"))
                                       : GroundSet::numbered(cols);
    return Matroid::linear(p, std::move(matrix), std::move(g));
  }
  if (type == "partition") {
    GroundSet g = ground_set_from_json(j.at("labels"));
    std::vector<Mask> blocks;
    for (const auto& blk : j.at("blocks")) {
      std::vector<std::string> ls;
      for (const auto& l : blk) ls.push_back(l.get<std::string>());
      blocks.push_back(g.mask_of(ls));
    }
    return Matroid::partition(std::move(g), std::move(blocks));
  }
  if (type == "explicit") return Matroid::from_table(set_function_from_json(j.at("set_function")));
  if (type == "direct_sum") {
    const auto& parts = j.at("parts");
    if (!parts.is_array() || parts.empty())
      throw std::invalid_argument("direct_sum requires a nonempty parts array");
    Matroid acc = matroid_from_json(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i)
      acc = Matroid::direct_sum(acc, matroid_from_json(parts[i]));
    return acc;
  }
  throw std::invalid_argument("unknown matroid type: " + type);
}

inline ojson matroid_to_explicit_json(const Matroid& m) {
  ojson j;
  j["type"] = "explicit";
  j["set_function"] = set_function_to_json(m.rank_table());
  return j;
}

inline ojson matroid_to_linear_json(const Matroid& m) {
  const auto* rep = m.linear_representation();
  if (rep == nullptr) throw std::domain_error("matroid has no linear representation");
  ojson j;
  j["type"] = "linear";
  j["p"] = rep->p;
  j["matrix"] = rep->matrix;
  j["labels"] = m.ground().labels();
  return j;
}

// ---- verdict / witness serializers used by the CLI ----

inline ojson property_check_to_json(const PropertyCheck& pc, const GroundSet& g) {
  ojson j;
  j["property"] = property_name(pc.property);
  j["holds"] = pc.holds;
  if (!pc.holds) {
    ojson w = ojson::array();
    for (Mask m : pc.witness) w.push_back(labels_json(g, m));
    j["witness"] = w;
    j["reason"] = pc.reason;
  }
  return j;
}

inline ojson kalt_check_to_json(const KAlternatingCheck& kc, const GroundSet& g) {
  ojson j;
  j["property"] = "k_alternating";
  j["k"] = kc.k;
  j["holds"] = kc.holds;
  if (!kc.holds) {
    ojson w = ojson::array();
    for (Mask m : kc.witness) w.push_back(labels_json(g, m));
    j["witness"] = w;
    j["excess"] = rat_to_string(kc.excess);
  }
  return j;
}

inline ojson ingleton_report_to_json(const IngletonReport& r, const GroundSet& g) {
  ojson j;
  j["property"] = "ingleton";
  j["mode"] = r.mode == IngletonMode::all ? "all" : "disjoint_only";
  j["holds"] = r.holds;
  if (!r.holds) {
    ojson w;
    w["A"] = labels_json(g, r.witness[0]);
    w["B"] = labels_json(g, r.witness[1]);
    w["C"] = labels_json(g, r.witness[2]);
    w["D"] = labels_json(g, r.witness[3]);
    w["lhs"] = rat_to_string(r.lhs);
    w["rhs"] = rat_to_string(r.rhs);
    j["witness"] = w;
  }
  return j;
}

inline ojson condition_to_json(const ConditionCheck& c, const GroundSet& g1,
                               const GroundSet& g2) {
  ojson j;
  j["holds"] = c.holds;
  if (!c.holds) {
    ojson w = ojson::array();
    if (c.witness.size() == 2) {
      w.push_back(labels_json(g1, c.witness[0]));
      w.push_back(labels_json(g2, c.witness[1]));
    } else {
      for (Mask m : c.witness) w.push_back(static_cast<unsigned>(m));
    }
    j["witness"] = w;
    j["reason"] = c.detail;
  }
  return j;
}

inline ojson tensor_verdict_to_json(const TensorVerdict& v, const GroundSet& g1,
                                    const GroundSet& g2) {
  ojson j;
  j["property"] = "tensor";
  j["is_tensor"] = v.is_tensor;
  j["condition_i"] = condition_to_json(v.condition_i, g1, g2);
  j["condition_ii"] = condition_to_json(v.condition_ii, g1, g2);
  j["condition_iii"] = condition_to_json(v.condition_iii, g1, g2);
  return j;
}

inline ojson coupling_check_to_json(const CouplingCheck& c, const GroundSet& g1,
                                    const GroundSet& g2) {
  ojson j;
  j["property"] = "coupling";
  j["holds"] = c.holds;
  if (!c.holds) {
    ojson w;
    w["family"] = c.side == 1 ? "X1xS2" : "S1xX2";
    w["subset"] = labels_json(c.side == 1 ? g1 : g2, c.factor_subset);
    w["expected"] = rat_to_string(c.expected);
    w["actual"] = rat_to_string(c.actual);
    j["witness"] = w;
  }
  return j;
}

inline ojson decomposition_to_json(const CoverageDecomposition& d) {
  ojson j;
  j["ground_set"] = d.ground.labels();
  ojson coeffs = ojson::array();
  for (const auto& [a, c] : d.coefficients) {
    ojson entry;
    entry["set"] = labels_json(d.ground, a);
    entry["coefficient"] = rat_to_string(c);
    coeffs.push_back(entry);
  }
  j["coefficients"] = coeffs;
  return j;
}

inline CoverageDecomposition decomposition_from_json(const ijson& j) {
  CoverageDecomposition d;
  d.ground = ground_set_from_json(j.at("ground_set"));
  for (const auto& entry : j.at("coefficients")) {
    std::vector<std::string> ls;
    for (const auto& l : entry.at("set")) ls.push_back(l.get<std::string>());
    Rat c = parse_rational(entry.at("coefficient").get<std::string>());
    if (c < 0) throw std::invalid_argument("coverage coefficients must be nonnegative");
    if (c != 0) d.coefficients[d.ground.mask_of(ls)] += c;
  }
  return d;
}

inline ojson minimization_to_json(const MinimizationResult& r, const GroundSet& g) {
  ojson j;
  j["minimizer"] = labels_json(g, r.minimizer);
  j["min_value"] = rat_to_string(r.min_value);
  j["algorithm"] = algorithm_name(r.algorithm);
  j["iterations"] = r.iterations;
  return j;
}

inline ojson interval_set_to_json(const RationalIntervalSet& s) {
  ojson arr = ojson::array();
  for (const auto& [lo, hi] : s.intervals()) {
    ojson pair = ojson::array();
    pair.push_back(rat_to_string(lo));
    pair.push_back(rat_to_string(hi));
    arr.push_back(pair);
  }
  return arr;
}

inline ojson universal_witness_to_json(const UniversalWitness& w) {
  ojson j;
  j["psi"] = set_function_to_json(w.psi);
  ojson classes = ojson::array();
  for (const auto& c : w.classes) classes.push_back(interval_set_to_json(c));
  j["classes"] = classes;
  j["residual_rule"] = w.residual_rule;
  ojson trace = ojson::array();
  for (const auto& step : w.trace) {
    ojson s;
    s["t"] = step.t;
    s["I"] = labels_json(w.psi.ground(), step.index_set);
    s["required"] = rat_to_string(step.required);
    s["capacity"] = rat_to_string(step.capacity);
    trace.push_back(s);
  }
  j["trace"] = trace;
  return j;
}

inline ojson certificate_to_json(const MatroidCertificate& c, const GroundSet& g) {
  ojson j;
  j["property"] = "matroid_axioms";
  j["holds"] = c.holds;
  if (!c.holds) {
    j["axiom"] = c.axiom;
    ojson w = ojson::array();
    for (Mask m : c.witness) w.push_back(labels_json(g, m));
    j["witness"] = w;
  }
  return j;
}

}  // namespace subcoup
