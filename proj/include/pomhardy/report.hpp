#pragma once

#include <cmath>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"
#include "pomhardy/conditions.hpp"
#include "pomhardy/space.hpp"
#include "pomhardy/verify.hpp"

namespace pomhardy {

using Json = nlohmann::ordered_json;

/// JSON has no infinities; encode them explicitly so reports stay lossless.
inline Json json_real(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  if (std::isnan(v)) return Json("nan");
  return Json(v);
}

inline Json to_json(const DecreasingSet& d) {
  Json j;
  j["order"] = d.order == OrderTag::Prec ? "prec" : "leq";
  j["members"] = d.members;
  return j;
}

inline Json to_json(const AxiomReport& rep) {
  Json j;
  j["tolerance"] = rep.tolerance;
  j["pass"] = rep.all_pass();
  j["worst_violation"] = json_real(rep.worst_violation());
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json jc;
    jc["axiom"] = c.axiom;
    jc["pass"] = c.pass;
    jc["worst"] = json_real(c.worst);
    jc["n_checked"] = c.n_checked;
    if (!c.pass) jc["witness"] = {c.witness[0], c.witness[1], c.witness[2]};
    checks.push_back(jc);
  }
  j["checks"] = checks;
  return j;
}

inline Json to_json(const ConditionReport& rep) {
  Json j;
  j["constant"] = json_real(rep.constant);
  j["infinite"] = rep.infinite;
  j["exact"] = rep.exact;
  j["n_sets_examined"] = rep.n_sets_examined;
  j["witness"] = to_json(rep.witness);
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

inline Json to_json(const BpReport& rep) {
  Json j;
  j["constant"] = json_real(rep.constant);
  j["infinite"] = rep.infinite;
  if (!rep.flag.empty()) j["flag"] = rep.flag;
  Json per_r = Json::array();
  for (auto [r, v] : rep.per_r) per_r.push_back(Json{{"r", r}, {"ratio", json_real(v)}});
  j["per_r"] = per_r;
  return j;
}

inline Json to_json(const BlockedConstantReport& rep) {
  Json j;
  j["constant"] = json_real(rep.constant);
  j["infinite"] = rep.infinite;
  j["witness_seq"] = rep.witness_seq;
  j["n_examined"] = rep.n_examined;
  return j;
}

inline Json to_json(const ProductRectReport& rep) {
  Json j;
  j["lhs"] = json_real(rep.lhs);
  j["rhs"] = json_real(rep.rhs);
  j["ratio"] = json_real(rep.ratio);
  j["infinite"] = rep.infinite;
  j["factor_infinite"] = {rep.factor_infinite[0], rep.factor_infinite[1]};
  j["factor_ratio"] = {json_real(rep.factor_ratio[0]), json_real(rep.factor_ratio[1])};
  return j;
}

inline Json to_json(const PepsReport& rep) {
  Json j;
  j["eps_proof"] = json_real(rep.eps_proof);
  j["eps_star"] = json_real(rep.eps_star);
  j["c_measured"] = json_real(rep.c_measured);
  j["sigma"] = json_real(rep.sigma);
  j["m_max"] = rep.m_max;
  j["star_at_floor"] = rep.star_at_floor;
  return j;
}

inline Json to_json(const NormEstimate& est) {
  Json j;
  j["lower"] = json_real(est.lower);
  j["upper"] = json_real(est.upper);
  j["upper_finite"] = est.upper_finite;
  j["upper_flag_only"] = est.upper_flag_only;
  j["upper_certified"] = est.upper_certified;
  j["condition_value"] = json_real(est.condition_value);
  j["lemma_constant"] = est.lemma_constant;
  j["exhaustive_indicators"] = est.exhaustive_indicators;
  j["n_indicators"] = est.n_indicators;
  j["n_samples"] = est.n_samples;
  return j;
}

inline Json to_json(const CheckRecord& r) {
  Json j;
  j["claim"] = r.claim;
  j["pass"] = r.pass;
  j["measured"] = json_real(r.measured);
  j["bound"] = json_real(r.bound);
  j["oracle"] = r.oracle;
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

inline Json to_json(const EquivalenceReport& rep) {
  Json j;
  j["subject"] = rep.subject;
  j["pass"] = rep.all_pass();
  Json records = Json::array();
  for (const auto& r : rep.records) records.push_back(to_json(r));
  j["records"] = records;
  return j;
}

inline Json to_json(const LemmaSweepReport& rep) {
  Json j;
  j["pass"] = rep.all_pass();
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json jr;
    jr["alpha"] = r.alpha;
    jr["c_alpha"] = r.c_alpha;
    jr["worst_ratio"] = json_real(r.worst_ratio);
    jr["violations"] = r.violations;
    jr["worst_seed"] = r.worst_seed;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  return j;
}

/// Per-point CSV of operator images: "id,value".
inline void write_field_csv(std::span<const double> values, std::ostream& os) {
  os << "id,value\n";
  for (size_t i = 0; i < values.size(); ++i) os << i << "," << fmt17(values[i]) << "\n";
}

}  // namespace pomhardy
