// Batch front door: build spaces from a config, run condition checks, equivalence
// oracles and exponent searches, and emit machine-readable reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pomhardy/pomhardy.hpp"

namespace ph = pomhardy;
using ph::Json;

namespace {

constexpr const char* kSchema = "pomhardy-report/1";

Json config_echo(const ph::RunConfig& cfg) {
  // Worker count is an execution resource, not configuration; leaving it out
  // keeps reports byte-identical across worker counts.
  Json j;
  j["space"] = cfg.space;
  j["weight"] = cfg.weight;
  j["p"] = cfg.p_list;
  j["beta"] = cfg.beta_list;
  j["ideal_cap"] = cfg.ideal_cap;
  j["cells"] = cfg.cells;
  j["truncate"] = cfg.truncate;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["layers"] = cfg.layers;
  j["mode"] = cfg.mode;
  j["variant"] = cfg.variant;
  j["suite"] = cfg.suite;
  j["axiom_tol"] = cfg.axiom_tol;
  j["peps_tolerance"] = cfg.peps_tolerance;
  return j;
}

void emit_document(const Json& doc, const std::string& out_path) {
  std::string text = doc.dump(2);
  text += "\n";
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ph::ParseError("cannot write output path '" + out_path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ph::ParseError("cannot write output path '" + out_path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string space_kind_of(const std::string& spec) {
  auto colon = spec.find(':');
  return colon == std::string::npos ? spec : spec.substr(0, colon);
}

int cmd_check(const ph::RunConfig& cfg) {
  if (cfg.space.empty()) throw ph::ParseError("check needs --space");
  ph::WeightSpec w = ph::WeightSpec::parse(cfg.weight);
  std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{1.0} : cfg.p_list;

  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = "check";
  doc["config"] = config_echo(cfg);
  Json results = Json::array();
  bool any_infinite = false;

  std::string kind = space_kind_of(cfg.space);
  for (double p : ps) {
    Json entry;
    entry["p"] = p;
    if (kind == "chain") {
      ph::BpOptions opt{cfg.quad(), {}};
      ph::BpReport bp = ph::bp_chain_constant(w, p, opt);
      entry["halfline"] = to_json(bp);
      any_infinite |= bp.infinite;
      ph::PomSpace s = ph::build_space(cfg.space, w, cfg);
      entry["discrete"] = to_json(ph::condition_constant(s, p, cfg.budget()));
    } else if (kind == "grid") {
      ph::PomSpace s = ph::build_space(cfg.space, w, cfg);
      ph::GridConditionMode mode =
          cfg.mode == "full" ? ph::GridConditionMode::Full : ph::GridConditionMode::Vertical;
      ph::ConditionReport rep = ph::grid_condition_constant(s, p, mode, cfg.budget());
      entry["discrete"] = to_json(rep);
      entry["discrete"]["witness_profile"] = ph::ideal_to_profile(s, rep.witness.members);
      any_infinite |= rep.infinite;
      if (w.is_product()) {
        ph::BpOptions opt{cfg.quad(), {}};
        ph::BpReport f1 = ph::bp_chain_constant(w.factors[0], p, opt);
        ph::BpReport f2 = ph::bp_chain_constant(w.factors[1], p, opt);
        entry["factors"] = Json::array({to_json(f1), to_json(f2)});
        any_infinite |= f1.infinite || f2.infinite;
      }
    } else if (kind == "blocked") {
      ph::PomSpace s = ph::build_space(cfg.space, w, cfg);
      ph::ConditionReport rep = ph::condition_constant(s, p, cfg.budget());
      entry["discrete"] = to_json(rep);
      any_infinite |= rep.infinite;
      ph::BlockedConstantReport cont = ph::blocked_condition_constant(
          w, p, cfg.blocked_variant(), s.nx, cfg.samples, cfg.seed);
      entry["continuous"] = to_json(cont);
      any_infinite |= cont.infinite;
    } else {
      ph::PomSpace s = ph::build_space(cfg.space, w, cfg);
      ph::ConditionReport rep = ph::condition_constant(s, p, cfg.budget());
      entry["discrete"] = to_json(rep);
      any_infinite |= rep.infinite;
      if (kind == "tree") {
        ph::GeodesicHarnessReport gh = ph::tree_geodesic_harness(s, p, cfg.budget());
        Json jg;
        jg["tree_constant"] = ph::json_real(gh.tree_constant);
        jg["geodesic_sup"] = ph::json_real(gh.geodesic_sup);
        jg["gap_ratio"] = ph::json_real(gh.gap_ratio);
        jg["n_geodesics"] = gh.n_geodesics;
        jg["worst_leaf"] = gh.worst_leaf;
        jg["bounded"] = gh.bounded;
        entry["geodesics"] = jg;
      }
    }
    results.push_back(entry);
  }
  doc["results"] = results;
  doc["any_infinite"] = any_infinite;
  emit_document(doc, cfg.out);
  return any_infinite ? 2 : 0;
}

Json peps_suite(const ph::RunConfig& cfg, bool& pass) {
  double p = cfg.p_list.empty() ? 2.0 : cfg.p_list.front();
  std::vector<double> betas = cfg.beta_list.empty() ? std::vector<double>{-0.5, 0.0, 0.5}
                                                    : cfg.beta_list;
  Json rows = Json::array();
  for (double beta : betas) {
    ph::BpOptions opt{cfg.quad(), {}};
    ph::PepsReport rep =
        ph::p_eps_search(ph::WeightSpec::power(beta), p, opt, cfg.peps_tolerance);
    bool ok = rep.eps_proof > 0.0 && rep.eps_proof <= rep.eps_star;
    double target = p - 1.0 - beta;
    bool star_ok = std::fabs(rep.eps_star - target) <= 0.05;
    pass = pass && ok && star_ok;
    Json row = to_json(rep);
    row["beta"] = beta;
    row["target_eps"] = target;
    row["pass"] = ok && star_ok;
    rows.push_back(row);
  }
  return rows;
}

Json b1_suite(const ph::RunConfig& cfg, bool& pass) {
  ph::WeightSpec w = ph::WeightSpec::parse(
      cfg.weight == "const:1" ? "prod:(pow:-0.5,pow:-0.5)" : cfg.weight);
  if (!w.is_product()) throw ph::ParseError("b1 suite needs a prod:(...) weight");
  Json rows = Json::array();
  for (int n : {2, 3, 4, 6, 8}) {
    ph::PomSpace g = ph::build_vertical_grid(n, n, w);
    ph::ConditionReport grid = ph::b1_norm(g, cfg.budget());
    ph::ConditionReport c1 = ph::b1_norm(ph::build_chain(n, w.factors[0]), cfg.budget());
    ph::ConditionReport c2 = ph::b1_norm(ph::build_chain(n, w.factors[1]), cfg.budget());
    double product = c1.constant * c2.constant;
    bool ok = grid.constant >= product * (1.0 - 1e-12);
    pass = pass && ok;
    Json row;
    row["grid"] = std::to_string(n) + "x" + std::to_string(n);
    row["grid_norm"] = ph::json_real(grid.constant);
    row["factor_product"] = ph::json_real(product);
    row["gap_rel"] = ph::json_real(product > 0 ? (grid.constant - product) / product : 0.0);
    row["pass"] = ok;
    rows.push_back(row);
  }
  return rows;
}

int cmd_verify(const ph::RunConfig& cfg) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = "verify";
  doc["config"] = config_echo(cfg);
  bool pass = true;

  if (cfg.suite == "lemma") {
    ph::LemmaSweepOptions opt;
    opt.seed = cfg.seed;
    opt.trials = cfg.samples;
    opt.workers = cfg.workers;
    ph::LemmaSweepReport rep = ph::lemma_sweep(opt);
    pass = rep.all_pass();
    doc["results"] = to_json(rep);
  } else if (cfg.suite == "t22") {
    ph::WeightSpec w = ph::WeightSpec::parse(cfg.weight);
    ph::PomSpace s = ph::build_space(cfg.space.empty() ? "chain:6" : cfg.space, w, cfg);
    Json rows = Json::array();
    std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{0.5, 1.0, 2.0} : cfg.p_list;
    for (double p : ps) {
      ph::EquivalenceReport rep = ph::check_boundedness_equivalence(s, p, cfg.budget());
      pass = pass && rep.all_pass();
      rows.push_back(to_json(rep));
    }
    doc["results"] = rows;
  } else if (cfg.suite == "t32") {
    ph::WeightSpec w = ph::WeightSpec::parse(cfg.weight);
    ph::PomSpace s = ph::build_space(cfg.space.empty() ? "grid:3x3" : cfg.space, w, cfg);
    Json rows = Json::array();
    std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{1.0, 2.0} : cfg.p_list;
    for (double p : ps) {
      ph::EquivalenceReport rep = ph::check_grid_equivalence(s, p, cfg.budget(), &w);
      pass = pass && rep.all_pass();
      rows.push_back(to_json(rep));
    }
    doc["results"] = rows;
  } else if (cfg.suite == "t34") {
    ph::WeightSpec w = ph::WeightSpec::parse(
        cfg.weight == "const:1" ? "prod:(pow:0,pow:0)" : cfg.weight);
    if (!w.is_product()) throw ph::ParseError("t34 suite needs a prod:(...) weight");
    Json rows = Json::array();
    std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{2.0} : cfg.p_list;
    for (double p : ps) {
      ph::EquivalenceReport rep = ph::check_product_weight_factorization(
          w.factors[0], w.factors[1], p, 3, cfg.quad(), cfg.budget());
      pass = pass && rep.all_pass();
      rows.push_back(to_json(rep));
    }
    doc["results"] = rows;
  } else if (cfg.suite == "b1") {
    doc["results"] = b1_suite(cfg, pass);
  } else if (cfg.suite == "peps") {
    doc["results"] = peps_suite(cfg, pass);
  } else {
    throw ph::ParseError("unknown suite '" + cfg.suite +
                         "' (expected lemma|t22|t32|t34|b1|peps)");
  }

  doc["pass"] = pass;
  emit_document(doc, cfg.out);
  return pass ? 0 : 2;
}

int cmd_table(const ph::RunConfig& cfg) {
  std::ostringstream csv;
  ph::WeightSpec w = ph::WeightSpec::parse(cfg.weight);
  if (cfg.table == "constant-vs-p") {
    csv << "p,constant,infinite\n";
    for (double p : cfg.p_list) {
      ph::BpReport bp = ph::bp_chain_constant(w, p, ph::BpOptions{cfg.quad(), {}});
      csv << ph::fmt17(p) << "," << (bp.infinite ? "inf" : ph::fmt17(bp.constant)) << ","
          << (bp.infinite ? 1 : 0) << "\n";
    }
  } else if (cfg.table == "ratio-vs-r") {
    csv << "r,ratio\n";
    if (!cfg.p_list.empty()) {
      ph::BpReport bp = ph::bp_chain_constant(w, cfg.p_list.front(), ph::BpOptions{cfg.quad(), {}});
      for (auto [r, v] : bp.per_r)
        csv << ph::fmt17(r) << "," << (std::isinf(v) ? "inf" : ph::fmt17(v)) << "\n";
    }
  } else if (cfg.table == "eps-vs-beta") {
    csv << "beta,eps_proof,eps_star\n";
    double p = cfg.p_list.empty() ? 2.0 : cfg.p_list.front();
    for (double beta : cfg.beta_list) {
      double eps_proof = 0.0, eps_star = 0.0;
      try {
        ph::PepsReport rep = ph::p_eps_search(ph::WeightSpec::power(beta), p,
                                              ph::BpOptions{cfg.quad(), {}}, cfg.peps_tolerance);
        eps_proof = rep.eps_proof;
        eps_star = rep.eps_star;
      } catch (const ph::PreconditionError&) {
        // not in the class at p: no exponent room, both columns are zero
      }
      csv << ph::fmt17(beta) << "," << ph::fmt17(eps_proof) << "," << ph::fmt17(eps_star) << "\n";
    }
  } else {
    throw ph::ParseError("unknown table '" + cfg.table +
                         "' (expected constant-vs-p|ratio-vs-r|eps-vs-beta)");
  }
  emit_text(csv.str(), cfg.out);
  return 0;
}

int cmd_dump_space(const ph::RunConfig& cfg) {
  if (cfg.space.empty()) throw ph::ParseError("dump-space needs --space");
  ph::WeightSpec w = ph::WeightSpec::parse(cfg.weight);
  ph::PomSpace s = ph::build_space(cfg.space, w, cfg);
  std::ostringstream os;
  ph::dump_space(s, os);
  emit_text(os.str(), cfg.out);
  return 0;
}

int cmd_validate(const ph::RunConfig& cfg) {
  if (cfg.space.empty()) throw ph::ParseError("validate needs --space");
  if (cfg.axiom_tol > 1e-12)
    throw ph::ParseError("axiom tolerance can only be tightened below 1e-12");
  ph::WeightSpec w = ph::WeightSpec::parse(cfg.weight);
  ph::PomSpace s = ph::build_space(cfg.space, w, cfg);
  ph::ValidateOptions opt;
  opt.tolerance = cfg.axiom_tol;
  opt.seed = cfg.seed;
  ph::AxiomReport rep = ph::validate_axioms(s, opt);
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = "validate";
  doc["config"] = config_echo(cfg);
  doc["results"] = to_json(rep);
  doc["pass"] = rep.all_pass();
  emit_document(doc, cfg.out);
  return rep.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted averaging-operator condition checks on partially ordered measure spaces"};
  app.require_subcommand(1);

  ph::RunConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file; flags override it");
    sub->add_option("--space", cfg.space,
                    "chain:<n>[:scale] | grid:<nx>x<ny> | tree:full:<arity>:<depth> | "
                    "tree:path:<n> | tree:rand:<n> | blocked:<blocks>x<cells>");
    sub->add_option("--weight", cfg.weight,
                    "const:<c> | pow:<beta> | table:<csv-path> | prod:(<w>,<w>)");
    sub->add_option("--p", [&cfg](const std::vector<std::string>& vals) {
      cfg.p_list = ph::RunConfig::split_list(vals.back());
      return true;
    }, "comma-separated exponent list");
    sub->add_option("--beta", [&cfg](const std::vector<std::string>& vals) {
      cfg.beta_list = ph::RunConfig::split_list(vals.back());
      return true;
    }, "comma-separated power-weight exponents (tables, peps)");
    sub->add_option("--ideal-cap", cfg.ideal_cap, "exhaustive enumeration budget");
    sub->add_option("--cells", cfg.cells, "quadrature cells per integral");
    sub->add_option("--truncate", cfg.truncate, "improper-integral truncation T");
    sub->add_option("--seed", cfg.seed, "sampler seed");
    sub->add_option("--samples", cfg.samples, "random samples per sweep");
    sub->add_option("--layers", cfg.layers, "layers per sampled monotone function");
    sub->add_option("--workers", cfg.workers, "worker threads (output-invariant)");
    sub->add_option("--mode", cfg.mode, "grid condition mode: vertical | full");
    sub->add_option("--variant", cfg.variant, "blocked weaker order: prec1 | prec2 | prec3");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--axiom-tol", cfg.axiom_tol, "axiom tolerance (tighten-only, <= 1e-12)");
    sub->add_option("--peps-tolerance", cfg.peps_tolerance, "margin added to sigma");
  };

  CLI::App* check = app.add_subcommand("check", "condition constants for a space/weight");
  CLI::App* verify = app.add_subcommand("verify", "run a named oracle suite");
  verify->add_option("--suite", cfg.suite, "lemma | t22 | t32 | t34 | b1 | peps")->required();
  CLI::App* table = app.add_subcommand(
      "table",
      "plot-ready CSV tables. Columns: constant-vs-p -> p,constant,infinite (half-line "
      "condition constant per exponent); ratio-vs-r -> r,ratio (condition ratio per threshold "
      "at the first exponent); eps-vs-beta -> beta,eps_proof,eps_star (self-improvement "
      "exponents per power weight; zeros when the weight is outside the class)");
  table->add_option("--table", cfg.table, "constant-vs-p | ratio-vs-r | eps-vs-beta")->required();
  CLI::App* dump = app.add_subcommand("dump-space", "canonical text dump of a built space");
  CLI::App* validate = app.add_subcommand("validate", "axiom report for a built space");
  for (CLI::App* sub : {check, verify, table, dump, validate}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ph::ParseError("cannot open config '" + config_path + "'");
      ph::RunConfig file_cfg = ph::RunConfig::parse(in);
      // flags already wrote into cfg; merge: start from file, reapply non-default flags
      // Simpler contract: file provides values only for fields the flags left at defaults.
      ph::RunConfig defaults;
      auto pick = [](auto flag_val, auto def_val, auto file_val) {
        return flag_val != def_val ? flag_val : file_val;
      };
      file_cfg.space = pick(cfg.space, defaults.space, file_cfg.space);
      file_cfg.weight = pick(cfg.weight, defaults.weight, file_cfg.weight);
      if (!cfg.p_list.empty()) file_cfg.p_list = cfg.p_list;
      if (!cfg.beta_list.empty()) file_cfg.beta_list = cfg.beta_list;
      file_cfg.ideal_cap = pick(cfg.ideal_cap, defaults.ideal_cap, file_cfg.ideal_cap);
      file_cfg.cells = pick(cfg.cells, defaults.cells, file_cfg.cells);
      file_cfg.truncate = pick(cfg.truncate, defaults.truncate, file_cfg.truncate);
      file_cfg.seed = pick(cfg.seed, defaults.seed, file_cfg.seed);
      file_cfg.samples = pick(cfg.samples, defaults.samples, file_cfg.samples);
      file_cfg.layers = pick(cfg.layers, defaults.layers, file_cfg.layers);
      file_cfg.workers = pick(cfg.workers, defaults.workers, file_cfg.workers);
      file_cfg.mode = pick(cfg.mode, defaults.mode, file_cfg.mode);
      file_cfg.variant = pick(cfg.variant, defaults.variant, file_cfg.variant);
      file_cfg.suite = pick(cfg.suite, defaults.suite, file_cfg.suite);
      file_cfg.table = pick(cfg.table, defaults.table, file_cfg.table);
      file_cfg.out = pick(cfg.out, defaults.out, file_cfg.out);
      file_cfg.axiom_tol = pick(cfg.axiom_tol, defaults.axiom_tol, file_cfg.axiom_tol);
      file_cfg.peps_tolerance =
          pick(cfg.peps_tolerance, defaults.peps_tolerance, file_cfg.peps_tolerance);
      cfg = file_cfg;
    }

    if (*check) return cmd_check(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*table) return cmd_table(cfg);
    if (*dump) return cmd_dump_space(cfg);
    if (*validate) return cmd_validate(cfg);
  } catch (const ph::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
