#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pomhardy/conditions.hpp"
#include "pomhardy/core.hpp"
#include "pomhardy/space.hpp"
#include "pomhardy/weight.hpp"

namespace pomhardy {

/// One run's full configuration. Serializes to a flat key=value document;
/// emit followed by parse reproduces the config exactly. Worker count is
/// execution detail, not configuration: it is carried here for the CLI but
/// excluded from report echoes so reruns with different worker counts stay
/// byte-identical.
struct RunConfig {
  std::string space;
  std::string weight = "const:1";
  std::vector<double> p_list;
  std::vector<double> beta_list;
  long long ideal_cap = 100000;
  int cells = 10000;
  double truncate = 100.0;
  uint64_t seed = 0xB9;
  int samples = 1000;
  int layers = 3;
  int workers = 1;
  std::string mode = "vertical";  // vertical | full
  std::string variant = "prec1";  // prec1 | prec2 | prec3
  std::string suite;
  std::string table;
  std::string out;
  double axiom_tol = 1e-12;
  double peps_tolerance = 0.1;

  SearchBudget budget() const {
    SearchBudget b;
    b.ideal_cap = ideal_cap;
    b.samples = samples;
    b.layers = layers;
    b.seed = seed;
    b.workers = workers;
    return b;
  }

  QuadOptions quad() const { return QuadOptions{truncate, cells}; }

  BlockedVariant blocked_variant() const {
    if (variant == "prec1") return BlockedVariant::Prec1;
    if (variant == "prec2") return BlockedVariant::Prec2;
    if (variant == "prec3") return BlockedVariant::Prec3;
    throw ParseError("unknown variant '" + variant + "' (expected prec1|prec2|prec3)");
  }

  static std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",";
      out += fmt17(v[i]);
    }
    return out;
  }

  static std::vector<double> split_list(std::string_view text) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < text.size()) {
      size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view tok = text.substr(pos, comma - pos);
      if (!tok.empty()) out.push_back(detail::parse_number(tok, text));
      pos = comma + 1;
    }
    return out;
  }

  void emit(std::ostream& os) const {
    os << "space=" << space << "\n";
    os << "weight=" << weight << "\n";
    os << "p=" << join_list(p_list) << "\n";
    os << "beta=" << join_list(beta_list) << "\n";
    os << "ideal-cap=" << ideal_cap << "\n";
    os << "cells=" << cells << "\n";
    os << "truncate=" << fmt17(truncate) << "\n";
    os << "seed=" << seed << "\n";
    os << "samples=" << samples << "\n";
    os << "layers=" << layers << "\n";
    os << "workers=" << workers << "\n";
    os << "mode=" << mode << "\n";
    os << "variant=" << variant << "\n";
    os << "suite=" << suite << "\n";
    os << "table=" << table << "\n";
    os << "out=" << out << "\n";
    os << "axiom-tol=" << fmt17(axiom_tol) << "\n";
    os << "peps-tolerance=" << fmt17(peps_tolerance) << "\n";
  }

  void apply(const std::string& key, const std::string& value) {
    if (key == "space")
      space = value;
    else if (key == "weight")
      weight = value;
    else if (key == "p")
      p_list = split_list(value);
    else if (key == "beta")
      beta_list = split_list(value);
    else if (key == "ideal-cap")
      ideal_cap = static_cast<long long>(detail::parse_number(value, key));
    else if (key == "cells")
      cells = static_cast<int>(detail::parse_number(value, key));
    else if (key == "truncate")
      truncate = detail::parse_number(value, key);
    else if (key == "seed")
      seed = static_cast<uint64_t>(detail::parse_number(value, key));
    else if (key == "samples")
      samples = static_cast<int>(detail::parse_number(value, key));
    else if (key == "layers")
      layers = static_cast<int>(detail::parse_number(value, key));
    else if (key == "workers")
      workers = static_cast<int>(detail::parse_number(value, key));
    else if (key == "mode")
      mode = value;
    else if (key == "variant")
      variant = value;
    else if (key == "suite")
      suite = value;
    else if (key == "table")
      table = value;
    else if (key == "out")
      out = value;
    else if (key == "axiom-tol")
      axiom_tol = detail::parse_number(value, key);
    else if (key == "peps-tolerance")
      peps_tolerance = detail::parse_number(value, key);
    else
      throw ParseError("unknown config key '" + key + "'");
  }

  static RunConfig parse(std::istream& in) {
    RunConfig c;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("bad config line '" + line + "'");
      c.apply(line.substr(0, eq), line.substr(eq + 1));
    }
    return c;
  }
};

/// Space grammar for the CLI and config files:
///   chain:<n>[:scale]       half-line chain
///   grid:<nx>x<ny>          vertical-order grid
///   tree:full:<arity>:<depth>  complete rooted tree
///   tree:path:<n>           path (equals a chain with unit spacing)
///   tree:rand:<n>           random parents, seeded from the config
///   blocked:<blocks>x<cells>   blocked chain; weaker order from `variant`
inline PomSpace build_space(const std::string& spec, const WeightSpec& w, const RunConfig& cfg) {
  auto fail = [&](const std::string& why) {
    throw ParseError("bad space spec '" + spec + "': " + why);
  };
  auto parse_int = [&](std::string_view tok) {
    int v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      fail("bad integer '" + std::string(tok) + "'");
    return v;
  };
  std::vector<std::string> parts;
  {
    size_t pos = 0;
    while (pos <= spec.size()) {
      size_t colon = spec.find(':', pos);
      if (colon == std::string::npos) colon = spec.size();
      parts.push_back(spec.substr(pos, colon - pos));
      pos = colon + 1;
    }
  }
  if (parts.empty()) fail("empty");
  if (parts[0] == "chain") {
    if (parts.size() < 2) fail("chain needs a size");
    int n = parse_int(parts[1]);
    double scale = parts.size() > 2 ? detail::parse_number(parts[2], spec) : 1.0;
    return build_chain(n, w, scale);
  }
  if (parts[0] == "grid") {
    if (parts.size() < 2) fail("grid needs dimensions");
    auto x = parts[1].find('x');
    if (x == std::string::npos) fail("grid dimensions look like 3x4");
    return build_vertical_grid(parse_int(std::string_view(parts[1]).substr(0, x)),
                               parse_int(std::string_view(parts[1]).substr(x + 1)), w);
  }
  if (parts[0] == "tree") {
    if (parts.size() < 3) fail("tree needs a shape");
    if (parts[1] == "full") {
      if (parts.size() < 4) fail("tree:full:<arity>:<depth>");
      int arity = parse_int(parts[2]);
      int depth = parse_int(parts[3]);
      if (arity < 1 || depth < 0) fail("arity/depth out of range");
      std::vector<int> parent{-1};
      int level_start = 0, level_size = 1;
      for (int d = 0; d < depth; ++d) {
        int next_start = static_cast<int>(parent.size());
        for (int v = level_start; v < level_start + level_size; ++v)
          for (int c = 0; c < arity; ++c) parent.push_back(v);
        level_start = next_start;
        level_size *= arity;
      }
      return build_tree(parent, w);
    }
    if (parts[1] == "path") {
      int n = parse_int(parts[2]);
      std::vector<int> parent(n);
      for (int v = 0; v < n; ++v) parent[v] = v - 1;
      return build_tree(parent, w);
    }
    if (parts[1] == "rand") {
      int n = parse_int(parts[2]);
      if (n < 1) fail("tree size must be positive");
      Rng rng(cfg.seed ^ 0x7EE5ull);
      std::vector<int> parent(n);
      parent[0] = -1;
      for (int v = 1; v < n; ++v) parent[v] = static_cast<int>(rng.uniform_int(0, v - 1));
      return build_tree(parent, w);
    }
    fail("unknown tree shape '" + parts[1] + "'");
  }
  if (parts[0] == "blocked") {
    if (parts.size() < 2) fail("blocked needs dimensions");
    auto x = parts[1].find('x');
    if (x == std::string::npos) fail("blocked dimensions look like 2x3");
    return build_blocked_chain(parse_int(std::string_view(parts[1]).substr(0, x)),
                               parse_int(std::string_view(parts[1]).substr(x + 1)),
                               cfg.blocked_variant(), w);
  }
  fail("unknown kind '" + parts[0] + "'");
  return {};
}

}  // namespace pomhardy
