#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pomhardy/core.hpp"

namespace pomhardy {

/// Weight functions on the half-line (and, via `product`, on quadrant grids).
///
/// Grammar accepted by parse():
///   const:<c>            constant weight c
///   pow:<beta>           x^beta
///   table:<path>         piecewise-constant steps from a CSV of position,value
///   prod:(<spec>,<spec>) product of two 1-D weights, evaluated as u1(x)*u2(y)
struct WeightSpec {
  enum class Kind { Constant, Power, Table, Product };

  Kind kind = Kind::Constant;
  double value = 1.0;  // Constant
  double beta = 0.0;   // Power
  std::vector<std::pair<double, double>> steps;  // Table, sorted by position
  std::vector<WeightSpec> factors;               // Product
  std::string source;                            // the spec string it parsed from

  static WeightSpec constant(double c) {
    WeightSpec w;
    w.kind = Kind::Constant;
    w.value = c;
    w.source = "const:" + fmt17(c);
    return w;
  }

  static WeightSpec power(double b) {
    WeightSpec w;
    w.kind = Kind::Power;
    w.beta = b;
    w.source = "pow:" + fmt17(b);
    return w;
  }

  static WeightSpec table(std::vector<std::pair<double, double>> pts) {
    WeightSpec w;
    w.kind = Kind::Table;
    w.steps = std::move(pts);
    for (size_t i = 1; i < w.steps.size(); ++i) {
      if (!(w.steps[i - 1].first < w.steps[i].first))
        throw ParseError("table positions must be strictly increasing");
    }
    if (w.steps.empty()) throw ParseError("table weight has no rows");
    w.source = "table:<inline>";
    return w;
  }

  static WeightSpec product(WeightSpec a, WeightSpec b) {
    WeightSpec w;
    w.kind = Kind::Product;
    w.source = "prod:(" + a.source + "," + b.source + ")";
    w.factors = {std::move(a), std::move(b)};
    return w;
  }

  static WeightSpec parse(std::string_view text);

  /// Value at a 1-D position. Returns NaN where the weight is undefined
  /// (e.g. below the first table position, or 0^beta with beta < 0).
  double eval(double x) const {
    switch (kind) {
      case Kind::Constant:
        return value;
      case Kind::Power:
        if (x < 0.0 || (x == 0.0 && beta < 0.0)) return std::nan("");
        return std::pow(x, beta);
      case Kind::Table: {
        if (x < steps.front().first) return std::nan("");
        size_t lo = 0, hi = steps.size();
        while (hi - lo > 1) {
          size_t mid = (lo + hi) / 2;
          if (steps[mid].first <= x)
            lo = mid;
          else
            hi = mid;
        }
        return steps[lo].second;
      }
      case Kind::Product: {
        double r = 1.0;
        for (const auto& f : factors) r *= f.eval(x);
        return r;
      }
    }
    return std::nan("");
  }

  /// Value on a quadrant: products evaluate u1(x)*u2(y), constants ignore the
  /// point. Other kinds are ambiguous in 2-D and are rejected.
  double eval2(double x, double y) const {
    if (kind == Kind::Constant) return value;
    if (kind == Kind::Product && factors.size() == 2)
      return factors[0].eval(x) * factors[1].eval(y);
    throw ConstructionError("weight '" + source + "' is one-dimensional; use const:<c> or prod:(...,...) on grids");
  }

  bool is_product() const { return kind == Kind::Product && factors.size() == 2; }
};

namespace detail {

inline double parse_number(std::string_view tok, std::string_view whole) {
  double out = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError("bad number '" + std::string(tok) + "' in weight '" + std::string(whole) + "'");
  return out;
}

inline std::vector<std::pair<double, double>> load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open weight table '" + path + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("bad table row '" + line + "' in '" + path + "'");
    double pos = parse_number(std::string_view(line).substr(0, comma), path);
    double val = parse_number(std::string_view(line).substr(comma + 1), path);
    rows.emplace_back(pos, val);
  }
  if (rows.empty()) throw ParseError("weight table '" + path + "' is empty");
  return rows;
}

}  // namespace detail

inline WeightSpec WeightSpec::parse(std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = strip(text);
  if (s.rfind("const:", 0) == 0) {
    WeightSpec w = constant(detail::parse_number(s.substr(6), s));
    w.source = std::string(s);
    return w;
  }
  if (s.rfind("pow:", 0) == 0) {
    WeightSpec w = power(detail::parse_number(s.substr(4), s));
    w.source = std::string(s);
    return w;
  }
  if (s.rfind("table:", 0) == 0) {
    WeightSpec w = table(detail::load_table_csv(std::string(s.substr(6))));
    w.source = std::string(s);
    return w;
  }
  if (s.rfind("prod:(", 0) == 0) {
    if (s.back() != ')') throw ParseError("unbalanced parentheses in weight '" + std::string(s) + "'");
    std::string_view inner = s.substr(6, s.size() - 7);
    int depth = 0;
    size_t split = std::string_view::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string_view::npos)
      throw ParseError("prod weight needs two comma-separated factors in '" + std::string(s) + "'");
    WeightSpec w = product(parse(inner.substr(0, split)), parse(inner.substr(split + 1)));
    w.source = std::string(s);
    return w;
  }
  throw ParseError("unknown weight spec '" + std::string(s) + "' (expected const:, pow:, table:, prod:)");
}

}  // namespace pomhardy
