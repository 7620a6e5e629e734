#pragma once

#include "mcover/mcover.hpp"

#include <nlohmann/json.hpp>

namespace mcover::io {

using json = nlohmann::json;

inline Rat rat_from_json(const json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw std::invalid_argument("expected a rational string or integer, got " + j.dump());
}

inline MatQ matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  std::vector<std::vector<Rat>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("matrix row must be an array");
    std::vector<Rat> r;
    for (const auto& x : row) r.push_back(rat_from_json(x));
    rows.push_back(std::move(r));
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw std::invalid_argument("matrix must be square");
  return MatQ::from_rows(rows);
}

inline MatQ parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

/// Accepts a list of blocks [[[..]], [[..]]] or a block-diagonal matrix.
inline Blocks parse_blocks(const std::string& text, const LeviShape& shape) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a list of blocks or a matrix");
  Blocks out;
  if (j[0].is_array() && !j[0].empty() && j[0][0].is_array()) {
    for (const auto& b : j) out.push_back(matrix_from_json(b));
    check_blocks(out, shape);
    return out;
  }
  MatQ m = matrix_from_json(j);
  if (m.r() != shape.r()) throw std::invalid_argument("matrix size differs from the shape");
  for (int b = 0; b < shape.k(); ++b) {
    int o = shape.offset(b), rb = shape.partition[b];
    MatQ blk(rb);
    for (int i = 0; i < rb; ++i)
      for (int jj = 0; jj < rb; ++jj) blk(i, jj) = m(o + i, o + jj);
    out.push_back(blk);
  }
  if (!(block_embed(out, shape) == m)) throw std::invalid_argument("matrix is not block diagonal for the shape");
  return out;
}

inline json to_json(const Rat& x) { return x.str(); }

inline json to_json(const MatQ& m) {
  json rows = json::array();
  for (int i = 0; i < m.r(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.r(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const Blocks& b) {
  json out = json::array();
  for (const auto& m : b) out.push_back(to_json(m));
  return out;
}

inline json to_json(const MuN& z) { return {{"exponent", z.exponent}, {"modulus", z.modulus}}; }

inline json to_json(const PowerClass& c) { return {{"coords", c.coords}, {"moduli", c.moduli}}; }

inline json to_json(const EtaElement& e) {
  std::vector<int> word1;
  for (int i : e.word) word1.push_back(i + 1);
  return {{"matrix", to_json(e.matrix())}, {"word", word1}};
}

inline json to_json(const SigmaTrace& tr, const SymbolBackend& bk) {
  json steps = json::array();
  for (const auto& s : tr.steps) {
    json factors = json::array();
    for (const auto& f : s.factors)
      factors.push_back({{"a", f.a.str()}, {"b", f.b.str()}, {"power", f.power},
                         {"exponent", symbol(bk, f.a, f.b).pow(f.power).exponent}});
    steps.push_back({{"rule", rule_name(s.rule)}, {"factors", factors}});
  }
  return steps;
}

/// Backend descriptor, with the root-of-unity normalization for tame symbols.
inline json backend_json(const SymbolBackend& bk) {
  json j = {{"name", bk.str()}, {"n", bk.n()}};
  if (bk.kind() == SymbolBackend::Kind::Tame)
    j["normalization"] = {{"primitive_root", bk.primitive_root()},
                          {"zeta", "g^((p-1)/n) mod p with g the smallest primitive root"}};
  return j;
}

inline json report_json(const HypothesisReport& r) {
  return {{"d", r.d}, {"flags", r.flags}, {"verdict", r.verdict}, {"route", r.route}};
}

}  // namespace mcover::io
