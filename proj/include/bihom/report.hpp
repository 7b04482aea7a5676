#pragma once

// Report and derivation-basis serialization shared by the CLI and tests.

#include <cstdint>
#include <sstream>
#include <string>

#include "bihom/derivations.hpp"
#include "bihom/io.hpp"

namespace bihom {

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

template <Field K>
json violations_to_json(const ViolationReport<K>& r) {
  json j;
  j["empty"] = r.empty();
  json counts = json::object();
  for (const auto& a : r.checked) counts[a] = r.counts.at(a);
  j["counts"] = counts;
  json vs = json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"axiom", v.axiom}, {"indices", v.indices}, {"lhs", vector_to_json<K>(v.lhs)}, {"rhs", vector_to_json<K>(v.rhs)}});
  j["violations"] = vs;
  return j;
}

template <Field K>
std::string violations_to_text(const ViolationReport<K>& r) {
  std::ostringstream os;
  for (const auto& a : r.checked) {
    const auto c = r.counts.at(a);
    os << a << ": " << (c == 0 ? "ok" : std::to_string(c) + " violation" + (c == 1 ? "" : "s")) << "\n";
    for (const auto& v : r.violations) {
      if (v.axiom != a) continue;
      os << "  (";
      for (std::size_t i = 0; i < v.indices.size(); ++i) os << (i ? "," : "") << v.indices[i];
      os << "): " << vec_str<K>(v.lhs) << " != " << vec_str<K>(v.rhs) << "\n";
    }
  }
  return os.str();
}

inline json grading_to_json(const GradingReport& g) {
  json j;
  j["empty"] = g.tensors.empty() && g.maps.empty();
  json t = json::array(), m = json::array();
  for (const auto& v : g.tensors) t.push_back({{"tensor", v.tensor}, {"indices", {v.i, v.j, v.k}}});
  for (const auto& v : g.maps) m.push_back({{"map", v.map}, {"indices", {v.row, v.col}}});
  j["tensors"] = t;
  j["maps"] = m;
  return j;
}

// ---------------------------------------------------------------------------
// Derivation bases.
//
// {"field", "p"?, "dim", "parity", "signature": {"m", "n", "parity"},
//  "convention", "params": {"gamma", "delta", "lambda"}, "basis": [matrix...]}
// Quasi results carry "pairs": [{"d", "d_prime"}] instead of "basis".

inline SignConvention convention_from_string(const std::string& s) {
  if (s == "standard") return SignConvention::Standard;
  if (s == "paper-dialgebra") return SignConvention::PaperDialgebra;
  throw SchemaError("convention", "expected \"standard\" or \"paper-dialgebra\"");
}

template <Field K>
json derivations_to_json(const K& f, const SuperSpace& s, const DerivationSpace<K>& d) {
  json j;
  field_to_json(f, j);
  j["dim"] = s.dim();
  j["parity"] = s.parity;
  j["signature"] = {{"m", d.signature.m}, {"n", d.signature.n}, {"parity", d.signature.parity}};
  j["convention"] = to_string(d.convention);
  j["params"] = {{"gamma", d.params.gamma.str()}, {"delta", d.params.delta.str()}, {"lambda", d.params.lambda.str()}};
  json b = json::array();
  for (const auto& m : d.basis) b.push_back(matrix_to_json(m.m));
  j["basis"] = b;
  return j;
}

template <Field K>
json quasi_to_json(const K& f, const SuperSpace& s, const QuasiSpace<K>& q) {
  json j;
  field_to_json(f, j);
  j["dim"] = s.dim();
  j["parity"] = s.parity;
  j["signature"] = {{"m", q.signature.m}, {"n", q.signature.n}, {"parity", q.signature.parity}};
  j["convention"] = to_string(q.convention);
  json b = json::array();
  for (const auto& p : q.basis) b.push_back({{"d", matrix_to_json(p.d.m)}, {"d_prime", matrix_to_json(p.d_prime.m)}});
  j["pairs"] = b;
  return j;
}

template <Field K>
DerivationSpace<K> derivations_from_json(const K& f, const json& j, std::size_t dim) {
  io_detail::require_keys(j, {"field", "p", "dim", "parity", "signature", "convention", "params", "basis"},
                          {"signature", "basis"}, "derivation basis file");
  if (j.contains("dim") && io_detail::dim_of(j) != dim)
    throw SchemaError("dim", "basis dimension does not match instance dimension " + std::to_string(dim));
  const auto& sig = j.at("signature");
  io_detail::require_keys(sig, {"m", "n", "parity"}, {"m", "n", "parity"}, "signature");
  for (const char* k : {"m", "n", "parity"})
    if (!sig.at(k).is_number_integer()) throw SchemaError(std::string("signature.") + k, "expected an integer");
  DerivationSpace<K> d;
  d.signature = {sig.at("m").get<int>(), sig.at("n").get<int>(), sig.at("parity").get<int>()};
  if (d.signature.parity != 0 && d.signature.parity != 1) throw SchemaError("signature.parity", "expected 0 or 1");
  d.convention = j.contains("convention") ? convention_from_string(j.at("convention").get<std::string>())
                                          : SignConvention::Standard;
  d.params = GeneralizedParams<K>::ordinary(f);
  if (j.contains("params")) {
    const auto& p = j.at("params");
    io_detail::require_keys(p, {"gamma", "delta", "lambda"}, {"gamma", "delta", "lambda"}, "params");
    d.params = {io_detail::scalar(f, p.at("gamma"), "params.gamma"), io_detail::scalar(f, p.at("delta"), "params.delta"),
                io_detail::scalar(f, p.at("lambda"), "params.lambda")};
  }
  const auto& b = j.at("basis");
  if (!b.is_array()) throw SchemaError("basis", "expected an array of matrices");
  for (std::size_t i = 0; i < b.size(); ++i)
    d.basis.push_back({matrix_from_json(f, b[i], dim, dim, "basis[" + std::to_string(i) + "]"), d.signature.parity});
  return d;
}

}  // namespace bihom
