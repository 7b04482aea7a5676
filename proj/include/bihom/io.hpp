#pragma once

// JSON file formats for instances, maps, subspaces and derivation bases.
//
// Instance:  {"field": "Q" | "Fp", "p": <prime, Fp only>, "dim": n,
//             "parity": [0|1 ...], "left": n*n*n, "right": n*n*n,
//             "alpha": n*n, "epsilon": n*n}
// Scalars are strings such as "3/2" (JSON integers are accepted too).
// Tensors nest as c[i][j][k]; maps as m[row][col], column j = image of e_j.
// Superalgebras carry "prod" instead of "left"/"right"; differential
// instances add "d" and "d_parity".

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "bihom/graded.hpp"

namespace bihom {

using json = nlohmann::ordered_json;

/// Schema violation; `where` names the offending field path.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

using AnyField = std::variant<RationalField, PrimeField>;

namespace io_detail {

inline void require_keys(const json& j, const std::set<std::string>& allowed, const std::set<std::string>& required,
                         const std::string& what) {
  if (!j.is_object()) throw SchemaError(what, "expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(it.key(), "unknown field in " + what);
  for (const auto& k : required)
    if (!j.contains(k)) throw SchemaError(k, "missing required field in " + what);
}

template <Field K>
typename K::Scalar scalar(const K& f, const json& j, const std::string& where) {
  try {
    if (j.is_string()) return f.parse(j.get<std::string>());
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
  } catch (const ParseError& e) {
    throw SchemaError(where, e.what());
  }
  throw SchemaError(where, "non-rational literal " + j.dump() + " (expected a string like \"3/2\" or an integer)");
}

inline std::size_t dim_of(const json& j) {
  if (!j.at("dim").is_number_unsigned()) throw SchemaError("dim", "expected a non-negative integer");
  return j.at("dim").get<std::size_t>();
}

inline void check_len(const json& j, std::size_t n, const std::string& where, std::size_t dim) {
  if (!j.is_array() || j.size() != n)
    throw SchemaError(where, "expected an array of length " + std::to_string(n) + " (dim = " + std::to_string(dim) +
                                 "), got " + (j.is_array() ? "length " + std::to_string(j.size()) : j.type_name()));
}

}  // namespace io_detail

inline AnyField field_from_json(const json& j) {
  if (!j.contains("field")) throw SchemaError("field", "missing required field");
  const auto& f = j.at("field");
  if (!f.is_string()) throw SchemaError("field", "expected \"Q\" or \"Fp\"");
  auto name = f.get<std::string>();
  if (name == "Q") {
    if (j.contains("p")) throw SchemaError("p", "only valid with field \"Fp\"");
    return RationalField{};
  }
  if (name == "Fp") {
    if (!j.contains("p") || !j.at("p").is_number_integer() || j.at("p").get<long long>() < 0)
      throw SchemaError("p", "Fp requires an integer prime \"p\"");
    try {
      return PrimeField(j.at("p").get<std::uint64_t>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError("p", e.what());
    }
  }
  throw SchemaError("field", "unknown field '" + name + "' (expected \"Q\" or \"Fp\")");
}

inline void field_to_json(const RationalField&, json& j) { j["field"] = "Q"; }
inline void field_to_json(const PrimeField& f, json& j) {
  j["field"] = "Fp";
  j["p"] = f.p;
}

inline SuperSpace space_from_json(const json& j) {
  const auto n = io_detail::dim_of(j);
  const auto& p = j.at("parity");
  io_detail::check_len(p, n, "parity", n);
  std::vector<int> parity;
  for (std::size_t i = 0; i < n; ++i) {
    if (!p[i].is_number_integer() || (p[i].get<int>() != 0 && p[i].get<int>() != 1))
      throw SchemaError("parity[" + std::to_string(i) + "]", "parity entries must be 0 or 1, got " + p[i].dump());
    parity.push_back(p[i].get<int>());
  }
  return SuperSpace(parity);
}

template <Field K>
ProductTensor<K> tensor_from_json(const K& f, const json& j, std::size_t n, const std::string& name) {
  ProductTensor<K> t(f, n);
  io_detail::check_len(j, n, name, n);
  for (std::size_t a = 0; a < n; ++a) {
    auto wa = name + "[" + std::to_string(a) + "]";
    io_detail::check_len(j[a], n, wa, n);
    for (std::size_t b = 0; b < n; ++b) {
      auto wb = wa + "[" + std::to_string(b) + "]";
      io_detail::check_len(j[a][b], n, wb, n);
      for (std::size_t c = 0; c < n; ++c)
        t(a, b, c) = io_detail::scalar(f, j[a][b][c], wb + "[" + std::to_string(c) + "]");
    }
  }
  return t;
}

template <Field K>
Matrix<K> matrix_from_json(const K& f, const json& j, std::size_t rows, std::size_t cols, const std::string& name) {
  Matrix<K> m(f, rows, cols);
  io_detail::check_len(j, rows, name, rows);
  for (std::size_t a = 0; a < rows; ++a) {
    auto wa = name + "[" + std::to_string(a) + "]";
    io_detail::check_len(j[a], cols, wa, cols);
    for (std::size_t b = 0; b < cols; ++b) m(a, b) = io_detail::scalar(f, j[a][b], wa + "[" + std::to_string(b) + "]");
  }
  return m;
}

template <Field K>
json tensor_to_json(const ProductTensor<K>& t) {
  json out = json::array();
  for (std::size_t a = 0; a < t.dim(); ++a) {
    json ja = json::array();
    for (std::size_t b = 0; b < t.dim(); ++b) {
      json jb = json::array();
      for (std::size_t c = 0; c < t.dim(); ++c) jb.push_back(t(a, b, c).str());
      ja.push_back(std::move(jb));
    }
    out.push_back(std::move(ja));
  }
  return out;
}

template <Field K>
json matrix_to_json(const Matrix<K>& m) {
  json out = json::array();
  for (std::size_t a = 0; a < m.rows(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(m(a, b).str());
    out.push_back(std::move(row));
  }
  return out;
}

template <Field K>
json vector_to_json(const Vec<K>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

template <Field K>
Vec<K> vector_from_json(const K& f, const json& j, std::size_t n, const std::string& name) {
  io_detail::check_len(j, n, name, n);
  Vec<K> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(io_detail::scalar(f, j[i], name + "[" + std::to_string(i) + "]"));
  return v;
}

template <Field K>
json to_json(const DialgebraInstance<K>& h, const std::string& name = {}) {
  json j;
  if (!name.empty()) j["name"] = name;
  field_to_json(h.field, j);
  j["dim"] = h.dim();
  j["parity"] = h.space.parity;
  j["left"] = tensor_to_json(h.left);
  j["right"] = tensor_to_json(h.right);
  j["alpha"] = matrix_to_json(h.alpha);
  j["epsilon"] = matrix_to_json(h.epsilon);
  return j;
}

template <Field K>
json to_json(const SuperalgebraInstance<K>& a, const std::string& name = {}) {
  json j;
  if (!name.empty()) j["name"] = name;
  field_to_json(a.field, j);
  j["dim"] = a.dim();
  j["parity"] = a.space.parity;
  j["prod"] = tensor_to_json(a.prod);
  j["alpha"] = matrix_to_json(a.alpha);
  j["epsilon"] = matrix_to_json(a.epsilon);
  return j;
}

template <Field K>
json to_json(const DifferentialInstance<K>& d, const std::string& name = {}) {
  json j = to_json(d.base, name);
  j["d"] = matrix_to_json(d.d.m);
  j["d_parity"] = d.d.parity;
  return j;
}

enum class DocumentKind { Dialgebra, Superalgebra, Differential };

inline DocumentKind document_kind(const json& j) {
  if (!j.is_object()) throw SchemaError("<root>", "expected a JSON object");
  if (j.contains("left") || j.contains("right")) return DocumentKind::Dialgebra;
  if (j.contains("prod")) return j.contains("d") ? DocumentKind::Differential : DocumentKind::Superalgebra;
  throw SchemaError("<root>", "instance needs \"left\"/\"right\" or \"prod\"");
}

template <Field K>
DialgebraInstance<K> dialgebra_from_json(const K& f, const json& j) {
  io_detail::require_keys(j, {"name", "field", "p", "dim", "parity", "left", "right", "alpha", "epsilon"},
                          {"field", "dim", "parity", "left", "right", "alpha", "epsilon"}, "dialgebra instance");
  auto s = space_from_json(j);
  const auto n = s.dim();
  return {f,
          s,
          tensor_from_json(f, j.at("left"), n, "left"),
          tensor_from_json(f, j.at("right"), n, "right"),
          matrix_from_json(f, j.at("alpha"), n, n, "alpha"),
          matrix_from_json(f, j.at("epsilon"), n, n, "epsilon")};
}

template <Field K>
SuperalgebraInstance<K> superalgebra_from_json(const K& f, const json& j, bool differential = false) {
  std::set<std::string> allowed{"name", "field", "p", "dim", "parity", "prod", "alpha", "epsilon"};
  if (differential) allowed.insert({"d", "d_parity"});
  io_detail::require_keys(j, allowed, {"field", "dim", "parity", "prod", "alpha", "epsilon"},
                          differential ? "differential instance" : "superalgebra instance");
  auto s = space_from_json(j);
  const auto n = s.dim();
  return {f, s, tensor_from_json(f, j.at("prod"), n, "prod"), matrix_from_json(f, j.at("alpha"), n, n, "alpha"),
          matrix_from_json(f, j.at("epsilon"), n, n, "epsilon")};
}

template <Field K>
DifferentialInstance<K> differential_from_json(const K& f, const json& j) {
  auto base = superalgebra_from_json(f, j, true);
  if (!j.contains("d")) throw SchemaError("d", "missing required field in differential instance");
  if (!j.contains("d_parity")) throw SchemaError("d_parity", "missing required field in differential instance");
  const auto& dp = j.at("d_parity");
  if (!dp.is_number_integer() || (dp.get<int>() != 0 && dp.get<int>() != 1))
    throw SchemaError("d_parity", "expected 0 or 1");
  const auto n = base.dim();
  return {base, {matrix_from_json(f, j.at("d"), n, n, "d"), dp.get<int>()}};
}

inline json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string(), std::string("malformed JSON: ") + e.what());
  }
}

/// Writes via a temporary file and rename so readers never see partial output.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_json(const std::filesystem::path& path, const json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

template <Field K>
void save(const DialgebraInstance<K>& h, const std::filesystem::path& path, const std::string& name = {}) {
  write_json(path, to_json(h, name));
}

template <Field K>
DialgebraInstance<K> load_dialgebra(const K& f, const std::filesystem::path& path) {
  return dialgebra_from_json(f, read_json(path));
}

/// Calls fn(field) with the concrete field named by the document.
template <class Fn>
decltype(auto) visit_field(const json& j, Fn&& fn) {
  return std::visit(std::forward<Fn>(fn), field_from_json(j));
}

// ---------------------------------------------------------------------------
// Auxiliary documents: a single map, a list of vectors.

template <Field K>
json map_to_json(const K& f, const Matrix<K>& m, int degree = 0) {
  json j;
  field_to_json(f, j);
  j["dim"] = m.cols();
  j["matrix"] = matrix_to_json(m);
  if (degree) j["parity"] = degree;
  return j;
}

/// {"field", "dim", "matrix"} with optional "rows" for non-square maps and "parity" (degree).
template <Field K>
Matrix<K> map_from_json(const K& f, const json& j, std::size_t cols, std::size_t rows) {
  io_detail::require_keys(j, {"field", "p", "dim", "rows", "matrix", "parity"}, {"matrix"}, "map file");
  if (j.contains("dim") && io_detail::dim_of(j) != cols)
    throw SchemaError("dim", "map dimension " + std::to_string(io_detail::dim_of(j)) + " does not match instance dimension " +
                                 std::to_string(cols));
  return matrix_from_json(f, j.at("matrix"), rows, cols, "matrix");
}

template <Field K>
std::vector<Vec<K>> vectors_from_json(const K& f, const json& j, std::size_t dim) {
  io_detail::require_keys(j, {"field", "p", "dim", "vectors"}, {"vectors"}, "subspace file");
  const auto& v = j.at("vectors");
  if (!v.is_array()) throw SchemaError("vectors", "expected an array of vectors");
  std::vector<Vec<K>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(vector_from_json(f, v[i], dim, "vectors[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace bihom
