#pragma once

#include <deque>
#include <fstream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdiff/bimodule.hpp"
#include "ncdiff/zoo.hpp"

namespace ncdiff {

/// Input-spec error with the JSON path of the offending member.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message) {}
};

namespace detail {

inline void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                       const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw SpecError(path, "unknown member '" + it.key() + "'");
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key,
                                     const std::string& path) {
  if (!obj.contains(key)) throw SpecError(path, "missing member '" + key + "'");
  return obj.at(key);
}

template <Field K>
K parse_scalar_at(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) throw SpecError(path, "expected a scalar string");
  try {
    return scalar_from_string<K>(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SpecError(path, e.what());
  }
}

template <Field K>
Vec<K> parse_vector_at(const nlohmann::json& j, int expect, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != expect)
    throw SpecError(path, "expected an array of " + std::to_string(expect) + " scalars");
  Vec<K> v(expect);
  for (int i = 0; i < expect; ++i)
    v[i] = parse_scalar_at<K>(j.at(i), path + "[" + std::to_string(i) + "]");
  return v;
}

template <Field K>
Matrix<K> parse_matrix_at(const nlohmann::json& j, int rows, int cols, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw SpecError(path, "expected " + std::to_string(rows) + " rows");
  Matrix<K> m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Vec<K> row = parse_vector_at<K>(j.at(r), cols, path + "[" + std::to_string(r) + "]");
    for (int c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

}  // namespace detail

/// Parsed spec file: the algebra, its regular bimodule, any declared modules
/// and operators. Addresses are stable (create through parse_spec and keep
/// the unique_ptr alive while bimodule/operator pointers are in use).
template <Field K>
struct SpecData {
  Algebra<K> algebra;
  Bimodule<K> regular_module;
  std::vector<std::string> module_names;
  std::deque<Bimodule<K>> modules;
  struct NamedOperator {
    std::string name;
    std::string source;
    std::string target;
    Matrix<K> matrix;
  };
  std::vector<NamedOperator> operators;

  SpecData() = default;
  SpecData(const SpecData&) = delete;
  SpecData& operator=(const SpecData&) = delete;

  const Bimodule<K>* find_module(const std::string& name) const {
    if (name == "regular") return &regular_module;
    for (std::size_t i = 0; i < module_names.size(); ++i)
      if (module_names[i] == name) return &modules[i];
    return nullptr;
  }

  const NamedOperator* find_operator(const std::string& name) const {
    for (const auto& op : operators)
      if (op.name == name) return &op;
    return nullptr;
  }
};

/// The declared base field of a spec document: "Q" or "Fp:<p>".
inline std::string spec_field_name(const nlohmann::json& doc) {
  const auto& alg = detail::require(doc, "algebra", "(root)");
  const auto& f = detail::require(alg, "field", "algebra");
  if (!f.is_string()) throw SpecError("algebra.field", "expected a string");
  const std::string s = f.get<std::string>();
  if (s == "Q") return s;
  if (s.rfind("Fp:", 0) == 0) {
    const std::string p = s.substr(3);
    if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
      throw SpecError("algebra.field", "bad prime field spec '" + s + "'");
    return s;
  }
  throw SpecError("algebra.field", "unknown field '" + s + "' (expected \"Q\" or \"Fp:<p>\")");
}

inline std::uint64_t spec_field_prime(const std::string& field_name) {
  return std::stoull(field_name.substr(3));
}

template <Field K>
std::unique_ptr<SpecData<K>> parse_spec(const nlohmann::json& doc) {
  using nlohmann::json;
  if (!doc.is_object()) throw SpecError("(root)", "expected a JSON object");
  detail::check_keys(doc, {"algebra", "modules", "operators"}, "(root)");

  auto data = std::make_unique<SpecData<K>>();
  const json& ja = detail::require(doc, "algebra", "(root)");
  detail::check_keys(ja, {"name", "field", "basis", "unit", "mul"}, "algebra");
  Algebra<K>& a = data->algebra;
  a.name = detail::require(ja, "name", "algebra").get<std::string>();
  (void)spec_field_name(doc);
  const json& jb = detail::require(ja, "basis", "algebra");
  if (!jb.is_array() || jb.empty()) throw SpecError("algebra.basis", "expected a nonempty array");
  for (const auto& l : jb) a.basis_labels.push_back(l.get<std::string>());
  a.dim = static_cast<int>(a.basis_labels.size());
  a.unit = detail::parse_vector_at<K>(detail::require(ja, "unit", "algebra"), a.dim, "algebra.unit");
  const json& jm = detail::require(ja, "mul", "algebra");
  if (!jm.is_array() || static_cast<int>(jm.size()) != a.dim)
    throw SpecError("algebra.mul", "expected " + std::to_string(a.dim) + " entries");
  a.mul.assign(a.dim, std::vector<Vec<K>>(a.dim));
  for (int i = 0; i < a.dim; ++i) {
    const json& row = jm.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != a.dim)
      throw SpecError("algebra.mul[" + std::to_string(i) + "]", "expected " + std::to_string(a.dim) + " entries");
    for (int j = 0; j < a.dim; ++j)
      a.mul[i][j] = detail::parse_vector_at<K>(
          row.at(j), a.dim, "algebra.mul[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  {
    const ValidationReport r = a.validate();
    if (!r.ok) throw SpecError("algebra", r.message);
  }
  data->regular_module = regular(a);

  if (doc.contains("modules")) {
    const json& jms = doc.at("modules");
    if (!jms.is_array()) throw SpecError("modules", "expected an array");
    for (std::size_t mi = 0; mi < jms.size(); ++mi) {
      const std::string path = "modules[" + std::to_string(mi) + "]";
      const json& jm2 = jms.at(mi);
      detail::check_keys(jm2, {"name", "dim", "left", "right"}, path);
      const std::string name = detail::require(jm2, "name", path).get<std::string>();
      if (name == "regular" || data->find_module(name))
        throw SpecError(path + ".name", "duplicate or reserved module name '" + name + "'");
      const int dim = detail::require(jm2, "dim", path).get<int>();
      if (dim <= 0) throw SpecError(path + ".dim", "expected a positive dimension");
      Bimodule<K> m;
      m.alg = &data->algebra;
      m.dim = dim;
      const json& jl = detail::require(jm2, "left", path);
      const json& jr = detail::require(jm2, "right", path);
      if (!jl.is_array() || static_cast<int>(jl.size()) != a.dim)
        throw SpecError(path + ".left", "expected one matrix per algebra basis element");
      if (!jr.is_array() || static_cast<int>(jr.size()) != a.dim)
        throw SpecError(path + ".right", "expected one matrix per algebra basis element");
      for (int i = 0; i < a.dim; ++i) {
        m.left.push_back(detail::parse_matrix_at<K>(jl.at(i), dim, dim,
                                                    path + ".left[" + std::to_string(i) + "]"));
        m.right.push_back(detail::parse_matrix_at<K>(jr.at(i), dim, dim,
                                                     path + ".right[" + std::to_string(i) + "]"));
      }
      const ValidationReport r = m.validate();
      if (!r.ok) throw SpecError(path, r.message);
      data->module_names.push_back(name);
      data->modules.push_back(std::move(m));
    }
  }

  if (doc.contains("operators")) {
    const json& jops = doc.at("operators");
    if (!jops.is_array()) throw SpecError("operators", "expected an array");
    for (std::size_t oi = 0; oi < jops.size(); ++oi) {
      const std::string path = "operators[" + std::to_string(oi) + "]";
      const json& jo = jops.at(oi);
      detail::check_keys(jo, {"name", "source", "target", "matrix"}, path);
      typename SpecData<K>::NamedOperator op;
      op.name = detail::require(jo, "name", path).get<std::string>();
      op.source = detail::require(jo, "source", path).get<std::string>();
      op.target = detail::require(jo, "target", path).get<std::string>();
      const Bimodule<K>* src = data->find_module(op.source);
      const Bimodule<K>* tgt = data->find_module(op.target);
      if (!src) throw SpecError(path + ".source", "unknown module '" + op.source + "'");
      if (!tgt) throw SpecError(path + ".target", "unknown module '" + op.target + "'");
      op.matrix = detail::parse_matrix_at<K>(detail::require(jo, "matrix", path), tgt->dim,
                                             src->dim, path + ".matrix");
      data->operators.push_back(std::move(op));
    }
  }
  return data;
}

template <Field K>
nlohmann::json export_algebra(const Algebra<K>& a, const std::string& field_name) {
  nlohmann::json ja;
  ja["name"] = a.name;
  ja["field"] = field_name;
  ja["basis"] = a.basis_labels;
  nlohmann::json unit = nlohmann::json::array();
  for (const K& x : a.unit) unit.push_back(to_string(x));
  ja["unit"] = unit;
  nlohmann::json mul = nlohmann::json::array();
  for (int i = 0; i < a.dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.dim; ++j) {
      nlohmann::json cell = nlohmann::json::array();
      for (int k = 0; k < a.dim; ++k) cell.push_back(to_string(a.mul[i][j][k]));
      row.push_back(cell);
    }
    mul.push_back(row);
  }
  ja["mul"] = mul;
  nlohmann::json doc;
  doc["algebra"] = ja;
  return doc;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path, std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace ncdiff
