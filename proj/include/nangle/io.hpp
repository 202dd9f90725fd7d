#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "nangle/module.hpp"
#include "nangle/quiver.hpp"

namespace nangle {

using Json = nlohmann::ordered_json;

inline Json scalar_json(const PrimeField& f, PrimeField::value_type v) { return f.to_int(v); }
inline Json scalar_json(const RationalField& f, const RationalField::value_type& v) {
  if (denominator(v) == 1 && abs(numerator(v)) < boost::multiprecision::cpp_int(1ll << 62))
    return static_cast<std::int64_t>(numerator(v));
  return f.to_string(v);
}

template <class F>
Json matrix_json(const Matrix<F>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar_json(m.field(), m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

template <class F>
Json field_json(const F& f) {
  Json j;
  j["kind"] = f.characteristic() == 0 ? "rationals" : "prime-field";
  j["characteristic"] = f.characteristic();
  return j;
}

/// Basis labels and structure constants as sparse rows [[k, c], ...].
template <class F>
Json algebra_json(const Algebra<F>& a) {
  Json j;
  j["dim"] = a.dim();
  j["basis"] = a.labels();
  Json idem = Json::array();
  for (auto e : a.idempotents()) idem.push_back(e);
  j["idempotents"] = idem;
  Json mult = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) {
      Json entry = Json::array();
      for (const auto& [t, v] : a.product(i, k)) entry.push_back(Json::array({t, scalar_json(a.field(), v)}));
      row.push_back(entry);
    }
    mult.push_back(row);
  }
  j["mult"] = mult;
  return j;
}

template <class F>
Json module_json(const Module<F>& m) {
  Json j;
  j["dim"] = m.dim();
  Json act = Json::array();
  for (const auto& a : m.actions()) act.push_back(matrix_json(a));
  j["action"] = act;
  return j;
}

template <class F>
Json morphism_json(const Morphism<F>& f) {
  Json j;
  j["source_dim"] = f.source->dim();
  j["target_dim"] = f.target->dim();
  j["matrix"] = matrix_json(f.matrix);
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nangle
