#pragma once

#include "nangle/angulation.hpp"
#include "nangle/io.hpp"

namespace nangle {

inline constexpr const char* kSchemaVersion = "1";

template <class F>
Json automorphism_json(const Automorphism<F>& s) {
  Json j;
  j["matrix"] = matrix_json(s.matrix());
  j["vertex_action"] = s.vertex_action();
  return j;
}

template <class F>
Json periodicity_json(const PeriodicityReport<F>& r) {
  Json j;
  j["quasi_period"] = r.quasi_period;
  j["quasi_period_minimal"] = r.minimal;
  j["twist_matrix"] = matrix_json(r.twist.sigma.matrix());
  j["twist_vertex_action"] = r.twist.sigma.vertex_action();
  j["twist_order"] = r.twist_order ? Json(*r.twist_order) : Json();
  j["inner_order"] = r.inner_order ? Json(*r.inner_order) : Json();
  j["period"] = r.period ? Json(*r.period) : Json();
  j["witness_iso"] = matrix_json(r.twist.iso.matrix);
  Json dims = Json::array();
  for (std::size_t i = 1; i <= r.resolution.length(); ++i) dims.push_back(r.resolution.term(i)->dim());
  j["resolution_term_dims"] = dims;
  return j;
}

template <class F>
Json sequence_json(const NSigmaSequence<F>& x) {
  Json j;
  j["n"] = x.size();
  Json objs = Json::array();
  for (const auto& o : x.objects) objs.push_back(module_json(*o));
  j["objects"] = objs;
  Json maps = Json::array();
  for (const auto& f : x.maps) maps.push_back(matrix_json(f.matrix));
  j["maps"] = maps;
  return j;
}

template <class F>
Json certificate_json(const PhiCertificate<F>& c) {
  Json j;
  j["verdict"] = c.verdict;
  j["exact"] = c.defect.empty();
  j["defect"] = c.defect.empty() ? Json() : Json(c.defect);
  j["kernel"] = c.kernel ? module_json(*c.kernel) : Json();
  j["alpha"] = c.alpha ? matrix_json(c.alpha->matrix) : Json();
  j["beta"] = c.beta ? matrix_json(c.beta->matrix) : Json();
  return j;
}

template <class F>
Json morphism_list_json(const SequenceMorphism<F>& phi) {
  Json j = Json::array();
  for (const auto& f : phi) j.push_back(matrix_json(f.matrix));
  return j;
}

}  // namespace nangle
