#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "nangle/algebra.hpp"
#include "nangle/errors.hpp"

namespace nangle {

struct Arrow {
  std::string name;
  std::size_t source = 0, target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::size_t vertex_index(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == label) return i;
    throw InputError("unknown vertex '" + label + "'");
  }
  std::size_t arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return i;
    throw InputError("unknown arrow '" + name + "'");
  }
};

/// A relation term with an integer coefficient (reduced into the field on use).
struct RelationTerm {
  std::int64_t coeff = 0;
  std::vector<std::size_t> path;  // arrow indices, composed left to right
};

using Relation = std::vector<RelationTerm>;

/// Validated algebra description: quiver, relations and ground field characteristic.
struct AlgebraSpec {
  std::uint32_t characteristic = 0;  // 0 = rationals
  Quiver quiver;
  std::vector<Relation> relations;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

}  // namespace detail

/// Parses and structurally validates the JSON algebra format.
inline AlgebraSpec parse_algebra(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = detail::line_column(text, off);
    throw ParseError("syntax error", line, col);
  }
  if (!doc.is_object()) throw InputError("top level must be an object");

  AlgebraSpec spec;
  const auto& field = detail::require(doc, "field", "algebra");
  if (!field.is_number_integer() || field.get<std::int64_t>() < 0)
    throw InputError("field: characteristic must be a non-negative integer");
  auto p = field.get<std::int64_t>();
  if (p != 0 && (p >= (1ll << 31) || !is_prime(static_cast<std::uint64_t>(p))))
    throw InputError("field: characteristic " + std::to_string(p) + " is not prime");
  spec.characteristic = static_cast<std::uint32_t>(p);

  const auto& verts = detail::require(doc, "vertices", "algebra");
  if (!verts.is_array() || verts.empty()) throw InputError("vertices: expected a non-empty array of strings");
  std::set<std::string> seen;
  for (const auto& v : verts) {
    if (!v.is_string()) throw InputError("vertices: expected strings");
    auto label = v.get<std::string>();
    if (!seen.insert(label).second) throw InputError("vertex '" + label + "' declared twice");
    spec.quiver.vertices.push_back(label);
  }

  const auto& arrows = detail::require(doc, "arrows", "algebra");
  if (!arrows.is_array()) throw InputError("arrows: expected an array");
  std::set<std::string> names;
  for (const auto& a : arrows) {
    const auto& name = detail::require(a, "name", "arrow");
    if (!name.is_string()) throw InputError("arrow: name must be a string");
    std::string n = name.get<std::string>();
    const auto& from = detail::require(a, "from", "arrow '" + n + "'");
    const auto& to = detail::require(a, "to", "arrow '" + n + "'");
    if (!from.is_string() || !to.is_string()) throw InputError("arrow '" + n + "': endpoints must be strings");
    if (!names.insert(n).second) throw InputError("arrow '" + n + "' declared twice");
    Arrow arr{n, 0, 0};
    try {
      arr.source = spec.quiver.vertex_index(from.get<std::string>());
      arr.target = spec.quiver.vertex_index(to.get<std::string>());
    } catch (const InputError&) {
      throw InputError("arrow '" + n + "' has an undeclared endpoint");
    }
    spec.quiver.arrows.push_back(arr);
  }

  const auto& rels = detail::require(doc, "relations", "algebra");
  if (!rels.is_array()) throw InputError("relations: expected an array");
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const std::string where = "relation " + std::to_string(r + 1);
    if (!rels[r].is_array() || rels[r].empty()) throw InputError(where + ": expected a non-empty array of terms");
    Relation rel;
    std::size_t src = 0, tgt = 0;
    for (std::size_t t = 0; t < rels[r].size(); ++t) {
      const auto& term = rels[r][t];
      const auto& coeff = detail::require(term, "coeff", where);
      const auto& path = detail::require(term, "path", where);
      if (!coeff.is_number_integer()) throw InputError(where + ": coefficient must be an integer");
      if (!path.is_array()) throw InputError(where + ": path must be an array of arrow names");
      RelationTerm rt{coeff.get<std::int64_t>(), {}};
      for (const auto& step : path) {
        if (!step.is_string()) throw InputError(where + ": path entries must be arrow names");
        try {
          rt.path.push_back(spec.quiver.arrow_index(step.get<std::string>()));
        } catch (const InputError&) {
          throw InputError(where + ": unknown arrow '" + step.get<std::string>() + "'");
        }
      }
      if (rt.path.size() < 2)
        throw InputError(where + ": term of length " + std::to_string(rt.path.size()) +
                         " is not in the square of the arrow ideal");
      for (std::size_t k = 0; k + 1 < rt.path.size(); ++k)
        if (spec.quiver.arrows[rt.path[k]].target != spec.quiver.arrows[rt.path[k + 1]].source)
          throw InputError(where + ": arrows '" + spec.quiver.arrows[rt.path[k]].name + "' and '" +
                           spec.quiver.arrows[rt.path[k + 1]].name + "' are not composable");
      std::size_t s = spec.quiver.arrows[rt.path.front()].source;
      std::size_t e = spec.quiver.arrows[rt.path.back()].target;
      if (t == 0) {
        src = s;
        tgt = e;
      } else if (s != src || e != tgt) {
        throw InputError(where + ": terms are not parallel");
      }
      rel.push_back(std::move(rt));
    }
    spec.relations.push_back(std::move(rel));
  }
  return spec;
}

/// Round-trip of the parsed description to the canonical JSON format.
inline nlohmann::ordered_json spec_to_json(const AlgebraSpec& spec) {
  nlohmann::ordered_json j;
  j["field"] = spec.characteristic;
  j["vertices"] = spec.quiver.vertices;
  j["arrows"] = nlohmann::ordered_json::array();
  for (const auto& a : spec.quiver.arrows)
    j["arrows"].push_back(
        {{"name", a.name}, {"from", spec.quiver.vertices[a.source]}, {"to", spec.quiver.vertices[a.target]}});
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& rel : spec.relations) {
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : rel) {
      std::vector<std::string> path;
      for (auto a : t.path) path.push_back(spec.quiver.arrows[a].name);
      terms.push_back({{"coeff", t.coeff}, {"path", path}});
    }
    j["relations"].push_back(terms);
  }
  return j;
}

/// A path: either trivial at a vertex, or a composable arrow sequence.
struct Path {
  std::size_t vertex = 0;  // source vertex (for trivial paths, the vertex itself)
  std::vector<std::size_t> arrows;
};

/// Basic algebra kQ/I together with its normal-form path basis.
template <class F>
struct QuiverAlgebra {
  AlgebraSpec spec;
  AlgebraPtr<F> algebra;
  std::vector<Path> basis;    // normal forms; trivial paths first
  std::size_t nilpotency = 0;  // D with J^D ⊆ I certified
};

namespace detail {

inline std::string path_label(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertices[p.vertex];
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += "·";
    s += q.arrows[p.arrows[k]].name;
  }
  return s;
}

/// Length-lexicographic comparison on arrow names; trivial paths ordered by vertex.
struct PathOrder {
  const Quiver* q;
  bool operator()(const Path& a, const Path& b) const {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows.empty()) return a.vertex < b.vertex;
    for (std::size_t k = 0; k < a.arrows.size(); ++k) {
      const auto& x = q->arrows[a.arrows[k]].name;
      const auto& y = q->arrows[b.arrows[k]].name;
      if (x != y) return x < y;
    }
    return false;
  }
};

inline std::size_t path_target(const Quiver& q, const Path& p) {
  return p.arrows.empty() ? p.vertex : q.arrows[p.arrows.back()].target;
}

/// All paths of length <= max_len, sorted by PathOrder.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len, std::size_t limit) {
  std::vector<Path> out;
  std::vector<Path> layer;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) layer.push_back({v, {}});
  out = layer;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Path> next;
    for (const auto& p : layer)
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].source == path_target(q, p)) {
          Path np = p;
          np.arrows.push_back(a);
          next.push_back(std::move(np));
          if (out.size() + next.size() > limit)
            throw ResourceLimit("path enumeration exceeds " + std::to_string(limit) + " paths");
        }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
    if (layer.empty()) break;
  }
  std::sort(out.begin(), out.end(), PathOrder{&q});
  return out;
}

}  // namespace detail

/// Computes a normal-form basis and structure constants of kQ/I by degree-truncated
/// reduction. Certifies finite dimension by finding D <= max_degree with J^D ⊆ I.
template <class F>
QuiverAlgebra<F> compute_basis(const AlgebraSpec& spec, const F& f, std::size_t max_degree = 32) {
  const Quiver& q = spec.quiver;
  std::size_t start = 1;
  for (const auto& rel : spec.relations)
    for (const auto& t : rel) start = std::max(start, t.path.size());
  if (q.arrows.empty()) start = 1;

  for (std::size_t D = start; D <= max_degree; ++D) {
    auto paths = detail::enumerate_paths(q, D, 200000);
    std::map<std::vector<std::size_t>, std::size_t> index;  // arrow sequence -> position (nontrivial only)
    for (std::size_t i = 0; i < paths.size(); ++i)
      if (!paths[i].arrows.empty()) index[paths[i].arrows] = i;
    const std::size_t np = paths.size();
    // Column c corresponds to path np-1-c: larger paths come first so they become leading terms.
    auto col = [&](std::size_t i) { return np - 1 - i; };

    std::vector<Matrix<F>> gens;
    for (const auto& rel : spec.relations) {
      std::size_t rs = q.arrows[rel.front().path.front()].source;
      std::size_t rt = q.arrows[rel.front().path.back()].target;
      std::size_t minlen = rel.front().path.size();
      for (const auto& t : rel) minlen = std::min(minlen, t.path.size());
      for (const auto& pre : paths) {
        if (detail::path_target(q, pre) != rs) continue;
        if (pre.arrows.size() + minlen > D) continue;
        for (const auto& post : paths) {
          if (post.vertex != rt) continue;
          if (pre.arrows.size() + minlen + post.arrows.size() > D) continue;
          Matrix<F> row(f, 1, np);
          for (const auto& t : rel) {
            std::vector<std::size_t> w = pre.arrows;
            w.insert(w.end(), t.path.begin(), t.path.end());
            w.insert(w.end(), post.arrows.begin(), post.arrows.end());
            if (w.size() > D) continue;
            auto c = col(index.at(w));
            row(0, c) = f.add(row(0, c), f.from_int(t.coeff));
          }
          if (!row.is_zero()) gens.push_back(std::move(row));
        }
      }
    }
    Matrix<F> gm(f, gens.size(), np);
    for (std::size_t i = 0; i < gens.size(); ++i) gm.set_row(i, gens[i]);
    auto ech = rref(std::move(gm));
    std::vector<long> pivot_row(np, -1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) pivot_row[ech.pivots[r]] = static_cast<long>(r);

    bool certified = true;
    for (std::size_t i = 0; i < np && certified; ++i)
      if (paths[i].arrows.size() == D && pivot_row[col(i)] < 0) certified = false;
    if (!certified && !q.arrows.empty()) continue;

    // Normal forms: paths that are not leading terms (so every path of length D is excluded).
    std::vector<std::size_t> normal;
    for (std::size_t i = 0; i < np; ++i)
      if (pivot_row[col(i)] < 0) normal.push_back(i);
    std::vector<long> basis_pos(np, -1);
    for (std::size_t k = 0; k < normal.size(); ++k) basis_pos[normal[k]] = static_cast<long>(k);

    QuiverAlgebra<F> qa;
    qa.spec = spec;
    qa.nilpotency = q.arrows.empty() ? 1 : D;
    AlgebraData<F> data;
    data.field = f;
    data.dim = normal.size();
    for (auto i : normal) qa.basis.push_back(paths[i]);
    data.mult.assign(data.dim, std::vector<SparseVector<F>>(data.dim));
    data.idempotents.resize(q.vertices.size());
    data.left_vertex.resize(data.dim);
    data.right_vertex.resize(data.dim);
    for (std::size_t k = 0; k < data.dim; ++k) {
      const auto& p = qa.basis[k];
      data.labels.push_back(detail::path_label(q, p));
      data.left_vertex[k] = p.vertex;
      data.right_vertex[k] = detail::path_target(q, p);
      if (p.arrows.empty()) data.idempotents[p.vertex] = k;
      if (p.arrows.size() == 1) data.radical_generators.push_back(k);
    }
    if (data.radical_generators.size() != q.arrows.size())
      throw InputError("an arrow lies in the ideal generated by the relations; the presentation is not admissible");

    // Reduce a path (given by its enumeration position) to basis coordinates.
    auto reduce = [&](std::size_t i) {
      SparseVector<F> out;
      long r = pivot_row[col(i)];
      if (r < 0) {
        out.emplace_back(static_cast<std::size_t>(basis_pos[i]), f.one());
        return out;
      }
      for (std::size_t c = col(i) + 1; c < np; ++c) {
        const auto& v = ech.reduced(static_cast<std::size_t>(r), c);
        if (f.is_zero(v)) continue;
        std::size_t pi = np - 1 - c;
        out.emplace_back(static_cast<std::size_t>(basis_pos[pi]), f.neg(v));
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    for (std::size_t a = 0; a < data.dim; ++a)
      for (std::size_t b = 0; b < data.dim; ++b) {
        const auto& pa = qa.basis[a];
        const auto& pb = qa.basis[b];
        if (data.right_vertex[a] != data.left_vertex[b]) continue;
        if (pa.arrows.empty()) {
          data.mult[a][b] = {{b, f.one()}};
          continue;
        }
        if (pb.arrows.empty()) {
          data.mult[a][b] = {{a, f.one()}};
          continue;
        }
        std::vector<std::size_t> w = pa.arrows;
        w.insert(w.end(), pb.arrows.begin(), pb.arrows.end());
        if (w.size() >= D) continue;  // J^D ⊆ I
        data.mult[a][b] = reduce(index.at(w));
      }
    qa.algebra = make_algebra(std::move(data));
    qa.algebra->validate();
    return qa;
  }
  throw NotFiniteDimensional("no nilpotency degree <= " + std::to_string(max_degree) +
                             " certifies finite dimension");
}

/// Nakayama permutation and socle data of a self-injective algebra.
template <class F>
struct NakayamaData {
  std::vector<std::size_t> permutation;  // soc(e_i A) ≅ S_{ν(i)}
  std::vector<Matrix<F>> socle;          // spanning vector of soc(e_i A) in algebra coordinates
  std::vector<std::string> socle_labels; // leading basis path of each socle vector
};

namespace detail {

/// Socle of e_v A (right module) as algebra-coordinate rows.
template <class F>
Matrix<F> socle_of_projective(const Algebra<F>& a, std::size_t v) {
  const F& f = a.field();
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b < a.dim(); ++b)
    if (a.left_vertex(b) == v) idx.push_back(b);
  // Stack right multiplication by all radical generators, restricted to e_v A.
  Matrix<F> big(f, idx.size(), a.dim() * a.radical_generators().size());
  for (std::size_t g = 0; g < a.radical_generators().size(); ++g) {
    auto r = a.right_multiplication(a.basis_vector(a.radical_generators()[g]));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t c = 0; c < a.dim(); ++c) big(i, g * a.dim() + c) = r(idx[i], c);
  }
  Matrix<F> ker = a.radical_generators().empty() ? Matrix<F>::identity(f, idx.size()) : kernel_basis(big);
  Matrix<F> out(f, ker.rows(), a.dim());
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) out(r, idx[i]) = ker(r, i);
  return out;
}

}  // namespace detail

/// Computes the Nakayama permutation; throws NotSelfInjective naming a bad projective.
template <class F>
NakayamaData<F> check_self_injective(const AlgebraPtr<F>& a) {
  NakayamaData<F> nd;
  const std::size_t nv = a->vertex_count();
  std::vector<bool> hit(nv, false);
  for (int side = 0; side < 2; ++side) {
    const Algebra<F>& alg = side == 0 ? *a : *opposite(a);
    std::fill(hit.begin(), hit.end(), false);
    for (std::size_t v = 0; v < nv; ++v) {
      auto soc = detail::socle_of_projective(alg, v);
      const std::string which = side == 0 ? "e_" + std::to_string(v + 1) + "A" : "Ae_" + std::to_string(v + 1);
      if (soc.rows() != 1)
        throw NotSelfInjective("socle of " + which + " has dimension " + std::to_string(soc.rows()), v);
      std::size_t type = nv;
      for (std::size_t b = 0; b < alg.dim(); ++b)
        if (!alg.field().is_zero(soc(0, b))) type = alg.right_vertex(b);
      if (hit[type])
        throw NotSelfInjective("socles of two indecomposable projectives have the same type (vertex " +
                                   std::to_string(type + 1) + ")",
                               v);
      hit[type] = true;
      if (side == 0) {
        nd.permutation.push_back(type);
        std::size_t lead = 0;
        for (std::size_t b = alg.dim(); b-- > 0;)
          if (!alg.field().is_zero(soc(0, b))) lead = b;
        nd.socle_labels.push_back(alg.label(lead));
        nd.socle.push_back(soc);
      }
    }
  }
  return nd;
}

}  // namespace nangle
