#pragma once

#include "equichain/complex.hpp"
#include "equichain/error.hpp"
#include "equichain/group.hpp"
#include "equichain/simplicial.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace equichain::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::MalformedDocument, "field '" + field + "': " + what);
}

inline const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) malformed(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::size_t count(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) malformed(field, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline Int integer(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      malformed(field, "expected an integer");
    }
  }
  malformed(field, "expected an integer");
}

inline Json integer_json(const Int& v) {
  if (fits_int64(v)) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

}  // namespace detail

inline FiniteGroup parse_group(const Json& j) {
  if (!j.is_object()) detail::malformed("group", "expected an object");
  if (j.contains("cyclic")) {
    const std::size_t n = detail::count(j.at("cyclic"), "group.cyclic");
    if (n == 0) detail::malformed("group.cyclic", "order must be positive");
    return FiniteGroup::cyclic(n);
  }
  const std::size_t n = detail::count(detail::member(j, "order", "group"), "group.order");
  const Json& t = detail::member(j, "table", "group");
  if (!t.is_array() || t.size() != n) detail::malformed("group.table", "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<std::size_t>> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string path = detail::index_path("group.table", i);
    if (!t[i].is_array() || t[i].size() != n) detail::malformed(path, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) table[i].push_back(detail::count(t[i][k], detail::index_path(path, k)));
  }
  return FiniteGroup::from_table(std::move(table));
}

inline Json group_json(const FiniteGroup& g) {
  Json j = Json::object();
  if (g.has_cyclic_label()) {
    j["cyclic"] = g.order();
    return j;
  }
  j["order"] = g.order();
  j["table"] = g.table();
  return j;
}

// Parses and validates a chain-complex document.
inline EquivariantChainComplex parse_complex(const Json& doc) {
  if (!doc.is_object()) detail::malformed("", "document must be a JSON object");
  EquivariantChainComplex x;
  x.group = parse_group(detail::member(doc, "group", ""));
  const Json& cells = detail::member(doc, "cells", "");
  if (!cells.is_array()) detail::malformed("cells", "expected a list of counts");
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k < cells.size(); ++k) counts.push_back(detail::count(cells[k], detail::index_path("cells", k)));
  const std::size_t top = counts.size();

  const Json& bds = doc.contains("boundaries") ? doc.at("boundaries") : Json::array();
  if (!bds.is_array() || bds.size() != (top == 0 ? 0 : top - 1))
    detail::malformed("boundaries", "expected " + std::to_string(top == 0 ? 0 : top - 1) + " matrices (one per dimension >= 1)");
  std::vector<IntMatrix> bd;
  if (top > 0) bd.emplace_back(0, counts[0]);
  for (std::size_t k = 1; k < top; ++k) {
    const std::string path = detail::index_path("boundaries", k - 1);
    const Json& m = bds[k - 1];
    const std::size_t rows = counts[k - 1], cols = counts[k];
    if (!m.is_array() || (m.size() != rows && !(rows == 0 && m.empty())))
      detail::malformed(path, "expected " + std::to_string(rows) + " rows");
    IntMatrix b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const std::string rp = detail::index_path(path, i);
      if (!m[i].is_array() || m[i].size() != cols) detail::malformed(rp, "expected " + std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c) b(i, c) = detail::integer(m[i][c], detail::index_path(rp, c));
    }
    bd.push_back(std::move(b));
  }
  x.chains = ChainComplex(counts, bd);

  const std::size_t n = x.group.order();
  if (doc.contains("action")) {
    const Json& act = doc.at("action");
    if (!act.is_array() || act.size() != n) detail::malformed("action", "expected one entry per group element (" + std::to_string(n) + ")");
    for (std::size_t g = 0; g < n; ++g) {
      const std::string gp = detail::index_path("action", g);
      if (!act[g].is_array() || act[g].size() != top) detail::malformed(gp, "expected one entry per dimension (" + std::to_string(top) + ")");
      std::vector<SignedPermutation> dims;
      for (std::size_t k = 0; k < top; ++k) {
        const std::string kp = detail::index_path(gp, k);
        const Json& perm = act[g][k];
        if (!perm.is_array() || perm.size() != counts[k]) detail::malformed(kp, "expected " + std::to_string(counts[k]) + " [image, sign] pairs");
        SignedPermutation p;
        for (std::size_t c = 0; c < counts[k]; ++c) {
          const std::string cp = detail::index_path(kp, c);
          const Json& e = perm[c];
          if (!e.is_array() || e.size() != 2) detail::malformed(cp, "expected [image, sign]");
          const std::size_t img = detail::count(e[0], cp + "[0]");
          if (img >= counts[k]) detail::malformed(cp + "[0]", "image index out of range");
          if (!e[1].is_number_integer() || (e[1].get<std::int64_t>() != 1 && e[1].get<std::int64_t>() != -1))
            detail::malformed(cp + "[1]", "sign must be 1 or -1");
          p.image.push_back(img);
          p.sign.push_back(static_cast<int>(e[1].get<std::int64_t>()));
        }
        dims.push_back(std::move(p));
      }
      x.action.push_back(std::move(dims));
    }
  } else {
    x = EquivariantChainComplex::with_trivial_action(x.group, x.chains);
  }

  if (doc.contains("labels")) {
    const Json& l = doc.at("labels");
    if (!l.is_array() || l.size() != top) detail::malformed("labels", "expected one list per dimension");
    for (std::size_t k = 0; k < top; ++k) {
      const std::string kp = detail::index_path("labels", k);
      if (!l[k].is_array() || l[k].size() != counts[k]) detail::malformed(kp, "expected " + std::to_string(counts[k]) + " labels");
      std::vector<std::string> names;
      for (std::size_t c = 0; c < counts[k]; ++c) {
        if (!l[k][c].is_string()) detail::malformed(detail::index_path(kp, c), "expected a string");
        names.push_back(l[k][c].get<std::string>());
      }
      x.labels.push_back(std::move(names));
    }
  }
  return x;
}

inline Json complex_json(const EquivariantChainComplex& x) {
  Json j = Json::object();
  j["group"] = group_json(x.group);
  j["cells"] = x.chains.cells;
  Json bds = Json::array();
  for (int k = 1; k <= x.top(); ++k) {
    const IntMatrix& b = x.chains.boundaries[static_cast<std::size_t>(k)];
    Json m = Json::array();
    for (std::size_t i = 0; i < b.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(detail::integer_json(b(i, c)));
      m.push_back(std::move(row));
    }
    bds.push_back(std::move(m));
  }
  j["boundaries"] = bds;
  Json act = Json::array();
  for (std::size_t g = 0; g < x.group.order(); ++g) {
    Json dims = Json::array();
    for (int k = 0; k <= x.top(); ++k) {
      Json perm = Json::array();
      const auto& p = x.act(g, k);
      for (std::size_t c = 0; c < p.size(); ++c) perm.push_back(Json::array({p.image[c], p.sign[c]}));
      dims.push_back(std::move(perm));
    }
    act.push_back(std::move(dims));
  }
  j["action"] = act;
  if (!x.labels.empty()) j["labels"] = x.labels;
  return j;
}

// {"group": ..., "vertices": n, "facets": [[...]], "vertex_action": [[...] per element]}
inline bool is_simplicial_document(const Json& doc) { return doc.is_object() && doc.contains("facets"); }

inline SimplicialGComplex parse_simplicial(const Json& doc) {
  if (!doc.is_object()) detail::malformed("", "document must be a JSON object");
  FiniteGroup g = parse_group(detail::member(doc, "group", ""));
  const std::size_t nv = detail::count(detail::member(doc, "vertices", ""), "vertices");
  const Json& f = detail::member(doc, "facets", "");
  if (!f.is_array()) detail::malformed("facets", "expected a list of vertex lists");
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string path = detail::index_path("facets", i);
    if (!f[i].is_array()) detail::malformed(path, "expected a vertex list");
    Simplex s;
    for (std::size_t k = 0; k < f[i].size(); ++k) {
      const std::size_t v = detail::count(f[i][k], detail::index_path(path, k));
      if (v >= nv) detail::malformed(detail::index_path(path, k), "vertex out of range");
      s.push_back(v);
    }
    facets.push_back(std::move(s));
  }
  std::vector<std::vector<std::size_t>> act;
  if (doc.contains("vertex_action")) {
    const Json& a = doc.at("vertex_action");
    if (!a.is_array() || a.size() != g.order()) detail::malformed("vertex_action", "expected one permutation per group element");
    for (std::size_t e = 0; e < g.order(); ++e) {
      const std::string path = detail::index_path("vertex_action", e);
      if (!a[e].is_array() || a[e].size() != nv) detail::malformed(path, "expected " + std::to_string(nv) + " images");
      std::vector<std::size_t> perm;
      for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t img = detail::count(a[e][v], detail::index_path(path, v));
        if (img >= nv) detail::malformed(detail::index_path(path, v), "vertex out of range");
        perm.push_back(img);
      }
      act.push_back(std::move(perm));
    }
  } else {
    return SimplicialGComplex::with_trivial_action(nv, facets, g);
  }
  return SimplicialGComplex(nv, facets, std::move(g), std::move(act));
}

inline Json simplicial_json(const SimplicialGComplex& k) {
  Json j = Json::object();
  j["group"] = group_json(k.group());
  j["vertices"] = k.vertex_count();
  j["facets"] = k.facets();
  j["vertex_action"] = k.vertex_action();
  return j;
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("not valid JSON: ") + e.what());
  }
}

// FNV-1a over the canonical serialization.
inline std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace equichain::io
