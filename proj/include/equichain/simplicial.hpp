#pragma once

#include "equichain/complex.hpp"
#include "equichain/error.hpp"
#include "equichain/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace equichain {

using Simplex = std::vector<std::size_t>;  // ascending vertex indices

// A finite simplicial complex with a group acting by vertex permutations.
// simplices[k] holds the k-simplices in lexicographic order.
class SimplicialGComplex {
 public:
  SimplicialGComplex() = default;

  // Closes the facets under faces; every vertex 0..vertex_count-1 is a 0-simplex.
  // vertex_action[g][v] is the image of v under element g.
  SimplicialGComplex(std::size_t vertex_count, const std::vector<Simplex>& facets, FiniteGroup group,
                     std::vector<std::vector<std::size_t>> vertex_action)
      : vertices_(vertex_count), group_(std::move(group)), vertex_action_(std::move(vertex_action)) {
    std::set<Simplex> all;
    for (std::size_t v = 0; v < vertex_count; ++v) all.insert({v});
    for (Simplex f : facets) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (f.empty()) continue;
      for (auto v : f)
        if (v >= vertex_count) throw Error(ErrorCode::InvalidComplex, "facet vertex " + std::to_string(v) + " out of range");
      add_faces(f, all);
    }
    for (const auto& s : all) {
      const std::size_t k = s.size() - 1;
      if (simplices_.size() <= k) simplices_.resize(k + 1);
      simplices_[k].push_back(s);
    }
    for (auto& layer : simplices_) std::sort(layer.begin(), layer.end());
    check();
  }

  // Trivial action of the given group.
  static SimplicialGComplex with_trivial_action(std::size_t vertex_count, const std::vector<Simplex>& facets,
                                                const FiniteGroup& g) {
    std::vector<std::vector<std::size_t>> act(g.order(), std::vector<std::size_t>(vertex_count));
    for (auto& a : act)
      for (std::size_t v = 0; v < vertex_count; ++v) a[v] = v;
    return SimplicialGComplex(vertex_count, facets, g, std::move(act));
  }

  std::size_t vertex_count() const noexcept { return vertices_; }
  int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
  const FiniteGroup& group() const noexcept { return group_; }
  const std::vector<std::vector<std::size_t>>& vertex_action() const noexcept { return vertex_action_; }
  const std::vector<Simplex>& simplices(int k) const {
    static const std::vector<Simplex> none;
    return (k < 0 || k > dimension()) ? none : simplices_[static_cast<std::size_t>(k)];
  }
  std::size_t count(int k) const { return simplices(k).size(); }

  std::vector<Simplex> all_simplices() const {
    std::vector<Simplex> out;
    for (const auto& layer : simplices_) out.insert(out.end(), layer.begin(), layer.end());
    return out;
  }

  // Maximal simplices.
  std::vector<Simplex> facets() const {
    std::set<Simplex> covered;
    for (int k = 1; k <= dimension(); ++k)
      for (const auto& s : simplices(k))
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex f = s;
          f.erase(f.begin() + static_cast<long>(i));
          covered.insert(f);
        }
    std::vector<Simplex> out;
    for (const auto& s : all_simplices())
      if (!covered.count(s)) out.push_back(s);
    return out;
  }

  std::size_t index_of(const Simplex& s) const {
    const auto& layer = simplices(static_cast<int>(s.size()) - 1);
    auto it = std::lower_bound(layer.begin(), layer.end(), s);
    if (it == layer.end() || *it != s) throw Error(ErrorCode::InvalidComplex, "simplex not in complex");
    return static_cast<std::size_t>(it - layer.begin());
  }

  bool contains(const Simplex& s) const {
    if (s.empty()) return false;
    const auto& layer = simplices(static_cast<int>(s.size()) - 1);
    return std::binary_search(layer.begin(), layer.end(), s);
  }

  Simplex image(std::size_t g, const Simplex& s) const {
    Simplex t;
    for (auto v : s) t.push_back(vertex_action_[g][v]);
    std::sort(t.begin(), t.end());
    return t;
  }

 private:
  static void add_faces(const Simplex& s, std::set<Simplex>& all) {
    if (s.empty() || all.count(s)) return;
    all.insert(s);
    if (s.size() == 1) return;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(i));
      add_faces(f, all);
    }
  }

  void check() const {
    const std::size_t n = group_.order();
    if (vertex_action_.size() != n) throw Error(ErrorCode::InvalidComplex, "vertex action must list every group element");
    for (std::size_t g = 0; g < n; ++g) {
      if (vertex_action_[g].size() != vertices_)
        throw Error(ErrorCode::InvalidComplex, "vertex action of element " + std::to_string(g) + " has wrong length");
      std::vector<bool> hit(vertices_, false);
      for (auto v : vertex_action_[g]) {
        if (v >= vertices_) throw Error(ErrorCode::InvalidComplex, "vertex action image out of range");
        hit[v] = true;
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw Error(ErrorCode::InvalidComplex, "vertex action of element " + std::to_string(g) + " is not a permutation");
    }
    for (std::size_t v = 0; v < vertices_; ++v)
      if (n && vertex_action_[0][v] != v) throw Error(ErrorCode::InvalidComplex, "identity element moves a vertex");
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t v = 0; v < vertices_; ++v)
          if (vertex_action_[group_.mul(g, h)][v] != vertex_action_[g][vertex_action_[h][v]])
            throw Error(ErrorCode::InvalidComplex, "vertex action does not respect the group law at elements " +
                                                       std::to_string(g) + ", " + std::to_string(h));
    for (std::size_t g = 0; g < n; ++g)
      for (const auto& s : all_simplices())
        if (!contains(image(g, s))) throw Error(ErrorCode::InvalidComplex, "vertex action does not map simplices to simplices");
  }

  std::size_t vertices_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  FiniteGroup group_;
  std::vector<std::vector<std::size_t>> vertex_action_;
};

namespace detail {

inline std::string simplex_name(const Simplex& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

// Sign of the permutation sorting the sequence.
inline int sorting_parity(std::vector<std::size_t> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) sign = -sign;
  return sign;
}

}  // namespace detail

// Oriented simplicial chains: ascending-vertex orientation, alternating face
// signs, action signs = parity of the induced vertex permutation.
// Throws NotAdmissible when a simplex is fixed setwise but not vertexwise.
inline EquivariantChainComplex to_chain_complex(const SimplicialGComplex& k) {
  const int top = k.dimension();
  std::vector<std::size_t> counts;
  std::vector<IntMatrix> bd;
  for (int d = 0; d <= top; ++d) {
    counts.push_back(k.count(d));
    IntMatrix b(d > 0 ? k.count(d - 1) : 0, k.count(d));
    if (d > 0)
      for (std::size_t j = 0; j < k.count(d); ++j) {
        const auto& s = k.simplices(d)[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex f = s;
          f.erase(f.begin() + static_cast<long>(i));
          b(k.index_of(f), j) += (i % 2 == 0) ? 1 : -1;
        }
      }
    bd.push_back(std::move(b));
  }
  EquivariantChainComplex x{k.group(), ChainComplex(counts, bd), {}, {}};
  x.action.assign(k.group().order(), {});
  for (std::size_t g = 0; g < k.group().order(); ++g)
    for (int d = 0; d <= top; ++d) {
      SignedPermutation p;
      for (const auto& s : k.simplices(d)) {
        std::vector<std::size_t> seq;
        for (auto v : s) seq.push_back(k.vertex_action()[g][v]);
        Simplex t = seq;
        std::sort(t.begin(), t.end());
        if (t == s && seq != s)
          throw Error(ErrorCode::NotAdmissible, "simplex " + detail::simplex_name(s) + " is fixed setwise but not vertexwise by element " +
                                                    std::to_string(g) + "; subdivide first");
        p.image.push_back(k.index_of(t));
        p.sign.push_back(detail::sorting_parity(seq));
      }
      x.action[g].push_back(std::move(p));
    }
  for (int d = 0; d <= top; ++d) {
    std::vector<std::string> names;
    for (const auto& s : k.simplices(d)) names.push_back(detail::simplex_name(s));
    x.labels.push_back(std::move(names));
  }
  return x;
}

// True when every simplex fixed setwise by an element is fixed vertexwise.
inline bool is_admissible(const SimplicialGComplex& k) {
  for (std::size_t g = 0; g < k.group().order(); ++g)
    for (const auto& s : k.all_simplices()) {
      bool setwise = k.image(g, s) == s;
      if (!setwise) continue;
      for (auto v : s)
        if (k.vertex_action()[g][v] != v) return false;
    }
  return true;
}

// Vertices are the simplices of k (dimension-major, lexicographic); simplices
// are chains under inclusion.
inline SimplicialGComplex barycentric_subdivision(const SimplicialGComplex& k) {
  const auto all = k.all_simplices();
  std::map<Simplex, std::size_t> vertex_of;
  for (std::size_t i = 0; i < all.size(); ++i) vertex_of[all[i]] = i;

  // chains ending at each simplex, built from faces
  std::vector<Simplex> facets;
  std::vector<Simplex> chain;
  auto descend = [&](auto&& self, const Simplex& s) -> void {
    chain.push_back(Simplex{vertex_of.at(s)});
    if (s.size() == 1) {
      Simplex f;
      for (const auto& c : chain) f.push_back(c[0]);
      facets.push_back(f);
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        self(self, f);
      }
    }
    chain.pop_back();
  };
  for (const auto& s : k.facets()) descend(descend, s);

  std::vector<std::vector<std::size_t>> act(k.group().order(), std::vector<std::size_t>(all.size()));
  for (std::size_t g = 0; g < k.group().order(); ++g)
    for (std::size_t i = 0; i < all.size(); ++i) act[g][i] = vertex_of.at(k.image(g, all[i]));
  return SimplicialGComplex(all.size(), facets, k.group(), std::move(act));
}

// Simplices sigma ⊔ tau with sigma in k ∪ {∅}, tau in l ∪ {∅}; l's vertices
// are shifted past k's. Diagonal action.
inline SimplicialGComplex join(const SimplicialGComplex& k, const SimplicialGComplex& l) {
  if (!(k.group() == l.group())) throw Error(ErrorCode::BadParameter, "join requires the same group");
  const std::size_t shift = k.vertex_count();
  std::vector<Simplex> facets;
  auto kf = k.facets();
  auto lf = l.facets();
  if (kf.empty()) kf.push_back({});
  if (lf.empty()) lf.push_back({});
  for (const auto& s : kf)
    for (const auto& t : lf) {
      Simplex u = s;
      for (auto v : t) u.push_back(v + shift);
      if (!u.empty()) facets.push_back(u);
    }
  const std::size_t n = k.group().order();
  std::vector<std::vector<std::size_t>> act(n);
  for (std::size_t g = 0; g < n; ++g) {
    act[g] = k.vertex_action()[g];
    for (auto v : l.vertex_action()[g]) act[g].push_back(v + shift);
  }
  return SimplicialGComplex(shift + l.vertex_count(), facets, k.group(), std::move(act));
}

// Joins with a single fixed apex (the last vertex).
inline SimplicialGComplex cone(const SimplicialGComplex& k) {
  return join(k, SimplicialGComplex::with_trivial_action(1, {{0}}, k.group()));
}

}  // namespace equichain
