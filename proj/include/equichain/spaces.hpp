#pragma once

#include "equichain/complex.hpp"
#include "equichain/error.hpp"
#include "equichain/simplicial.hpp"

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace equichain::spaces {

namespace detail {

inline std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParameter, what + " must be an integer, got '" + s + "'");
  }
}

inline std::int64_t require_prime(std::int64_t p, const std::string& name) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParameter, name + " needs a prime group order, got " + std::to_string(p));
  return p;
}

inline std::vector<std::size_t> cycle_shift(std::size_t n, std::size_t step) {
  std::vector<std::size_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (i + step) % n;
  return a;
}

}  // namespace detail

// Z/2 on the circle by reflection: 0-cells v_-1, v_1 (fixed); 1-cells e_+, e_-
// (swapped), both oriented from v_1 to v_-1.
inline EquivariantChainComplex circle_reflection() {
  IntMatrix d1(2, 2);
  d1(0, 0) = 1, d1(1, 0) = -1;
  d1(0, 1) = 1, d1(1, 1) = -1;
  EquivariantChainComplex x{FiniteGroup::cyclic(2), ChainComplex::from_boundaries({2, 2}, {d1}), {}, {}};
  x.action = {{SignedPermutation::identity(2), SignedPermutation::identity(2)},
              {SignedPermutation::identity(2), SignedPermutation{{1, 0}, {1, 1}}}};
  x.labels = {{"v-1", "v1"}, {"e+", "e-"}};
  return x;
}

// Z/n rotating an n-gon: d e_i = v_{i+1} - v_i, g v_i = v_{i+1}, g e_i = e_{i+1}.
inline EquivariantChainComplex circle_rotation(std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::BadParameter, "circle_rotation needs n >= 2, got " + std::to_string(n));
  const auto m = static_cast<std::size_t>(n);
  IntMatrix d1(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    d1((i + 1) % m, i) += 1;
    d1(i, i) -= 1;
  }
  EquivariantChainComplex x{FiniteGroup::cyclic(m), ChainComplex::from_boundaries({m, m}, {d1}), {}, {}};
  for (std::size_t g = 0; g < m; ++g) {
    SignedPermutation p{detail::cycle_shift(m, g), std::vector<int>(m, 1)};
    x.action.push_back({p, p});
  }
  std::vector<std::string> vs, es;
  for (std::size_t i = 0; i < m; ++i) {
    vs.push_back("v" + std::to_string(i));
    es.push_back("e" + std::to_string(i));
  }
  x.labels = {vs, es};
  return x;
}

// Z/2 on the 2-sphere by reflection in the equatorial plane: vertex v,
// equator loop e (both fixed), hemispheres f_+, f_- (swapped), d f_± = e.
inline EquivariantChainComplex sphere_reflection() {
  IntMatrix d1(1, 1);
  IntMatrix d2(1, 2);
  d2(0, 0) = 1, d2(0, 1) = 1;
  EquivariantChainComplex x{FiniteGroup::cyclic(2), ChainComplex::from_boundaries({1, 1, 2}, {d1, d2}), {}, {}};
  const auto id1 = SignedPermutation::identity(1);
  x.action = {{id1, id1, SignedPermutation::identity(2)}, {id1, id1, SignedPermutation{{1, 0}, {1, 1}}}};
  x.labels = {{"v"}, {"e"}, {"f+", "f-"}};
  return x;
}

// CP^1 with complex conjugation is the reflected 2-sphere.
inline EquivariantChainComplex cp1_conjugation() { return sphere_reflection(); }

enum class CrossAction { antipodal, reflection };

// Boundary of the cross-polytope in R^{n+1}: vertices 2i = +e_i, 2i+1 = -e_i.
// antipodal: every vertex to its negative (free); reflection: e_0 -> -e_0.
inline SimplicialGComplex cross_polytope_simplicial(std::int64_t n, CrossAction action) {
  if (n < 0 || n > 6) throw Error(ErrorCode::BadParameter, "cross_polytope_sphere needs 0 <= n <= 6, got " + std::to_string(n));
  const auto coords = static_cast<std::size_t>(n + 1);
  std::vector<Simplex> facets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << coords); ++mask) {
    Simplex f;
    for (std::size_t i = 0; i < coords; ++i) f.push_back(2 * i + ((mask >> i) & 1));
    facets.push_back(f);
  }
  std::vector<std::size_t> flip(2 * coords);
  for (std::size_t v = 0; v < flip.size(); ++v) flip[v] = v;
  if (action == CrossAction::antipodal) {
    for (std::size_t v = 0; v < flip.size(); ++v) flip[v] = v ^ 1;
  } else {
    flip[0] = 1, flip[1] = 0;
  }
  std::vector<std::vector<std::size_t>> act{std::vector<std::size_t>(2 * coords), flip};
  for (std::size_t v = 0; v < 2 * coords; ++v) act[0][v] = v;
  return SimplicialGComplex(2 * coords, facets, FiniteGroup::cyclic(2), act);
}

inline EquivariantChainComplex cross_polytope_sphere(std::int64_t n, CrossAction action) {
  return to_chain_complex(cross_polytope_simplicial(n, action));
}

// Polygon with m vertices rotated by `step` under the generator of Z/p.
inline SimplicialGComplex polygon(std::size_t m, std::size_t p, std::size_t step) {
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < m; ++i) facets.push_back({i, (i + 1) % m});
  std::vector<std::vector<std::size_t>> act;
  for (std::size_t g = 0; g < p; ++g) act.push_back(detail::cycle_shift(m, (g * step) % m));
  return SimplicialGComplex(m, facets, FiniteGroup::cyclic(p), act);
}

// S^3 = C ⋆ C with the diagonal free rotation; the quotient is L(p,1).
// For p = 2 the polygon is a square rotated by two steps.
inline SimplicialGComplex lens_sphere_simplicial(std::int64_t p) {
  detail::require_prime(p, "lens_sphere");
  const auto pu = static_cast<std::size_t>(p);
  const auto c = pu == 2 ? polygon(4, 2, 2) : polygon(pu, pu, 1);
  return join(c, c);
}

inline EquivariantChainComplex lens_sphere(std::int64_t p) { return to_chain_complex(lens_sphere_simplicial(p)); }

inline EquivariantChainComplex torus_diagonal(std::int64_t p) {
  detail::require_prime(p, "torus_diagonal");
  return tensor_product(circle_rotation(p), circle_rotation(p));
}

// One point with the trivial Z/p action.
inline EquivariantChainComplex point(std::int64_t p) {
  detail::require_prime(p, "point");
  auto x = EquivariantChainComplex::with_trivial_action(FiniteGroup::cyclic(static_cast<std::size_t>(p)),
                                                        ChainComplex::from_boundaries({1}, {}));
  x.labels = {{"pt"}};
  return x;
}

// Catalog entry: name, parameter synopsis, default parameters.
struct CatalogEntry {
  std::string name;
  std::string parameters;
  std::vector<std::string> defaults;
  std::string description;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"circle_reflection", "", {}, "Z/2 reflecting S^1; two fixed vertices, two swapped edges"},
      {"circle_rotation", "N", {"3"}, "Z/N rotating an N-gon; free"},
      {"sphere_reflection", "", {}, "Z/2 reflecting S^2 across the equator; fixed set S^1"},
      {"cp1_conjugation", "", {}, "CP^1 with complex conjugation (same cells as sphere_reflection)"},
      {"cross_polytope_sphere", "N antipodal|reflection", {"2", "antipodal"}, "boundary of the (N+1)-cross-polytope, simplicial"},
      {"lens_sphere", "P", {"3"}, "S^3 as polygon join polygon with free diagonal Z/P; quotient L(P,1)"},
      {"torus_diagonal", "P", {"3"}, "S^1 x S^1 with the diagonal Z/P rotation"},
      {"point", "P", {"2"}, "a point with trivial Z/P action"},
      {"cone_of", "NAME [PARAMS]", {"circle_rotation", "3"}, "cone on another builtin with a fixed apex"},
  };
  return entries;
}

inline CrossAction parse_cross_action(const std::string& s) {
  if (s == "antipodal") return CrossAction::antipodal;
  if (s == "reflection" || s == "coordinate-reflection") return CrossAction::reflection;
  throw Error(ErrorCode::BadParameter, "cross_polytope_sphere action must be antipodal or reflection, got '" + s + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// Builtin by name; missing parameters take catalog defaults.
inline EquivariantChainComplex builtin(const std::string& name, const std::vector<std::string>& params = {}) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog())
    if (e.name == name) entry = &e;
  if (!entry) throw Error(ErrorCode::UnknownName, "no builtin space named '" + name + "'");
  if (name == "cone_of") {
    if (params.empty()) return cone(builtin(entry->defaults[0], {entry->defaults[1]}));
    return cone(builtin(params[0], std::vector<std::string>(params.begin() + 1, params.end())));
  }
  std::vector<std::string> args = params;
  if (args.size() > entry->defaults.size())
    throw Error(ErrorCode::BadParameter, name + " takes at most " + std::to_string(entry->defaults.size()) + " parameter(s)");
  for (std::size_t i = args.size(); i < entry->defaults.size(); ++i) args.push_back(entry->defaults[i]);
  if (name == "circle_reflection") return circle_reflection();
  if (name == "sphere_reflection") return sphere_reflection();
  if (name == "cp1_conjugation") return cp1_conjugation();
  if (name == "circle_rotation") return circle_rotation(detail::parse_int(args[0], "N"));
  if (name == "cross_polytope_sphere") return cross_polytope_sphere(detail::parse_int(args[0], "N"), parse_cross_action(args[1]));
  if (name == "lens_sphere") return lens_sphere(detail::parse_int(args[0], "P"));
  if (name == "torus_diagonal") return torus_diagonal(detail::parse_int(args[0], "P"));
  return point(detail::parse_int(args[0], "P"));
}

// "name:param:param", e.g. "cone_of:circle_rotation:3".
inline EquivariantChainComplex parse_builtin(const std::string& spec_string) {
  auto parts = split(spec_string, ':');
  if (parts.empty() || parts[0].empty()) throw Error(ErrorCode::UnknownName, "empty builtin name");
  return builtin(parts[0], std::vector<std::string>(parts.begin() + 1, parts.end()));
}

// The simplicial model of a builtin, when it has one.
inline std::optional<SimplicialGComplex> parse_builtin_simplicial(const std::string& spec_string) {
  auto parts = split(spec_string, ':');
  if (parts.empty()) return std::nullopt;
  const std::string& name = parts[0];
  auto arg = [&](std::size_t i, const std::string& dflt) { return parts.size() > i ? parts[i] : dflt; };
  if (name == "circle_rotation") {
    const auto n = detail::parse_int(arg(1, "3"), "N");
    if (n < 3) return std::nullopt;
    return polygon(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 1);
  }
  if (name == "cross_polytope_sphere")
    return cross_polytope_simplicial(detail::parse_int(arg(1, "2"), "N"), parse_cross_action(arg(2, "antipodal")));
  if (name == "lens_sphere") return lens_sphere_simplicial(detail::parse_int(arg(1, "3"), "P"));
  if (name == "cone_of" && parts.size() > 1) {
    auto base = parse_builtin_simplicial(spec_string.substr(name.size() + 1));
    if (base) return cone(*base);
  }
  return std::nullopt;
}

// Builtin instances used by corpus-wide checks, sorted by name.
inline std::vector<std::string> builtin_corpus() {
  return {"circle_reflection",
          "circle_rotation:2",
          "circle_rotation:3",
          "circle_rotation:5",
          "cone_of:circle_reflection",
          "cone_of:circle_rotation:3",
          "cone_of:cross_polytope_sphere:2:antipodal",
          "cp1_conjugation",
          "cross_polytope_sphere:1:antipodal",
          "cross_polytope_sphere:2:antipodal",
          "cross_polytope_sphere:2:reflection",
          "cross_polytope_sphere:3:antipodal",
          "lens_sphere:2",
          "lens_sphere:3",
          "lens_sphere:5",
          "point:2",
          "point:3",
          "sphere_reflection",
          "torus_diagonal:2",
          "torus_diagonal:3"};
}

// ---------------------------------------------------------------------------
// Random admissible complexes for property tests.

struct FuzzOptions {
  std::size_t budget = 48;        // rough cap on the total cell count
  std::int64_t prime = 0;         // 0: pick from {2, 3, 5}
};

namespace detail {

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Random simplicial Z/p complex: vertex orbits (free or fixed) and orbits of
// random edges and triangles.
inline SimplicialGComplex random_simplicial(std::mt19937_64& rng, std::size_t p) {
  std::vector<std::vector<std::size_t>> act(p);
  std::size_t n = 0;
  const std::size_t orbits = 1 + pick(rng, 3);
  for (std::size_t o = 0; o < orbits; ++o) {
    const bool free = p > 1 && pick(rng, 3) != 0;
    const std::size_t size = free ? p : 1;
    for (std::size_t g = 0; g < p; ++g)
      for (std::size_t i = 0; i < size; ++i) act[g].push_back(n + (i + g) % size);
    n += size;
  }
  std::vector<Simplex> facets;
  const std::size_t extra = pick(rng, 4);
  for (std::size_t e = 0; e < extra && n >= 2; ++e) {
    const std::size_t dim = (n >= 3 && pick(rng, 3) == 0) ? 2 : 1;
    Simplex s;
    while (s.size() < dim + 1) {
      const std::size_t v = pick(rng, n);
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    for (std::size_t g = 0; g < p; ++g) {
      Simplex t;
      for (auto v : s) t.push_back(act[g][v]);
      facets.push_back(t);
    }
  }
  return SimplicialGComplex(n, facets, FiniteGroup::cyclic(p), act);
}

inline std::size_t cell_total(const SimplicialGComplex& k) {
  std::size_t n = 0;
  for (int d = 0; d <= k.dimension(); ++d) n += k.count(d);
  return n;
}

}  // namespace detail

// A valid complex with a Z/p action, built from random simplicial pieces by
// join, cone and subdivision, then chain-level cone, disjoint union with a
// builtin, or tensor with a builtin. Deterministic in the seed.
inline EquivariantChainComplex fuzz(std::uint64_t seed, const FuzzOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  static const std::int64_t primes[] = {2, 3, 5};
  const std::int64_t p = opt.prime ? detail::require_prime(opt.prime, "fuzz") : primes[detail::pick(rng, 3)];
  const auto pu = static_cast<std::size_t>(p);

  // Oversized draws are discarded; the retry sequence is fixed by the seed.
  for (;;) {
    SimplicialGComplex k = detail::random_simplicial(rng, pu);
    const std::size_t steps = detail::pick(rng, 3);
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t op = detail::pick(rng, 3);
      SimplicialGComplex next;
      if (op == 0) next = join(k, detail::random_simplicial(rng, pu));
      else if (op == 1) next = cone(k);
      else next = barycentric_subdivision(k);
      if (detail::cell_total(next) <= opt.budget) k = std::move(next);
    }
    if (!is_admissible(k)) k = barycentric_subdivision(k);
    if (detail::cell_total(k) > opt.budget) continue;
    EquivariantChainComplex x = to_chain_complex(k);

    const std::size_t post = detail::pick(rng, 4);
    EquivariantChainComplex y;
    bool changed = true;
    switch (post) {
      case 0: y = cone(x); break;
      case 1: y = disjoint_union(x, p == 2 && detail::pick(rng, 2) ? circle_reflection() : circle_rotation(p)); break;
      case 2: y = tensor_product(x, p == 2 && detail::pick(rng, 2) ? circle_reflection() : circle_rotation(p)); break;
      default: changed = false;
    }
    if (changed && y.chains.total_cells() <= opt.budget * 2) x = std::move(y);
    x.labels.clear();
    return x;
  }
}

}  // namespace equichain::spaces
