#pragma once

#include "equichain/abelian.hpp"
#include "equichain/complex.hpp"
#include "equichain/functors.hpp"

#include <string>
#include <vector>

namespace equichain {

// Integers, rationals, or Z/p.
struct Coefficients {
  enum class Kind { integers, rationals, prime };
  Kind kind = Kind::integers;
  std::int64_t p = 0;

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {Kind::rationals, 0}; }
  static Coefficients mod(std::int64_t p) {
    detail::require_modulus(p);
    if (p == 0) throw Error(ErrorCode::CompositeModulus, "modulus 0 is not a field");
    return {Kind::prime, p};
  }

  // Modulus used for the underlying lattice computations.
  std::int64_t modulus() const { return kind == Kind::prime ? p : 0; }
  bool is_field() const { return kind != Kind::integers; }

  std::string to_string() const {
    switch (kind) {
      case Kind::integers: return "Z";
      case Kind::rationals: return "Q";
      case Kind::prime: return "Z/" + std::to_string(p);
    }
    return "?";
  }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

// Homology in degrees 0..top of a complex, one subquotient per degree.
// Over Q the group is Z^rank and the data are those of the free part of the
// integral answer.
struct GradedGroup {
  Coefficients coefficients;
  std::vector<Subquotient> degrees;

  int top() const { return static_cast<int>(degrees.size()) - 1; }

  AbelianGroup group(int k) const {
    if (k < 0 || k > top()) return {};
    return degrees[static_cast<std::size_t>(k)].group;
  }

  std::vector<AbelianGroup> groups() const {
    std::vector<AbelianGroup> out;
    for (const auto& d : degrees) out.push_back(d.group);
    return out;
  }

  // Field dimension (or rank over Z) in degree k.
  std::size_t rank(int k) const {
    const auto g = group(k);
    return coefficients.kind == Coefficients::Kind::prime ? g.dimension() : g.free_rank;
  }

  Presentation presentation(int k) const {
    if (k < 0 || k > top()) return Presentation::free(0);
    return degrees[static_cast<std::size_t>(k)].presentation();
  }
};

inline GradedGroup homology(const ChainComplex& c, const Coefficients& coeff = Coefficients::integers()) {
  GradedGroup h;
  h.coefficients = coeff;
  const std::int64_t m = coeff.modulus();
  for (int k = 0; k <= c.top(); ++k) {
    const IntMatrix d = m ? reduce_mod(c.boundary(k), m) : c.boundary(k);
    const IntMatrix cycles = d.rows() == 0 ? IntMatrix::identity(c.size(k)) : kernel_basis(d, m);
    const IntMatrix up = m ? reduce_mod(c.boundary(k + 1), m) : c.boundary(k + 1);
    Subquotient q = subquotient(cycles, up, m);
    if (coeff.kind == Coefficients::Kind::rationals) q = q.free_part();
    h.degrees.push_back(std::move(q));
  }
  return h;
}

// The map induced on homology by a chain map, in generator coordinates.
inline std::vector<GroupHom> induced_map(const ChainMap& f, const GradedGroup& source, const GradedGroup& target) {
  std::vector<GroupHom> out;
  const std::int64_t m = source.coefficients.modulus();
  for (int k = 0; k <= source.top(); ++k) {
    const auto& s = source.degrees[static_cast<std::size_t>(k)];
    IntMatrix mat(k <= target.top() ? target.degrees[static_cast<std::size_t>(k)].generator_count() : 0, s.generator_count());
    if (k <= target.top()) {
      const auto& t = target.degrees[static_cast<std::size_t>(k)];
      const IntMatrix fk = f.component(k);
      for (std::size_t j = 0; j < s.generator_count(); ++j) {
        IntVector image = fk * s.representatives.column(j);
        if (m) image = reduce_mod(image, m);
        auto coords = t.project(image);
        if (!coords)
          throw Error(ErrorCode::IllDefined, "image of a cycle is not a cycle in degree " + std::to_string(k));
        for (std::size_t i = 0; i < coords->size(); ++i) mat(i, j) = (*coords)[i];
      }
    }
    out.push_back(GroupHom{source.presentation(k), target.presentation(k), std::move(mat)});
  }
  return out;
}

inline std::vector<GroupHom> induced_map(const ChainMap& f, const Coefficients& coeff = Coefficients::integers()) {
  return induced_map(f, homology(f.source, coeff), homology(f.target, coeff));
}

// The group action on H(X; coeff): one matrix per generator of G per degree.
struct HomologyAction {
  GradedGroup homology;
  std::vector<std::size_t> generators;
  std::vector<std::vector<IntMatrix>> matrices;  // [degree][generator index]
};

inline HomologyAction homology_action(const EquivariantChainComplex& x, const Coefficients& coeff = Coefficients::integers()) {
  HomologyAction a;
  a.homology = homology(x.chains, coeff);
  a.generators = x.group.generators();
  a.matrices.resize(a.homology.degrees.size());
  for (std::size_t g : a.generators) {
    const auto maps = induced_map(x.action_map(g), a.homology, a.homology);
    for (std::size_t k = 0; k < maps.size(); ++k) a.matrices[k].push_back(maps[k].matrix);
  }
  return a;
}

// H(X; coeff)^G: the simultaneous kernel of (g - 1) over the generators, as a
// subquotient of the chain group.
inline GradedGroup invariant_homology(const EquivariantChainComplex& x, const Coefficients& coeff = Coefficients::integers()) {
  const bool rational = coeff.kind == Coefficients::Kind::rationals;
  const Coefficients work = rational ? Coefficients::integers() : coeff;
  const HomologyAction a = homology_action(x, work);
  const std::int64_t m = work.modulus();
  GradedGroup out;
  out.coefficients = coeff;
  for (int k = 0; k <= a.homology.top(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const auto& h = a.homology.degrees[ku];
    const Presentation ph = h.presentation();
    const std::size_t n = h.generator_count();
    IntMatrix stacked(n * a.generators.size(), n);
    IntMatrix rel(n * a.generators.size(), ph.relations.cols() * a.generators.size());
    for (std::size_t gi = 0; gi < a.generators.size(); ++gi)
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) stacked(gi * n + i, j) = a.matrices[ku][gi](i, j) - (i == j ? 1 : 0);
        for (std::size_t j = 0; j < ph.relations.cols(); ++j) rel(gi * n + i, gi * ph.relations.cols() + j) = ph.relations(i, j);
      }
    const GroupHom diff{ph, Presentation{stacked.rows(), rel}, stacked};
    IntMatrix fixed = h.representatives * detail::kernel_lattice(diff);
    const IntMatrix bd = m ? reduce_mod(x.chains.boundary(k + 1), m) : x.chains.boundary(k + 1);
    if (m) fixed = reduce_mod(fixed, m);
    Subquotient q = subquotient(hstack(fixed, bd), bd, m);
    if (rational) q = q.free_part();
    out.degrees.push_back(std::move(q));
  }
  return out;
}

// i_*: H(G, X; coeff) -> H(X; coeff) induced by the inclusion of invariant chains.
struct IStar {
  std::vector<GroupHom> maps;
  std::vector<HomAnalysis> analysis;
  std::int64_t group_order = 0;

  // Every kernel is finite with exponent dividing |G|.
  bool kernel_annihilated() const {
    for (const auto& a : analysis) {
      if (!a.kernel_exponent) return false;
      if (!(Int(group_order) % *a.kernel_exponent).is_zero()) return false;
    }
    return true;
  }
};

inline IStar i_star(const EquivariantChainComplex& x, const Coefficients& coeff = Coefficients::integers()) {
  const auto inv = invariant_complex(x);
  IStar r;
  r.group_order = static_cast<std::int64_t>(x.group.order());
  const Coefficients work = coeff.kind == Coefficients::Kind::rationals ? Coefficients::integers() : coeff;
  r.maps = induced_map(inv.inclusion_map(x.chains), homology(inv.chains, work), homology(x.chains, work));
  for (const auto& f : r.maps) r.analysis.push_back(hom_on_presentations(f));
  return r;
}

}  // namespace equichain
