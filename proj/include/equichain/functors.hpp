#pragma once

#include "equichain/abelian.hpp"
#include "equichain/complex.hpp"
#include "equichain/error.hpp"

#include <optional>
#include <string>
#include <vector>

namespace equichain {

struct Orbit {
  std::size_t representative = 0;     // smallest cell index in the orbit
  std::size_t stabilizer_order = 0;
  std::vector<std::size_t> cosets;    // E_sigma: first element reaching each orbit cell, in element order
  std::vector<std::size_t> cells;     // orbit cells in discovery order
  std::vector<int> signs;             // coefficient of each cell in the orbit sum
  bool positive = true;               // stabilizer acts on the representative with sign +1
};

// Orbits of the cells in each degree, plus the orbit and sign of every cell.
struct OrbitBasis {
  std::vector<std::vector<Orbit>> orbits;       // [k][orbit]
  std::vector<std::vector<std::size_t>> orbit_of;  // [k][cell]
  std::vector<std::vector<int>> sign_of;        // [k][cell]: cell = sign * (g . representative)

  std::size_t count(int k) const {
    return (k < 0 || static_cast<std::size_t>(k) >= orbits.size()) ? 0 : orbits[static_cast<std::size_t>(k)].size();
  }
};

inline OrbitBasis orbit_basis(const EquivariantChainComplex& x) {
  OrbitBasis b;
  const std::size_t n = x.group.order();
  for (int k = 0; k <= x.top(); ++k) {
    const std::size_t m = x.size(k);
    std::vector<Orbit> orbits;
    std::vector<std::size_t> orbit_of(m, SIZE_MAX);
    std::vector<int> sign_of(m, 0);
    for (std::size_t c = 0; c < m; ++c) {
      if (orbit_of[c] != SIZE_MAX) continue;
      Orbit o;
      o.representative = c;
      const std::size_t id = orbits.size();
      for (std::size_t g = 0; g < n; ++g) {
        const std::size_t img = x.act(g, k).image[c];
        const int sg = x.act(g, k).sign[c];
        if (orbit_of[img] == SIZE_MAX) {
          orbit_of[img] = id;
          sign_of[img] = sg;
          o.cosets.push_back(g);
          o.cells.push_back(img);
          o.signs.push_back(sg);
        } else if (sign_of[img] != sg) {
          o.positive = false;
        }
      }
      o.stabilizer_order = n / o.cells.size();
      orbits.push_back(std::move(o));
    }
    b.orbits.push_back(std::move(orbits));
    b.orbit_of.push_back(std::move(orbit_of));
    b.sign_of.push_back(std::move(sign_of));
  }
  return b;
}

// C(X)^G in the orbit-sum basis.
struct InvariantComplex {
  ChainComplex chains;
  std::vector<IntMatrix> inclusion;         // [k]: cells x basis, columns are invariant chains
  std::vector<std::vector<std::size_t>> basis_orbits;  // [k]: orbit index of each basis element
  OrbitBasis orbits;

  ChainMap inclusion_map(const ChainComplex& ambient) const { return ChainMap{chains, ambient, inclusion}; }
};

inline IntMatrix orbit_sum_matrix(const EquivariantChainComplex& x, const OrbitBasis& ob, int k,
                                  std::vector<std::size_t>* chosen = nullptr) {
  const auto& orbits = ob.orbits[static_cast<std::size_t>(k)];
  std::vector<std::vector<Int>> cols;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    if (!orbits[o].positive) continue;
    std::vector<Int> col(x.size(k), Int(0));
    for (std::size_t i = 0; i < orbits[o].cells.size(); ++i) col[orbits[o].cells[i]] = orbits[o].signs[i];
    cols.push_back(std::move(col));
    if (chosen) chosen->push_back(o);
  }
  return IntMatrix::from_columns(x.size(k), cols);
}

// Orbit sums over orbits whose stabilizer fixes the representative with
// sign +1; boundary is the restriction of d.
inline InvariantComplex invariant_complex(const EquivariantChainComplex& x) {
  InvariantComplex inv;
  inv.orbits = orbit_basis(x);
  std::vector<std::size_t> counts;
  std::vector<IntMatrix> bd;
  for (int k = 0; k <= x.top(); ++k) {
    std::vector<std::size_t> chosen;
    inv.inclusion.push_back(orbit_sum_matrix(x, inv.orbits, k, &chosen));
    counts.push_back(chosen.size());
    inv.basis_orbits.push_back(std::move(chosen));
  }
  for (int k = 0; k <= x.top(); ++k) {
    const auto& e = inv.inclusion[static_cast<std::size_t>(k)];
    IntMatrix b(k > 0 ? counts[static_cast<std::size_t>(k - 1)] : 0, counts[static_cast<std::size_t>(k)]);
    if (k > 0) {
      const IntMatrix image = x.chains.boundary(k) * e;
      const auto& below = inv.basis_orbits[static_cast<std::size_t>(k - 1)];
      const auto& orbits_below = inv.orbits.orbits[static_cast<std::size_t>(k - 1)];
      for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t i = 0; i < below.size(); ++i) b(i, j) = image(orbits_below[below[i]].representative, j);
      if (!(inv.inclusion[static_cast<std::size_t>(k - 1)] * b == image))
        throw Error(ErrorCode::InvalidComplex, "boundary of an invariant chain is not invariant in degree " + std::to_string(k));
    }
    bd.push_back(std::move(b));
  }
  inv.chains = ChainComplex(counts, bd);
  return inv;
}

// C(X; Z/p)^G computed as the simultaneous kernel of (g - 1) over the group
// generators; entries are residues mod p.
struct ModularInvariantComplex {
  std::int64_t modulus = 0;
  ChainComplex chains;
  std::vector<IntMatrix> inclusion;  // [k]: cells x basis, mod p
};

inline ModularInvariantComplex invariant_complex_mod(const EquivariantChainComplex& x, std::int64_t p) {
  detail::require_modulus(p);
  if (p == 0) throw Error(ErrorCode::CompositeModulus, "invariant_complex_mod needs a prime modulus");
  ModularInvariantComplex inv;
  inv.modulus = p;
  const auto gens = x.group.generators();
  std::vector<std::size_t> counts;
  for (int k = 0; k <= x.top(); ++k) {
    const std::size_t m = x.size(k);
    IntMatrix stacked(m * gens.size(), m);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const IntMatrix pg = x.action_matrix(gens[gi], k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) stacked(gi * m + i, j) = pg(i, j) - (i == j ? 1 : 0);
    }
    IntMatrix basis = kernel_basis(stacked, p);
    counts.push_back(basis.cols());
    inv.inclusion.push_back(std::move(basis));
  }
  std::vector<IntMatrix> bd;
  for (int k = 0; k <= x.top(); ++k) {
    const auto& e = inv.inclusion[static_cast<std::size_t>(k)];
    IntMatrix b(k > 0 ? counts[static_cast<std::size_t>(k - 1)] : 0, counts[static_cast<std::size_t>(k)]);
    if (k > 0) {
      const IntMatrix image = x.chains.boundary(k) * e;
      const auto& below = inv.inclusion[static_cast<std::size_t>(k - 1)];
      for (std::size_t j = 0; j < image.cols(); ++j) {
        auto c = solve(below, image.column(j), p);
        if (!c) throw Error(ErrorCode::InvalidComplex, "boundary of an invariant chain is not invariant mod p");
        for (std::size_t i = 0; i < c->size(); ++i) b(i, j) = (*c)[i];
      }
    }
    bd.push_back(std::move(b));
  }
  inv.chains = ChainComplex(counts, bd);
  return inv;
}

// C(X)_G: one generator per orbit; the projection sends a cell to
// sign * (its orbit generator).
struct CoinvariantComplex {
  ChainComplex chains;
  std::vector<IntMatrix> projection;  // [k]: orbits x cells
  OrbitBasis orbits;

  ChainMap projection_map(const ChainComplex& ambient) const { return ChainMap{ambient, chains, projection}; }
};

inline CoinvariantComplex coinvariant_complex(const EquivariantChainComplex& x) {
  CoinvariantComplex co;
  co.orbits = orbit_basis(x);
  std::vector<std::size_t> counts;
  for (int k = 0; k <= x.top(); ++k) {
    const auto& orbits = co.orbits.orbits[static_cast<std::size_t>(k)];
    for (std::size_t o = 0; o < orbits.size(); ++o)
      if (!orbits[o].positive)
        throw Error(ErrorCode::SignedOrbit, "orbit of cell " + std::to_string(orbits[o].representative) + " in dim " +
                                                std::to_string(k) + " carries a sign -1 stabilizer action");
    IntMatrix pr(orbits.size(), x.size(k));
    for (std::size_t c = 0; c < x.size(k); ++c)
      pr(co.orbits.orbit_of[static_cast<std::size_t>(k)][c], c) = co.orbits.sign_of[static_cast<std::size_t>(k)][c];
    counts.push_back(orbits.size());
    co.projection.push_back(std::move(pr));
  }
  std::vector<IntMatrix> bd;
  for (int k = 0; k <= x.top(); ++k) {
    IntMatrix b(k > 0 ? counts[static_cast<std::size_t>(k - 1)] : 0, counts[static_cast<std::size_t>(k)]);
    if (k > 0) {
      const IntMatrix db = x.chains.boundary(k);
      const auto& orbits = co.orbits.orbits[static_cast<std::size_t>(k)];
      for (std::size_t o = 0; o < orbits.size(); ++o) {
        const IntVector image = co.projection[static_cast<std::size_t>(k - 1)] * db.column(orbits[o].representative);
        for (std::size_t i = 0; i < image.size(); ++i) b(i, o) = image[i];
      }
    }
    bd.push_back(std::move(b));
  }
  co.chains = ChainComplex(counts, bd);
  return co;
}

// The subcomplex on cells fixed by every element with sign +1.
struct FixedComplex {
  ChainComplex chains;
  std::vector<std::vector<std::size_t>> cells;  // [k]: ambient cell index of each fixed cell

  bool empty() const { return chains.is_empty(); }
};

inline FixedComplex fixed_complex(const EquivariantChainComplex& x) {
  FixedComplex f;
  std::vector<std::size_t> counts;
  for (int k = 0; k <= x.top(); ++k) {
    f.cells.push_back(x.fixed_cells(k));
    counts.push_back(f.cells.back().size());
  }
  std::vector<IntMatrix> bd;
  for (int k = 0; k <= x.top(); ++k) {
    const auto& cols = f.cells[static_cast<std::size_t>(k)];
    if (k == 0) {
      bd.emplace_back(0, cols.size());
      continue;
    }
    bd.push_back(x.chains.boundary(k).select_columns(cols).select_rows(f.cells[static_cast<std::size_t>(k - 1)]));
  }
  f.chains = ChainComplex(counts, bd);
  return f;
}

// N: C(X)_G -> C(X)^G, orbit generator to the sum over the whole group,
// expressed in the orbit-sum basis.
inline ChainMap norm_map(const EquivariantChainComplex& x, const CoinvariantComplex& co, const InvariantComplex& inv) {
  ChainMap n{co.chains, inv.chains, {}};
  for (int k = 0; k <= x.top(); ++k) {
    const auto& orbits = co.orbits.orbits[static_cast<std::size_t>(k)];
    const auto& basis = inv.basis_orbits[static_cast<std::size_t>(k)];
    const auto& inv_orbits = inv.orbits.orbits[static_cast<std::size_t>(k)];
    IntMatrix m(basis.size(), orbits.size());
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      IntVector total(x.size(k), Int(0));
      for (std::size_t g = 0; g < x.group.order(); ++g) {
        const auto& a = x.act(g, k);
        total[a.image[orbits[o].representative]] += a.sign[orbits[o].representative];
      }
      for (std::size_t i = 0; i < basis.size(); ++i) m(i, o) = total[inv_orbits[basis[i]].representative];
      if (!(inv.inclusion[static_cast<std::size_t>(k)] * m.column(o) == total))
        throw Error(ErrorCode::InvalidComplex, "norm of an orbit is not a combination of orbit sums");
    }
    n.components.push_back(std::move(m));
  }
  return n;
}

inline ChainMap norm_map(const EquivariantChainComplex& x) {
  return norm_map(x, coinvariant_complex(x), invariant_complex(x));
}

// D(X) = C(X)^G / N(C(X)_G): a complex of finite groups. Generators are the
// invariant basis; relations are the norm images.
struct QuotientComplex {
  std::vector<Presentation> groups;     // [k]
  std::vector<IntMatrix> boundary;      // [k]: D_k -> D_{k-1} on generators
  std::vector<AbelianGroup> group_values;

  GroupHom boundary_hom(int k) const {
    const auto ku = static_cast<std::size_t>(k);
    return GroupHom{groups[ku], groups[ku - 1], boundary[ku]};
  }
};

inline QuotientComplex quotient_D(const EquivariantChainComplex& x) {
  const auto inv = invariant_complex(x);
  const auto co = coinvariant_complex(x);
  const auto n = norm_map(x, co, inv);
  QuotientComplex d;
  for (int k = 0; k <= x.top(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    d.groups.push_back(Presentation{inv.chains.cells[ku], n.components[ku]});
    d.group_values.push_back(group_of(d.groups.back()));
    d.boundary.push_back(inv.chains.boundaries[ku]);
  }
  return d;
}

// Comparison D(X) -> C(X^G; Z/p) for |G| = p prime: fixed-cell generators go
// to the corresponding fixed cell, free orbit sums to zero.
struct DComparison {
  std::int64_t p = 0;
  std::vector<GroupHom> degreewise;     // [k]
  std::vector<bool> isomorphism;        // [k]
  std::vector<bool> commutes;           // [k]: with the boundaries into degree k-1
  bool chain_isomorphism() const {
    for (bool b : isomorphism)
      if (!b) return false;
    for (bool b : commutes)
      if (!b) return false;
    return true;
  }
};

inline DComparison compare_with_fixed(const EquivariantChainComplex& x, const QuotientComplex& d) {
  const auto p = static_cast<std::int64_t>(x.group.order());
  if (!is_prime(p)) throw Error(ErrorCode::NotPrimeOrder, "group order " + std::to_string(p) + " is not prime");
  const auto inv = invariant_complex(x);
  const auto fixed = fixed_complex(x);
  DComparison c;
  c.p = p;
  std::vector<IntMatrix> maps;
  for (int k = 0; k <= x.top(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const auto& fcells = fixed.cells[ku];
    const auto& basis = inv.basis_orbits[ku];
    IntMatrix m(fcells.size(), basis.size());
    for (std::size_t i = 0; i < fcells.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (inv.orbits.orbits[ku][basis[j]].representative == fcells[i] && inv.orbits.orbits[ku][basis[j]].cells.size() == 1)
          m(i, j) = 1;
    Presentation target{fcells.size(), Int(p) * IntMatrix::identity(fcells.size())};
    GroupHom h{d.groups[ku], target, m};
    bool iso = false;
    if (is_well_defined(h)) iso = hom_on_presentations(h).isomorphism();
    c.degreewise.push_back(h);
    c.isomorphism.push_back(iso);
    maps.push_back(std::move(m));
  }
  for (int k = 0; k <= x.top(); ++k) {
    if (k == 0) {
      c.commutes.push_back(true);
      continue;
    }
    const auto ku = static_cast<std::size_t>(k);
    const IntMatrix lhs = maps[ku - 1] * d.boundary[ku];
    const IntMatrix rhs = fixed.chains.boundary(k) * maps[ku];
    c.commutes.push_back(reduce_mod(lhs - rhs, p).is_zero());
  }
  return c;
}

}  // namespace equichain
