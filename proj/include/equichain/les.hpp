#pragma once

#include "equichain/abelian.hpp"
#include "equichain/functors.hpp"
#include "equichain/homology.hpp"
#include "equichain/report.hpp"

#include <string>
#include <vector>

namespace equichain {

enum class LesColumn { quotient, invariant, fixed };

struct LesTerm {
  LesColumn column = LesColumn::quotient;
  int degree = 0;
  std::string label;
  AbelianGroup group;
  Presentation presentation;
};

// ... -> H_n(X/G) -> H_n(G,X) -> H_n(X^G; Z/p) -> H_{n-1}(X/G) -> ... -> H_0(X^G; Z/p)
// starting at H_{top+1}(X^G; Z/p); maps[i] goes from terms[i] to terms[i+1].
struct LongExactSequence {
  std::int64_t p = 0;
  int top = 0;
  std::vector<LesTerm> terms;
  std::vector<GroupHom> maps;

  // Index of a term, or -1.
  int index_of(LesColumn c, int degree) const {
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (terms[i].column == c && terms[i].degree == degree) return static_cast<int>(i);
    return -1;
  }
  // The map leaving the given term.
  const GroupHom& map_from(LesColumn c, int degree) const { return maps.at(static_cast<std::size_t>(index_of(c, degree))); }
};

struct LesOptions {
  int top = -1;            // -1: the dimension of X
  bool perturbed = false;  // alternative preimage choices for the connecting map
};

namespace detail {

inline ChainComplex padded(const ChainComplex& c, int top) {
  ChainComplex out = c;
  while (out.top() < top) {
    out.boundaries.emplace_back(out.cells.empty() ? 0 : out.cells.back(), 0);
    out.cells.push_back(0);
  }
  return out;
}

inline std::string les_label(LesColumn c, int n, std::int64_t p) {
  const std::string d = std::to_string(n);
  switch (c) {
    case LesColumn::quotient: return "H_" + d + "(X/G)";
    case LesColumn::invariant: return "H_" + d + "(G,X)";
    case LesColumn::fixed: return "H_" + d + "(X^G;Z/" + std::to_string(p) + ")";
  }
  return {};
}

}  // namespace detail

inline LongExactSequence build_les(const EquivariantChainComplex& x, const LesOptions& opt = {}) {
  const auto p = static_cast<std::int64_t>(x.group.order());
  if (!is_prime(p)) throw Error(ErrorCode::NotPrimeOrder, "the long exact sequence needs a group of prime order, got " + std::to_string(p));
  const int top = opt.top < 0 ? x.top() : opt.top;
  const int span = std::max(top + 1, x.top());

  const auto inv = invariant_complex(x);
  const auto co = coinvariant_complex(x);
  const auto fixed = fixed_complex(x);
  const ChainMap norm = norm_map(x, co, inv);

  const ChainComplex cq = detail::padded(co.chains, span);
  const ChainComplex cg = detail::padded(inv.chains, span);
  const ChainComplex cf = detail::padded(fixed.chains, span);
  const GradedGroup hq = homology(cq);
  const GradedGroup hg = homology(cg);
  const GradedGroup hf = homology(cf, Coefficients::mod(p));

  // Projection of invariant chains onto fixed cells (free orbit sums vanish mod p).
  ChainMap proj{cg, cf, {}};
  for (int k = 0; k <= span; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    IntMatrix m(cf.size(k), cg.size(k));
    if (k <= x.top())
      for (std::size_t i = 0; i < fixed.cells[ku].size(); ++i)
        for (std::size_t j = 0; j < inv.basis_orbits[ku].size(); ++j) {
          const auto& o = inv.orbits.orbits[ku][inv.basis_orbits[ku][j]];
          if (o.cells.size() == 1 && o.representative == fixed.cells[ku][i]) m(i, j) = 1;
        }
    proj.components.push_back(std::move(m));
  }
  ChainMap nmap{cq, cg, norm.components};
  const auto alpha = induced_map(nmap, hq, hg);
  const auto beta = induced_map(proj, hg, hf);

  // Connecting map H_n(X^G; Z/p) -> H_{n-1}(X/G): lift, take the boundary,
  // divide by the norm.
  auto delta = [&](int n) {
    const auto& src = hf.degrees[static_cast<std::size_t>(n)];
    const Presentation dom = hf.presentation(n);
    const Presentation cod = n >= 1 ? hq.presentation(n - 1) : Presentation::free(0);
    IntMatrix mat(cod.generators, dom.generators);
    if (n >= 1) {
      const IntMatrix pn = proj.component(n);
      const IntMatrix dn = cg.boundary(n);
      const IntMatrix nm = nmap.component(n - 1);
      for (std::size_t j = 0; j < dom.generators; ++j) {
        IntVector z = src.representatives.column(j);
        if (opt.perturbed && cf.size(n + 1) > 0) {
          IntVector all(cf.size(n + 1), Int(1));
          const IntVector shift = cf.boundary(n + 1) * all;
          for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod_reduce(z[i] + shift[i], p);
        }
        IntVector lift(cg.size(n), Int(0));
        for (std::size_t r = 0; r < cg.size(n); ++r) {
          bool hit = false;
          for (std::size_t i = 0; i < pn.rows(); ++i)
            if (!pn(i, r).is_zero()) {
              lift[r] = z[i];
              hit = true;
            }
          if (opt.perturbed) lift[r] += hit ? Int(p) : Int(1);
        }
        const IntVector w = dn * lift;
        auto u = solve(nm, w);
        if (!u) throw Error(ErrorCode::IllDefined, "boundary of a lifted fixed cycle is not a norm in degree " + std::to_string(n - 1));
        auto coords = hq.degrees[static_cast<std::size_t>(n - 1)].project(*u);
        if (!coords) throw Error(ErrorCode::IllDefined, "connecting map produced a non-cycle in degree " + std::to_string(n - 1));
        for (std::size_t i = 0; i < coords->size(); ++i) mat(i, j) = (*coords)[i];
      }
    }
    return GroupHom{dom, cod, mat};
  };

  LongExactSequence les;
  les.p = p;
  les.top = top;
  auto term = [&](LesColumn c, int n, const GradedGroup& h) {
    les.terms.push_back({c, n, detail::les_label(c, n, p), h.group(n), h.presentation(n)});
  };
  term(LesColumn::fixed, top + 1, hf);
  for (int n = top; n >= 0; --n) {
    les.maps.push_back(delta(n + 1));
    term(LesColumn::quotient, n, hq);
    les.maps.push_back(alpha[static_cast<std::size_t>(n)]);
    term(LesColumn::invariant, n, hg);
    les.maps.push_back(beta[static_cast<std::size_t>(n)]);
    term(LesColumn::fixed, n, hf);
  }
  // Final map into the zero group.
  les.maps.push_back(GroupHom{les.terms.back().presentation, Presentation::free(0), IntMatrix(0, les.terms.back().presentation.generators)});
  return les;
}

// g ∘ f = 0 on presentations.
inline bool composite_is_zero(const GroupHom& f, const GroupHom& g) {
  const IntMatrix c = g.matrix * f.matrix;
  for (std::size_t j = 0; j < c.cols(); ++j)
    if (!solve(g.codomain.relations, c.column(j))) return false;
  return true;
}

// Exactness at every term except the first, which has no incoming map.
inline Report check_exact(const LongExactSequence& les) {
  Report r;
  r.title = "long exact sequence";
  for (const auto& t : les.terms) r.value(t.label, t.group.to_string());
  for (std::size_t i = 1; i < les.terms.size(); ++i) {
    const auto& f = les.maps[i - 1];
    const auto& g = les.maps[i];
    const std::string name = "exact at " + les.terms[i].label;
    if (!composite_is_zero(f, g)) {
      r.add(name, false, "composite of consecutive maps is nonzero", {les.terms[i].label});
      continue;
    }
    const AbelianGroup h = homology_at(f, g);
    r.add(name, h.is_trivial(), h.is_trivial() ? "" : "ker/im = " + h.to_string(), h.is_trivial() ? std::vector<std::string>{} : std::vector<std::string>{les.terms[i].label});
  }
  return r;
}

}  // namespace equichain
