#pragma once

#include "equichain/error.hpp"
#include "equichain/matrix.hpp"
#include "equichain/smith.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace equichain {

// Finitely generated abelian group Z^free_rank + Z/t1 + ... + Z/tk with
// t1 | t2 | ... | tk and every ti >= 2.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  static AbelianGroup trivial() { return {}; }
  static AbelianGroup free(std::size_t rank) { return {rank, {}}; }
  static AbelianGroup cyclic(const Int& order) {
    if (order == 0) return free(1);
    if (order == 1) return {};
    return {0, {order}};
  }
  // (Z/p)^dim
  static AbelianGroup elementary(std::int64_t p, std::size_t dim) {
    return {0, std::vector<Int>(dim, Int(p))};
  }

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  std::size_t generator_count() const { return free_rank + torsion.size(); }

  // Number of cyclic factors of order divisible by p.
  std::size_t p_torsion_count(std::int64_t p) const {
    std::size_t c = 0;
    for (const auto& t : torsion)
      if ((t % p).is_zero()) ++c;
    return c;
  }

  // Largest invariant factor; 1 for the trivial group. Only for finite groups.
  Int exponent() const { return torsion.empty() ? Int(1) : torsion.back(); }

  // Dimension over Z/p when the group is an F_p-vector space.
  std::size_t dimension() const { return free_rank + torsion.size(); }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
      first = false;
    }
    for (const auto& t : torsion) {
      if (!first) os << " + ";
      os << "Z/" << t;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) { return os << g.to_string(); }

// Z^generators / column-span(relations).
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations{0, 0};

  static Presentation free(std::size_t n) { return {n, IntMatrix(n, 0)}; }

  // One generator per cyclic factor, torsion factors first.
  static Presentation of(const AbelianGroup& g) {
    const std::size_t n = g.generator_count();
    IntMatrix rel(n, g.torsion.size());
    for (std::size_t i = 0; i < g.torsion.size(); ++i) rel(i, i) = g.torsion[i];
    return {n, rel};
  }

  // Generator orders (0 = infinite), one cyclic relation per generator.
  static Presentation of_orders(const std::vector<Int>& orders) {
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] == 0) continue;
      std::vector<Int> c(orders.size(), Int(0));
      c[i] = orders[i];
      cols.push_back(std::move(c));
    }
    return {orders.size(), IntMatrix::from_columns(orders.size(), cols)};
  }
};

inline AbelianGroup cokernel(const IntMatrix& a) {
  auto s = detail::smith_integers(a, detail::kTrackNone);
  AbelianGroup g;
  g.free_rank = a.rows() - s.rank();
  for (const auto& d : s.pivots)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

inline AbelianGroup group_of(const Presentation& p) { return cokernel(p.relations); }

// A subquotient cycles/boundaries of lattices in Z^n (or subspaces of
// (Z/p)^n), together with the data needed to project ambient vectors onto
// group coordinates and to lift generators back.
class Subquotient {
 public:
  AbelianGroup group;
  std::int64_t modulus = 0;
  // Ambient representative of each generator, one column per generator.
  IntMatrix representatives;
  // Order of each generator: 0 = infinite.
  std::vector<Int> orders;

  std::size_t ambient_dimension() const { return to_span_.cols(); }
  std::size_t generator_count() const { return orders.size(); }

  // Coordinates of an ambient vector in the basis of the cycle span;
  // nullopt when the vector is not in the span.
  std::optional<IntVector> span_coordinates(const IntVector& ambient) const {
    if (ambient.size() != ambient_dimension()) throw std::invalid_argument("Subquotient: ambient length mismatch");
    IntVector y = to_span_ * (modulus ? reduce_mod(ambient, modulus) : ambient);
    IntVector c(span_pivots_.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      Int v = modulus ? Int(mod_reduce(y[i], modulus)) : y[i];
      if (i < span_pivots_.size()) {
        if (modulus) {
          c[i] = v;  // field pivots are 1
        } else {
          if (!(v % span_pivots_[i]).is_zero()) return std::nullopt;
          c[i] = v / span_pivots_[i];
        }
      } else if (!v.is_zero()) {
        return std::nullopt;
      }
    }
    return c;
  }

  bool contains(const IntVector& ambient) const { return span_coordinates(ambient).has_value(); }

  // Group coordinates of the class of an ambient cycle, torsion coordinates
  // reduced to [0, order).
  std::optional<IntVector> project(const IntVector& ambient) const {
    auto c = span_coordinates(ambient);
    if (!c) return std::nullopt;
    return normalize(to_group_ * *c);
  }

  IntVector normalize(IntVector coords) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (orders[i] != 0) {
        coords[i] %= orders[i];
        if (coords[i] < 0) coords[i] += orders[i];
      }
    return coords;
  }

  // Restriction to the infinite-order generators (rational homology).
  Subquotient free_part() const {
    Subquotient q = *this;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] == 0) keep.push_back(i);
    q.group = AbelianGroup::free(keep.size());
    q.representatives = representatives.select_columns(keep);
    q.orders.assign(keep.size(), Int(0));
    q.to_group_ = to_group_.select_rows(keep);
    return q;
  }

  Presentation presentation() const { return Presentation::of_orders(orders); }

 private:
  friend Subquotient subquotient(const IntMatrix&, const IntMatrix&, std::int64_t);
  IntMatrix to_span_;
  std::vector<Int> span_pivots_;
  IntMatrix to_group_;
};

// cycles, boundaries: generating sets as columns of ambient-length vectors.
// Requires column-span(boundaries) inside column-span(cycles).
inline Subquotient subquotient(const IntMatrix& cycles, const IntMatrix& boundaries, std::int64_t modulus = 0) {
  if (cycles.rows() != boundaries.rows())
    throw std::invalid_argument("subquotient: cycles and boundaries have different ambient dimension");
  detail::require_modulus(modulus);
  const std::size_t n = cycles.rows();
  auto span = detail::smith_any(cycles, modulus, detail::kTrackLeft | detail::kTrackLeftInverse);
  const std::size_t r = span.rank();

  Subquotient q;
  q.modulus = modulus;
  q.to_span_ = std::move(span.u);
  q.span_pivots_ = span.pivots;

  IntMatrix x(r, boundaries.cols());
  for (std::size_t j = 0; j < boundaries.cols(); ++j) {
    auto c = q.span_coordinates(boundaries.column(j));
    if (!c) throw Error(ErrorCode::NotASubgroup, "boundary column " + std::to_string(j) + " is not in the cycle span");
    for (std::size_t i = 0; i < r; ++i) x(i, j) = (*c)[i];
  }

  auto rel = detail::smith_any(x, modulus, detail::kTrackLeft | detail::kTrackLeftInverse);
  std::vector<std::size_t> gens;
  for (std::size_t j = 0; j < r; ++j) {
    if (j < rel.rank()) {
      if (modulus == 0 && rel.pivots[j] != 1) {
        gens.push_back(j);
        q.orders.push_back(rel.pivots[j]);
        q.group.torsion.push_back(rel.pivots[j]);
      }
    } else {
      gens.push_back(j);
      if (modulus) {
        q.orders.push_back(Int(modulus));
        q.group.torsion.push_back(Int(modulus));
      } else {
        q.orders.push_back(Int(0));
        ++q.group.free_rank;
      }
    }
  }
  q.to_group_ = rel.u.select_rows(gens);

  // Span basis vectors are d_i * (column i of U^-1).
  IntMatrix basis(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < r; ++k) basis(i, k) = span.u_inv(i, k) * span.pivots[k];
  q.representatives = basis * rel.u_inv.select_columns(gens);
  if (modulus) q.representatives = reduce_mod(q.representatives, modulus);
  return q;
}

// A homomorphism between presented groups; matrix maps domain generators to
// codomain generator coordinates (rows = codomain generators).
struct GroupHom {
  Presentation domain;
  Presentation codomain;
  IntMatrix matrix;
};

inline bool is_well_defined(const GroupHom& f) {
  if (f.matrix.rows() != f.codomain.generators || f.matrix.cols() != f.domain.generators) return false;
  const IntMatrix images = f.matrix * f.domain.relations;
  auto s = detail::smith_integers(f.codomain.relations, detail::kTrackLeft);
  for (std::size_t j = 0; j < images.cols(); ++j) {
    IntVector y = s.u * images.column(j);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < s.rank()) {
        if (!(y[i] % s.pivots[i]).is_zero()) return false;
      } else if (!y[i].is_zero()) {
        return false;
      }
    }
  }
  return true;
}

struct HomAnalysis {
  AbelianGroup kernel, image, cokernel;
  std::optional<Int> kernel_exponent;  // set when the kernel is finite

  bool injective() const { return kernel.is_trivial(); }
  bool surjective() const { return cokernel.is_trivial(); }
  bool isomorphism() const { return injective() && surjective(); }
};

namespace detail {

// Generators of {x : M x in span(R_cod)} in domain coordinates.
inline IntMatrix kernel_lattice(const GroupHom& f) {
  const IntMatrix stacked = hstack(f.matrix, f.codomain.relations);
  const IntMatrix k = kernel_basis(stacked);
  return k.block(0, 0, f.domain.generators, k.cols());
}

}  // namespace detail

inline HomAnalysis hom_on_presentations(const GroupHom& f) {
  if (!is_well_defined(f)) throw Error(ErrorCode::IllDefined, "matrix does not carry domain relations into codomain relations");
  HomAnalysis h;
  h.kernel = subquotient(detail::kernel_lattice(f), f.domain.relations).group;
  const IntMatrix span = hstack(f.matrix, f.codomain.relations);
  h.image = subquotient(span, f.codomain.relations).group;
  h.cokernel = cokernel(span);
  if (h.kernel.is_finite()) h.kernel_exponent = h.kernel.exponent();
  return h;
}

// Homology at the middle of A --f--> B --g--> C (f, g share the presentation of B).
inline AbelianGroup homology_at(const GroupHom& f, const GroupHom& g) {
  const IntMatrix cycles = detail::kernel_lattice(g);
  const IntMatrix boundaries = hstack(f.matrix, g.domain.relations);
  return subquotient(cycles, boundaries).group;
}

}  // namespace equichain
