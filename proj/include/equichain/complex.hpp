#pragma once

#include "equichain/error.hpp"
#include "equichain/group.hpp"
#include "equichain/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace equichain {

// Image of each cell under one group element, with an orientation sign.
struct SignedPermutation {
  std::vector<std::size_t> image;
  std::vector<int> sign;

  static SignedPermutation identity(std::size_t n) {
    SignedPermutation p;
    p.image.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.image[i] = i;
    p.sign.assign(n, 1);
    return p;
  }

  std::size_t size() const noexcept { return image.size(); }

  IntMatrix matrix() const {
    IntMatrix m(size(), size());
    for (std::size_t c = 0; c < size(); ++c) m(image[c], c) = sign[c];
    return m;
  }

  IntVector apply(const IntVector& v) const {
    IntVector w(v.size(), Int(0));
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!v[c].is_zero()) w[image[c]] += sign[c] * v[c];
    return w;
  }

  // (this ∘ other)
  SignedPermutation compose(const SignedPermutation& other) const {
    SignedPermutation r;
    r.image.resize(other.size());
    r.sign.resize(other.size());
    for (std::size_t c = 0; c < other.size(); ++c) {
      r.image[c] = image[other.image[c]];
      r.sign[c] = sign[other.image[c]] * other.sign[c];
    }
    return r;
  }

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

// A finite free chain complex of abelian groups with distinguished bases:
// cells[k] generators in degree k, boundary(k): C_k -> C_{k-1}.
struct ChainComplex {
  std::vector<std::size_t> cells;
  std::vector<IntMatrix> boundaries;  // boundaries[k] for k = 0..top; boundaries[0] is 0 x cells[0]

  ChainComplex() = default;
  ChainComplex(std::vector<std::size_t> counts, std::vector<IntMatrix> bd) : cells(std::move(counts)), boundaries(std::move(bd)) {
    if (boundaries.empty() && !cells.empty()) boundaries.emplace_back(0, cells[0]);
    if (boundaries.size() != cells.size()) throw std::invalid_argument("ChainComplex: one boundary matrix per degree expected");
  }

  // Builds from d_1..d_top (the usual listing).
  static ChainComplex from_boundaries(std::vector<std::size_t> counts, const std::vector<IntMatrix>& positive) {
    std::vector<IntMatrix> bd;
    if (!counts.empty()) bd.emplace_back(0, counts[0]);
    for (const auto& m : positive) bd.push_back(m);
    return ChainComplex(std::move(counts), std::move(bd));
  }

  int top() const noexcept { return static_cast<int>(cells.size()) - 1; }
  bool is_empty() const {
    for (auto c : cells)
      if (c) return false;
    return true;
  }
  std::size_t size(int k) const { return (k < 0 || k > top()) ? 0 : cells[static_cast<std::size_t>(k)]; }
  std::size_t total_cells() const {
    std::size_t n = 0;
    for (auto c : cells) n += c;
    return n;
  }

  // d_k : C_k -> C_{k-1}, defined for every integer k (zero matrices outside the range).
  IntMatrix boundary(int k) const {
    if (k >= 0 && k <= top()) return boundaries[static_cast<std::size_t>(k)];
    return IntMatrix(size(k - 1), size(k));
  }

  // Drops trailing empty degrees.
  ChainComplex trimmed() const {
    ChainComplex c = *this;
    while (!c.cells.empty() && c.cells.back() == 0) {
      c.cells.pop_back();
      c.boundaries.pop_back();
    }
    return c;
  }

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;
};

// Per-degree integer matrices target_k x source_k.
struct ChainMap {
  ChainComplex source;
  ChainComplex target;
  std::vector<IntMatrix> components;

  IntMatrix component(int k) const {
    if (k >= 0 && static_cast<std::size_t>(k) < components.size()) return components[static_cast<std::size_t>(k)];
    return IntMatrix(target.size(k), source.size(k));
  }

  // d f = f d in every degree.
  bool commutes() const {
    const int top = std::max(source.top(), target.top());
    for (int k = 0; k <= top + 1; ++k)
      if (!(target.boundary(k) * component(k) == component(k - 1) * source.boundary(k))) return false;
    return true;
  }

  static ChainMap identity(const ChainComplex& c) {
    ChainMap f{c, c, {}};
    for (auto n : c.cells) f.components.push_back(IntMatrix::identity(n));
    return f;
  }

  // (this ∘ g)
  ChainMap compose(const ChainMap& g) const {
    ChainMap h{g.source, target, {}};
    const int top = std::max(g.source.top(), 0);
    for (int k = 0; k <= top; ++k) h.components.push_back(component(k) * g.component(k));
    return h;
  }
};

// A finite group acting on a free chain complex by signed cell permutations.
struct EquivariantChainComplex {
  FiniteGroup group;
  ChainComplex chains;
  std::vector<std::vector<SignedPermutation>> action;  // action[g][k]
  std::vector<std::vector<std::string>> labels;       // optional, labels[k][cell]

  int top() const noexcept { return chains.top(); }
  std::size_t size(int k) const { return chains.size(k); }

  const SignedPermutation& act(std::size_t g, int k) const { return action[g][static_cast<std::size_t>(k)]; }

  IntMatrix action_matrix(std::size_t g, int k) const {
    if (k < 0 || k > top()) return IntMatrix(0, 0);
    return act(g, k).matrix();
  }

  // The element-g action as a chain map of the underlying complex.
  ChainMap action_map(std::size_t g) const {
    ChainMap f{chains, chains, {}};
    for (int k = 0; k <= top(); ++k) f.components.push_back(action_matrix(g, k));
    return f;
  }

  // Trivial action of the given group.
  static EquivariantChainComplex with_trivial_action(const FiniteGroup& g, ChainComplex c) {
    EquivariantChainComplex x{g, std::move(c), {}, {}};
    x.action.assign(g.order(), {});
    for (std::size_t e = 0; e < g.order(); ++e)
      for (auto n : x.chains.cells) x.action[e].push_back(SignedPermutation::identity(n));
    return x;
  }

  // Cells fixed by every element with sign +1.
  std::vector<std::size_t> fixed_cells(int k) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < size(k); ++c) {
      bool fixed = true;
      for (std::size_t g = 0; g < group.order() && fixed; ++g)
        fixed = act(g, k).image[c] == c && act(g, k).sign[c] == 1;
      if (fixed) out.push_back(c);
    }
    return out;
  }

  // Every nontrivial element moves every cell.
  bool is_free() const {
    for (int k = 0; k <= top(); ++k)
      for (std::size_t g = 1; g < group.order(); ++g)
        for (std::size_t c = 0; c < size(k); ++c)
          if (act(g, k).image[c] == c) return false;
    return true;
  }
};

struct Diagnostic {
  std::string kind;
  int dimension = -1;
  long element = -1;
  long cell = -1;
  std::string message;
};

namespace detail {

inline std::string cell_message(const std::string& what, int dim, long element, long cell) {
  std::ostringstream os;
  os << what << " at dim " << dim;
  if (element >= 0) os << ", element " << element;
  if (cell >= 0) os << ", cell " << cell;
  return os.str();
}

}  // namespace detail

// Checks the chain-level G-CW conditions; an empty list means valid.
inline std::vector<Diagnostic> validate(const EquivariantChainComplex& x) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string kind, const std::string& what, int dim, long element, long cell) {
    out.push_back({std::move(kind), dim, element, cell, detail::cell_message(what, dim, element, cell)});
  };
  const auto& c = x.chains;
  const std::size_t n = x.group.order();
  const int top = c.top();

  if (c.boundaries.size() != c.cells.size()) {
    report("shape", "boundary list length differs from cell-count list length", top, -1, -1);
    return out;
  }
  bool shapes_ok = true;
  for (int k = 0; k <= top; ++k) {
    const auto& b = c.boundaries[static_cast<std::size_t>(k)];
    if (b.cols() != c.size(k) || b.rows() != c.size(k - 1)) {
      report("shape", "boundary matrix has wrong shape", k, -1, -1);
      shapes_ok = false;
    }
  }
  if (x.action.size() != n) {
    report("shape", "action must list every group element", top, -1, -1);
    return out;
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (x.action[g].size() != c.cells.size()) {
      report("shape", "action lists wrong number of dimensions", top, static_cast<long>(g), -1);
      shapes_ok = false;
      continue;
    }
    for (int k = 0; k <= top; ++k) {
      const auto& p = x.act(g, k);
      if (p.image.size() != c.size(k) || p.sign.size() != c.size(k)) {
        report("shape", "action has wrong length", k, static_cast<long>(g), -1);
        shapes_ok = false;
        continue;
      }
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p.image[i] >= c.size(k) || (p.sign[i] != 1 && p.sign[i] != -1)) {
          report("shape", "action entry out of range", k, static_cast<long>(g), static_cast<long>(i));
          shapes_ok = false;
        }
    }
  }
  if (!shapes_ok) return out;

  for (int k = 2; k <= top; ++k) {
    const IntMatrix sq = c.boundary(k - 1) * c.boundary(k);
    for (std::size_t j = 0; j < sq.cols(); ++j) {
      bool nz = false;
      for (std::size_t i = 0; i < sq.rows(); ++i) nz = nz || !sq(i, j).is_zero();
      if (nz) {
        report("boundary", "square of boundary nonzero", k, -1, static_cast<long>(j));
        break;
      }
    }
  }

  for (std::size_t g = 0; g < n; ++g)
    for (int k = 0; k <= top; ++k) {
      const auto& p = x.act(g, k);
      std::vector<bool> hit(p.size(), false);
      for (auto im : p.image) hit[im] = true;
      for (std::size_t i = 0; i < hit.size(); ++i)
        if (!hit[i]) {
          report("bijectivity", "action is not a bijection", k, static_cast<long>(g), static_cast<long>(i));
          break;
        }
    }
  for (int k = 0; k <= top; ++k)
    if (!(x.act(0, k) == SignedPermutation::identity(c.size(k))))
      report("identity", "identity element does not act as the identity", k, 0, -1);

  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (int k = 0; k <= top; ++k)
        if (!(x.act(x.group.mul(g, h), k) == x.act(g, k).compose(x.act(h, k)))) {
          std::ostringstream os;
          os << "action does not respect multiplication of elements " << g << " and " << h;
          report("homomorphism", os.str(), k, static_cast<long>(g), -1);
        }

  for (std::size_t g = 0; g < n; ++g)
    for (int k = 1; k <= top; ++k) {
      const auto& pk = x.act(g, k);
      const auto& pk1 = x.act(g, k - 1);
      const IntMatrix& b = c.boundaries[static_cast<std::size_t>(k)];
      for (std::size_t cell = 0; cell < c.size(k); ++cell) {
        IntVector lhs(b.rows());
        for (std::size_t i = 0; i < b.rows(); ++i) lhs[i] = pk.sign[cell] * b(i, pk.image[cell]);
        if (lhs != pk1.apply(b.column(cell))) {
          report("equivariance", "boundary does not commute with the action", k, static_cast<long>(g), static_cast<long>(cell));
          break;
        }
      }
    }

  for (std::size_t g = 0; g < n; ++g)
    for (int k = 0; k <= top; ++k) {
      const auto& p = x.act(g, k);
      for (std::size_t cell = 0; cell < p.size(); ++cell)
        if (p.image[cell] == cell && p.sign[cell] != 1)
          report("admissibility", "element maps a cell to its negative (fixes it only setwise)", k, static_cast<long>(g),
                 static_cast<long>(cell));
    }

  if (out.empty()) {
    for (int k = 1; k <= top; ++k) {
      const auto fixed_below = x.fixed_cells(k - 1);
      std::vector<bool> is_fixed(c.size(k - 1), false);
      for (auto f : fixed_below) is_fixed[f] = true;
      for (auto cell : x.fixed_cells(k)) {
        const IntMatrix& b = c.boundaries[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < b.rows(); ++i)
          if (!b(i, cell).is_zero() && !is_fixed[i]) {
            report("fixed-set", "boundary of a fixed cell leaves the fixed subcomplex", k, -1, static_cast<long>(cell));
            break;
          }
      }
    }
  }
  return out;
}

inline bool is_valid(const EquivariantChainComplex& x) { return validate(x).empty(); }

inline void require_valid(const EquivariantChainComplex& x) {
  auto d = validate(x);
  if (!d.empty()) throw Error(ErrorCode::InvalidComplex, d.front().message);
}

// Tensor product with Koszul signs and the diagonal action. Cells in degree n
// are pairs (sigma_i, tau_{n-i}) ordered by i, then sigma, then tau.
inline EquivariantChainComplex tensor_product(const EquivariantChainComplex& x, const EquivariantChainComplex& y) {
  if (!(x.group == y.group)) throw Error(ErrorCode::BadParameter, "tensor_product requires the same group on both factors");
  const int top = (x.chains.cells.empty() || y.chains.cells.empty()) ? -1 : x.top() + y.top();
  std::vector<std::size_t> counts;
  // offset[n][i] = first index of the (i, n-i) block
  std::vector<std::vector<std::size_t>> offset(static_cast<std::size_t>(top + 1));
  for (int n = 0; n <= top; ++n) {
    std::size_t total = 0;
    for (int i = 0; i <= n; ++i) {
      offset[static_cast<std::size_t>(n)].push_back(total);
      total += x.size(i) * y.size(n - i);
    }
    counts.push_back(total);
  }
  auto index = [&](int i, int j, std::size_t s, std::size_t t) {
    return offset[static_cast<std::size_t>(i + j)][static_cast<std::size_t>(i)] + s * y.size(j) + t;
  };
  std::vector<IntMatrix> bd;
  for (int n = 0; n <= top; ++n) {
    IntMatrix b(n > 0 ? counts[static_cast<std::size_t>(n - 1)] : 0, counts[static_cast<std::size_t>(n)]);
    for (int i = 0; i <= n; ++i) {
      const int j = n - i;
      const IntMatrix bx = x.chains.boundary(i);
      const IntMatrix by = y.chains.boundary(j);
      const int koszul = (i % 2 == 0) ? 1 : -1;
      for (std::size_t s = 0; s < x.size(i); ++s)
        for (std::size_t t = 0; t < y.size(j); ++t) {
          const std::size_t col = index(i, j, s, t);
          if (i > 0)
            for (std::size_t r = 0; r < bx.rows(); ++r)
              if (!bx(r, s).is_zero()) b(index(i - 1, j, r, t), col) += bx(r, s);
          if (j > 0)
            for (std::size_t r = 0; r < by.rows(); ++r)
              if (!by(r, t).is_zero()) b(index(i, j - 1, s, r), col) += koszul * by(r, t);
        }
    }
    bd.push_back(std::move(b));
  }
  EquivariantChainComplex z{x.group, ChainComplex(counts, bd), {}, {}};
  z.action.assign(x.group.order(), {});
  for (std::size_t g = 0; g < x.group.order(); ++g)
    for (int n = 0; n <= top; ++n) {
      SignedPermutation p;
      p.image.resize(counts[static_cast<std::size_t>(n)]);
      p.sign.resize(counts[static_cast<std::size_t>(n)]);
      for (int i = 0; i <= n; ++i) {
        const int j = n - i;
        const auto& px = x.act(g, i);
        const auto& py = y.act(g, j);
        for (std::size_t s = 0; s < x.size(i); ++s)
          for (std::size_t t = 0; t < y.size(j); ++t) {
            const std::size_t c = index(i, j, s, t);
            p.image[c] = index(i, j, px.image[s], py.image[t]);
            p.sign[c] = px.sign[s] * py.sign[t];
          }
      }
      z.action[g].push_back(std::move(p));
    }
  auto diags = validate(z);
  for (const auto& d : diags)
    if (d.kind == "admissibility" || d.kind == "fixed-set") throw Error(ErrorCode::NotAdmissible, d.message);
  if (!diags.empty()) throw Error(ErrorCode::InvalidComplex, diags.front().message);
  return z;
}

// Same cells and boundaries, action restricted to the subgroup on the given
// elements (re-indexed in increasing order).
inline EquivariantChainComplex restrict_action(const EquivariantChainComplex& x, std::vector<std::size_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  FiniteGroup h = x.group.subgroup(elements);
  EquivariantChainComplex y{std::move(h), x.chains, {}, x.labels};
  for (auto e : elements) y.action.push_back(x.action[e]);
  return y;
}

// Chain-level cone: one fixed apex (last 0-cell) and a cone cell c(sigma) of
// degree k+1 for every k-cell, with d c(sigma) = sigma - c(d sigma) and
// d c(v) = v - apex. Cone cells follow the original cells in each degree.
inline EquivariantChainComplex cone(const EquivariantChainComplex& x) {
  const int top = x.top();
  std::vector<std::size_t> counts;
  for (int k = 0; k <= top + 1; ++k) counts.push_back(x.size(k) + (k == 0 ? 1 : x.size(k - 1)));
  auto cone_index = [&](int k, std::size_t s) { return x.size(k + 1) + s; };  // cone on a k-cell, in degree k+1
  const std::size_t apex = x.size(0);
  std::vector<IntMatrix> bd;
  for (int k = 0; k <= top + 1; ++k) {
    IntMatrix b(k > 0 ? counts[static_cast<std::size_t>(k - 1)] : 0, counts[static_cast<std::size_t>(k)]);
    if (k > 0) {
      const IntMatrix orig = x.chains.boundary(k);
      for (std::size_t i = 0; i < orig.rows(); ++i)
        for (std::size_t j = 0; j < orig.cols(); ++j) b(i, j) = orig(i, j);
      for (std::size_t s = 0; s < x.size(k - 1); ++s) {
        const std::size_t col = cone_index(k - 1, s);
        b(s, col) += 1;
        if (k - 1 == 0) {
          b(apex, col) -= 1;
        } else {
          const IntMatrix below = x.chains.boundary(k - 1);
          for (std::size_t r = 0; r < below.rows(); ++r)
            if (!below(r, s).is_zero()) b(cone_index(k - 2, r), col) -= below(r, s);
        }
      }
    }
    bd.push_back(std::move(b));
  }
  EquivariantChainComplex z{x.group, ChainComplex(counts, bd), {}, {}};
  z.action.assign(x.group.order(), {});
  for (std::size_t g = 0; g < x.group.order(); ++g)
    for (int k = 0; k <= top + 1; ++k) {
      SignedPermutation p;
      for (std::size_t s = 0; s < x.size(k); ++s) {
        p.image.push_back(x.act(g, k).image[s]);
        p.sign.push_back(x.act(g, k).sign[s]);
      }
      if (k == 0) {
        p.image.push_back(apex);
        p.sign.push_back(1);
      } else {
        for (std::size_t s = 0; s < x.size(k - 1); ++s) {
          p.image.push_back(cone_index(k - 1, x.act(g, k - 1).image[s]));
          p.sign.push_back(x.act(g, k - 1).sign[s]);
        }
      }
      z.action[g].push_back(std::move(p));
    }
  return z;
}

// Disjoint union: cells of x first, then cells of y, in every degree.
inline EquivariantChainComplex disjoint_union(const EquivariantChainComplex& x, const EquivariantChainComplex& y) {
  if (!(x.group == y.group)) throw Error(ErrorCode::BadParameter, "disjoint_union requires the same group");
  const int top = std::max(x.top(), y.top());
  std::vector<std::size_t> counts;
  for (int k = 0; k <= top; ++k) counts.push_back(x.size(k) + y.size(k));
  std::vector<IntMatrix> bd;
  for (int k = 0; k <= top; ++k) {
    IntMatrix b(k > 0 ? counts[static_cast<std::size_t>(k - 1)] : 0, counts[static_cast<std::size_t>(k)]);
    const IntMatrix bx = x.chains.boundary(k), by = y.chains.boundary(k);
    for (std::size_t i = 0; i < bx.rows(); ++i)
      for (std::size_t j = 0; j < bx.cols(); ++j) b(i, j) = bx(i, j);
    for (std::size_t i = 0; i < by.rows(); ++i)
      for (std::size_t j = 0; j < by.cols(); ++j) b(x.size(k - 1) + i, x.size(k) + j) = by(i, j);
    bd.push_back(std::move(b));
  }
  EquivariantChainComplex z{x.group, ChainComplex(counts, bd), {}, {}};
  z.action.assign(x.group.order(), {});
  for (std::size_t g = 0; g < x.group.order(); ++g)
    for (int k = 0; k <= top; ++k) {
      SignedPermutation p;
      if (k <= x.top()) {
        p = x.act(g, k);
      }
      if (k <= y.top()) {
        const auto& py = y.act(g, k);
        for (std::size_t s = 0; s < py.size(); ++s) {
          p.image.push_back(x.size(k) + py.image[s]);
          p.sign.push_back(py.sign[s]);
        }
      }
      z.action[g].push_back(std::move(p));
    }
  return z;
}

}  // namespace equichain
