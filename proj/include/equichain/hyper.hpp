#pragma once

#include "equichain/abelian.hpp"
#include "equichain/complex.hpp"
#include "equichain/functors.hpp"
#include "equichain/homology.hpp"
#include "equichain/modp.hpp"
#include "equichain/report.hpp"

#include <iomanip>
#include <map>
#include <tuple>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace equichain {

// H^k(Z/n; M) for M = Z^gens / relations with g acting by `action`, from the
// 2-periodic resolution: k = 0 ker(g-1); k even > 0 ker(g-1)/im N; k odd ker N/im(g-1).
inline AbelianGroup cyclic_cohomology(const Presentation& m, const IntMatrix& action, std::size_t order, int k) {
  if (k < 0) throw Error(ErrorCode::BadParameter, "cohomological degree must be nonnegative");
  const std::size_t r = m.generators;
  if (action.rows() != r || action.cols() != r || !is_well_defined(GroupHom{m, m, action}))
    throw Error(ErrorCode::NotAnAutomorphism, "action matrix does not define an endomorphism of the module");
  IntMatrix power = IntMatrix::identity(r);
  IntMatrix norm(r, r);
  for (std::size_t i = 0; i < order; ++i) {
    norm = norm + power;
    power = action * power;
  }
  const IntMatrix diff_id = power - IntMatrix::identity(r);
  for (std::size_t j = 0; j < r; ++j)
    if (!solve(m.relations, diff_id.column(j)))
      throw Error(ErrorCode::NotAnAutomorphism, "g^" + std::to_string(order) + " is not the identity on the module");
  const IntMatrix g1 = action - IntMatrix::identity(r);
  const GroupHom minus_one{m, m, g1};
  const GroupHom norm_hom{m, m, norm};
  if (k == 0) return subquotient(detail::kernel_lattice(minus_one), m.relations).group;
  if (k % 2 == 0) return subquotient(detail::kernel_lattice(minus_one), hstack(norm, m.relations)).group;
  return subquotient(detail::kernel_lattice(norm_hom), hstack(g1, m.relations)).group;
}

// Free module Z^r with a matrix action.
inline AbelianGroup cyclic_cohomology(const IntMatrix& action, std::size_t order, int k) {
  return cyclic_cohomology(Presentation::free(action.rows()), action, order, k);
}

// Total complex of E^0_{s,t} = C_s, 0 <= s <= d, t <= 0, for a cyclic group of
// prime order with generator g. Tot_n is the sum over s in [max(n,0), d] with
// t = n - s; D = d_h + (-1)^s d_v, where the vertical map out of cochain
// degree q = -t is (g - 1) for even q and N for odd q.
class TotalComplex {
 public:
  struct Block {
    int s = 0, t = 0;
    std::size_t offset = 0, size = 0;
  };

  explicit TotalComplex(const EquivariantChainComplex& x) : chains_(x.chains) {
    const auto order = static_cast<std::int64_t>(x.group.order());
    if (!is_prime(order)) throw Error(ErrorCode::NotPrimeOrder, "hypercohomology needs a group of prime order, got " + std::to_string(order));
    const std::size_t g = *x.group.generator();
    for (int s = 0; s <= x.top(); ++s) {
      const IntMatrix pg = x.action_matrix(g, s);
      const std::size_t m = x.size(s);
      minus_one_.push_back(pg - IntMatrix::identity(m));
      IntMatrix n(m, m);
      for (std::size_t e = 0; e < x.group.order(); ++e) n = n + x.action_matrix(e, s);
      norm_.push_back(std::move(n));
    }
  }

  int dimension() const { return chains_.top(); }

  std::vector<Block> blocks(int n) const {
    std::vector<Block> out;
    std::size_t off = 0;
    for (int s = std::max(n, 0); s <= dimension(); ++s) {
      out.push_back({s, n - s, off, chains_.size(s)});
      off += chains_.size(s);
    }
    return out;
  }

  std::size_t size(int n) const {
    std::size_t total = 0;
    for (const auto& b : blocks(n)) total += b.size;
    return total;
  }

  // Map out of cochain degree q on C_s.
  const IntMatrix& vertical(int s, int q) const {
    return q % 2 == 0 ? minus_one_[static_cast<std::size_t>(s)] : norm_[static_cast<std::size_t>(s)];
  }

  // D_n : Tot_n -> Tot_{n-1}.
  IntMatrix differential(int n) const {
    const auto src = blocks(n);
    const auto dst = blocks(n - 1);
    IntMatrix d(size(n - 1), size(n));
    auto find = [&](int s) -> const Block* {
      for (const auto& b : dst)
        if (b.s == s) return &b;
      return nullptr;
    };
    for (const auto& b : src) {
      if (const Block* h = find(b.s - 1); h && b.s >= 1) {
        const IntMatrix bd = chains_.boundary(b.s);
        for (std::size_t i = 0; i < bd.rows(); ++i)
          for (std::size_t j = 0; j < bd.cols(); ++j) d(h->offset + i, b.offset + j) = bd(i, j);
      }
      if (const Block* v = find(b.s)) {
        const IntMatrix& m = vertical(b.s, -b.t);
        const int sign = b.s % 2 == 0 ? 1 : -1;
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) d(v->offset + i, b.offset + j) = sign * m(i, j);
      }
    }
    return d;
  }

 private:
  ChainComplex chains_;
  std::vector<IntMatrix> minus_one_, norm_;
};

// S_n(G, X; coeff) = H_n(Tot) for n in [a, b].
inline std::vector<AbelianGroup> s_groups(const EquivariantChainComplex& x, const Coefficients& coeff, int a, int b) {
  const TotalComplex tot(x);
  if (coeff.kind == Coefficients::Kind::rationals) throw Error(ErrorCode::BadParameter, "hypercohomology supports Z and Z/p coefficients");
  const std::int64_t m = coeff.modulus();
  std::vector<AbelianGroup> out;
  for (int n = a; n <= b; ++n) {
    const IntMatrix dn = m ? reduce_mod(tot.differential(n), m) : tot.differential(n);
    const IntMatrix up = m ? reduce_mod(tot.differential(n + 1), m) : tot.differential(n + 1);
    const IntMatrix cycles = dn.rows() == 0 ? IntMatrix::identity(tot.size(n)) : kernel_basis(dn, m);
    out.push_back(subquotient(cycles, up, m).group);
  }
  return out;
}

enum class Filtration { I, II };

inline const char* to_string(Filtration f) { return f == Filtration::I ? "I" : "II"; }

// Grid of Z/p-dimensions E^r_{p,q} with differentials of bidegree (-r, r-1).
// Filtration I: p = s (chain degree), q = t (resolution row, <= 0).
// Filtration II: p = t, q = s.
struct SpectralPage {
  Filtration filtration = Filtration::I;
  int r = 0;  // 0 marks an E-infinity page
  std::int64_t prime = 0;
  int p_min = 0, p_max = 0, q_min = 0, q_max = 0;
  std::vector<std::vector<std::size_t>> dims;                 // [p - p_min][q - q_min]
  std::map<std::pair<int, int>, IntMatrix> differentials;     // keyed by source (p, q)

  bool contains(int p, int q) const { return p >= p_min && p <= p_max && q >= q_min && q <= q_max; }
  std::size_t dim(int p, int q) const {
    if (!contains(p, q)) return 0;
    return dims[static_cast<std::size_t>(p - p_min)][static_cast<std::size_t>(q - q_min)];
  }

  // Rows q from top to bottom, columns p left to right.
  std::string grid() const {
    std::ostringstream os;
    os << "E" << (r ? std::to_string(r) : std::string("inf")) << " filtration " << to_string(filtration) << " over Z/" << prime << "\n";
    os << "  q\\p";
    for (int p = p_min; p <= p_max; ++p) os << std::setw(5) << p;
    os << "\n";
    for (int q = q_max; q >= q_min; --q) {
      os << std::setw(5) << q;
      for (int p = p_min; p <= p_max; ++p) os << std::setw(5) << dim(p, q);
      os << "\n";
    }
    return os.str();
  }

  friend bool operator==(const SpectralPage& a, const SpectralPage& b) {
    return a.filtration == b.filtration && a.p_min == b.p_min && a.p_max == b.p_max && a.q_min == b.q_min &&
           a.q_max == b.q_max && a.dims == b.dims;
  }
};

// Total complex over Z/p with filtration by s (I) or by t (II).
class FilteredTotal {
 public:
  FilteredTotal(const EquivariantChainComplex& x, std::int64_t prime, Filtration f) : tot_(x), p_(prime), f_(f) {
    if (!is_prime(prime)) throw Error(ErrorCode::CompositeModulus, "spectral pages need a prime coefficient field, got " + std::to_string(prime));
    if (prime >= (std::int64_t{1} << 31)) throw Error(ErrorCode::BadParameter, "coefficient prime too large for page computations");
  }

  int dimension() const { return tot_.dimension(); }
  Filtration filtration() const { return f_; }

  // Default window: p and q ranges covering d + 3 resolution rows.
  SpectralPage page(int r, int depth = -1) {
    if (r < 1) throw Error(ErrorCode::BadParameter, "page index must be at least 1");
    SpectralPage pg = empty_page(r, depth);
    for (int p = pg.p_min; p <= pg.p_max; ++p)
      for (int q = pg.q_min; q <= pg.q_max; ++q) {
        const Cell& c = cell(p, q, r);
        pg.dims[static_cast<std::size_t>(p - pg.p_min)][static_cast<std::size_t>(q - pg.q_min)] = c.reps.size();
        pg.differentials[{p, q}] = differential(p, q, r);
      }
    return pg;
  }

  // E-infinity from the filtration of H(Tot) directly:
  // dim (F_p Z + B) - dim (F_{p-1} Z + B) in total degree p + q.
  SpectralPage e_infinity(int depth = -1) {
    SpectralPage pg = empty_page(0, depth);
    for (int p = pg.p_min; p <= pg.p_max; ++p)
      for (int q = pg.q_min; q <= pg.q_max; ++q) {
        const int n = p + q;
        const auto& dn = mat(n);
        const auto& up = mat(n + 1);
        std::vector<fp::Vec> bvecs;
        for (std::size_t j = 0; j < up.cols; ++j) {
          fp::Vec v(up.rows);
          for (std::size_t i = 0; i < up.rows; ++i) v[i] = up.data[i][j];
          bvecs.push_back(std::move(v));
        }
        auto filtered_cycles = [&](int level) {
          std::vector<std::size_t> cols;
          for (std::size_t j = 0; j < index(n).size(); ++j)
            if (index(n)[j] <= level) cols.push_back(j);
          std::vector<std::size_t> rows(dn.rows);
          for (std::size_t i = 0; i < dn.rows; ++i) rows[i] = i;
          auto k = fp::kernel(dn, rows, cols, p_);
          k.insert(k.end(), bvecs.begin(), bvecs.end());
          return fp::rank_of(k, tot_.size(n), p_);
        };
        pg.dims[static_cast<std::size_t>(p - pg.p_min)][static_cast<std::size_t>(q - pg.q_min)] =
            filtered_cycles(p) - filtered_cycles(p - 1);
      }
    return pg;
  }

  // dim H_n(Tot; Z/p).
  std::size_t total_dimension(int n) {
    const auto& dn = mat(n);
    const auto& up = mat(n + 1);
    const std::size_t rk_dn = tot_.size(n) - fp::kernel(dn, p_).size();
    const std::size_t rk_up = tot_.size(n + 1) - fp::kernel(up, p_).size();
    return tot_.size(n) - rk_dn - rk_up;
  }

 private:
  struct Cell {
    std::vector<fp::Vec> reps;
    fp::Span den{0, 2, false};  // boundaries and lower filtration
    fp::Span quotient{0, 2};    // residuals of reps modulo den, tracked
  };

  SpectralPage empty_page(int r, int depth) const {
    const int d = tot_.dimension();
    const int rows = depth < 0 ? d + 3 : depth;
    SpectralPage pg;
    pg.filtration = f_;
    pg.r = r;
    pg.prime = p_;
    if (f_ == Filtration::I) {
      pg.p_min = 0, pg.p_max = std::max(d, 0), pg.q_min = -rows, pg.q_max = 0;
    } else {
      pg.p_min = -rows, pg.p_max = 0, pg.q_min = 0, pg.q_max = std::max(d, 0);
    }
    pg.dims.assign(static_cast<std::size_t>(pg.p_max - pg.p_min + 1), std::vector<std::size_t>(static_cast<std::size_t>(pg.q_max - pg.q_min + 1), 0));
    return pg;
  }

  const fp::Mat& mat(int n) {
    auto it = mats_.find(n);
    if (it == mats_.end()) it = mats_.emplace(n, fp::Mat::from(tot_.differential(n), p_)).first;
    return it->second;
  }

  // Filtration index of every coordinate of Tot_n.
  const std::vector<int>& index(int n) {
    auto it = index_.find(n);
    if (it == index_.end()) {
      std::vector<int> idx;
      for (const auto& b : tot_.blocks(n))
        for (std::size_t i = 0; i < b.size; ++i) idx.push_back(f_ == Filtration::I ? b.s : b.t);
      it = index_.emplace(n, std::move(idx)).first;
    }
    return it->second;
  }

  // Z^r_p in total degree n: x in F_p with D x in F_{p-r}.
  std::vector<fp::Vec> z(int n, int p, int r) {
    const auto& idx = index(n);
    const auto& below = index(n - 1);
    std::vector<std::size_t> cols, rows;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (idx[j] <= p) cols.push_back(j);
    for (std::size_t i = 0; i < below.size(); ++i)
      if (below[i] > p - r) rows.push_back(i);
    return fp::kernel(mat(n), rows, cols, p_);
  }

  const Cell& cell(int p, int q, int r) {
    const auto key = std::make_tuple(p, q, r);
    auto it = cells_.find(key);
    if (it != cells_.end()) return it->second;
    const int n = p + q;
    Cell c;
    c.den = fp::Span(tot_.size(n), p_, false);
    c.quotient = fp::Span(tot_.size(n), p_);
    for (const auto& v : z(n, p - 1, r - 1)) c.den.insert(v);
    const auto& up = mat(n + 1);
    for (const auto& y : z(n + 1, p + r - 1, r - 1)) c.den.insert(up.apply(y, p_));
    for (const auto& v : z(n, p, r)) {
      const fp::Vec res = c.den.residual(v);
      if (c.quotient.contains(res)) continue;
      c.quotient.insert(res);
      c.reps.push_back(v);
    }
    return cells_.emplace(key, std::move(c)).first->second;
  }

  // d_r : E_{p,q} -> E_{p-r,q+r-1} in the chosen representatives.
  IntMatrix differential(int p, int q, int r) {
    const Cell& src = cell(p, q, r);
    const Cell& dst = cell(p - r, q + r - 1, r);
    IntMatrix m(dst.reps.size(), src.reps.size());
    if (dst.reps.empty()) return m;
    const auto& dn = mat(p + q);
    for (std::size_t j = 0; j < src.reps.size(); ++j) {
      auto coords = dst.quotient.coordinates(dst.den.residual(dn.apply(src.reps[j], p_)));
      if (!coords) throw Error(ErrorCode::IllDefined, "page differential left the target cycles");
      for (std::size_t i = 0; i < dst.reps.size(); ++i) m(i, j) = (*coords)[i];
    }
    return m;
  }

  TotalComplex tot_;
  std::int64_t p_;
  Filtration f_;
  std::map<int, fp::Mat> mats_;
  std::map<int, std::vector<int>> index_;
  std::map<std::tuple<int, int, int>, Cell> cells_;
};

inline SpectralPage page_I(const EquivariantChainComplex& x, std::int64_t p, int r, int depth = -1) {
  return FilteredTotal(x, p, Filtration::I).page(r, depth);
}

inline SpectralPage page_II(const EquivariantChainComplex& x, std::int64_t p, int r, int depth = -1) {
  return FilteredTotal(x, p, Filtration::II).page(r, depth);
}

inline SpectralPage e_infinity(const EquivariantChainComplex& x, std::int64_t p, Filtration f, int depth = -1) {
  return FilteredTotal(x, p, f).e_infinity(depth);
}

// Page I at r = 2 against E-infinity, entrywise.
inline Report collapse_check(const EquivariantChainComplex& x, std::int64_t p, int depth = -1) {
  FilteredTotal ft(x, p, Filtration::I);
  const SpectralPage e2 = ft.page(2, depth);
  const SpectralPage einf = ft.e_infinity(depth);
  Report rep;
  rep.title = "collapse of page I at E2 over Z/" + std::to_string(p);
  std::vector<std::string> bad;
  for (int s = e2.p_min; s <= e2.p_max; ++s)
    for (int t = e2.q_min; t <= e2.q_max; ++t)
      if (e2.dim(s, t) != einf.dim(s, t))
        bad.push_back("(" + std::to_string(s) + "," + std::to_string(t) + "): E2 " + std::to_string(e2.dim(s, t)) + " vs Einf " +
                      std::to_string(einf.dim(s, t)));
  rep.add("E2 = Einf", bad.empty(), bad.empty() ? "" : std::to_string(bad.size()) + " cell(s) differ", bad);
  return rep;
}

// Integral page I rows for r = 1, 2 from the cyclic-cohomology closed forms:
// E^1_{s,t} = H^{-t}(G; C_s), E^2 = homology of the row complex under d.
inline std::vector<AbelianGroup> integral_page_I(const EquivariantChainComplex& x, int r, int t) {
  if (r != 1 && r != 2) throw Error(ErrorCode::BadParameter, "integral pages are exposed for r = 1, 2 only");
  if (t > 0) throw Error(ErrorCode::BadParameter, "rows have t <= 0");
  const TotalComplex tot(x);
  const std::size_t order = x.group.order();
  const std::size_t g = *x.group.generator();
  const int q = -t;
  // Row module in degree s: generators = cocycles, relations = coboundaries.
  std::vector<IntMatrix> cocycles;
  std::vector<Presentation> rows;
  std::vector<AbelianGroup> e1;
  for (int s = 0; s <= x.top(); ++s) {
    const IntMatrix out = tot.vertical(s, q);
    const IntMatrix kernel = kernel_basis(out);
    IntMatrix rel(kernel.cols(), 0);
    if (q > 0) {
      const IntMatrix in = tot.vertical(s, q - 1);
      IntMatrix coords(kernel.cols(), in.cols());
      for (std::size_t j = 0; j < in.cols(); ++j) {
        auto c = solve(kernel, in.column(j));
        if (!c) throw Error(ErrorCode::IllDefined, "coboundary outside the cocycles");
        for (std::size_t i = 0; i < c->size(); ++i) coords(i, j) = (*c)[i];
      }
      rel = coords;
    }
    cocycles.push_back(kernel);
    rows.push_back(Presentation{kernel.cols(), rel});
    e1.push_back(r == 1 ? cyclic_cohomology(x.action_matrix(g, s), order, q) : AbelianGroup{});
  }
  if (r == 1) return e1;
  // d_1 induced by the boundary in cocycle coordinates.
  std::vector<GroupHom> d(static_cast<std::size_t>(x.top() + 2));
  for (int s = 0; s <= x.top() + 1; ++s) {
    const Presentation src = s <= x.top() ? rows[static_cast<std::size_t>(s)] : Presentation::free(0);
    const Presentation dst = s >= 1 ? rows[static_cast<std::size_t>(s - 1)] : Presentation::free(0);
    IntMatrix m(dst.generators, src.generators);
    if (s >= 1 && s <= x.top()) {
      const IntMatrix image = x.chains.boundary(s) * cocycles[static_cast<std::size_t>(s)];
      for (std::size_t j = 0; j < image.cols(); ++j) {
        auto c = solve(cocycles[static_cast<std::size_t>(s - 1)], image.column(j));
        if (!c) throw Error(ErrorCode::IllDefined, "boundary of a cocycle is not a cocycle");
        for (std::size_t i = 0; i < c->size(); ++i) m(i, j) = (*c)[i];
      }
    }
    d[static_cast<std::size_t>(s)] = GroupHom{src, dst, m};
  }
  std::vector<AbelianGroup> e2;
  for (int s = 0; s <= x.top(); ++s) e2.push_back(homology_at(d[static_cast<std::size_t>(s + 1)], d[static_cast<std::size_t>(s)]));
  return e2;
}

}  // namespace equichain
