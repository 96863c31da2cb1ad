#pragma once

#include "equichain/error.hpp"
#include "equichain/matrix.hpp"
#include "equichain/ring.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace equichain {

namespace detail {

enum Track : unsigned {
  kTrackNone = 0,
  kTrackLeft = 1,
  kTrackLeftInverse = 2,
  kTrackRight = 4,
  kTrackRightInverse = 8,
};

// Smith reduction U*A*V = D over a Euclidean ring. Only the requested
// transforms are accumulated.
template <class Ring>
struct SmithWork {
  using T = typename Ring::value_type;

  Matrix<T> a;
  Matrix<T> u, u_inv, v, v_inv;
  std::vector<T> pivots;  // nonzero diagonal entries, normalized
};

template <class Ring>
class SmithReducer {
 public:
  using T = typename Ring::value_type;

  SmithReducer(const Ring& ring, SmithWork<Ring>& w, unsigned track)
      : R(ring), w(w), m(w.a.rows()), n(w.a.cols()) {
    if (track & kTrackLeft) w.u = Matrix<T>::identity(m);
    if (track & kTrackLeftInverse) w.u_inv = Matrix<T>::identity(m);
    if (track & kTrackRight) w.v = Matrix<T>::identity(n);
    if (track & kTrackRightInverse) w.v_inv = Matrix<T>::identity(n);
    track_u = track & kTrackLeft;
    track_ui = track & kTrackLeftInverse;
    track_v = track & kTrackRight;
    track_vi = track & kTrackRightInverse;
  }

  void run() {
    auto& A = w.a;
    const std::size_t steps = std::min(m, n);
    for (t = 0; t < steps; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(pi, pj)) break;
      if (pi != t) row_swap(t, pi);
      if (pj != t) col_swap(t, pj);
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (R.is_zero(A(i, t))) continue;
          row_add(i, t, R.neg(R.quo(A(i, t), A(t, t))));
          if (!R.is_zero(A(i, t))) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (R.is_zero(A(t, j))) continue;
          col_add(j, t, R.neg(R.quo(A(t, j), A(t, t))));
          if (!R.is_zero(A(t, j))) dirty = true;
        }
        if (dirty) {
          promote_remainder();
          continue;
        }
        if (!R.is_unit(A(t, t)) && fix_divisibility()) continue;
        break;
      }
      const T unit = R.normalizer(A(t, t));
      if (unit != T(1)) row_scale(t, unit);
      w.pivots.push_back(A(t, t));
    }
  }

 private:
  // Smallest norm, then lowest row-major index.
  bool find_pivot(std::size_t& pi, std::size_t& pj) const {
    const auto& A = w.a;
    bool found = false;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const T& x = A(i, j);
        if (R.is_zero(x)) continue;
        if (!found || R.norm_less(x, A(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
          if (R.is_unit(x)) return true;
        }
      }
    return found;
  }

  void promote_remainder() {
    const auto& A = w.a;
    std::size_t best_i = t, best_j = t;
    bool in_column = true, found = false;
    for (std::size_t i = t + 1; i < m; ++i)
      if (!R.is_zero(A(i, t)) && (!found || R.norm_less(A(i, t), A(best_i, best_j)))) {
        best_i = i;
        best_j = t;
        found = true;
      }
    for (std::size_t j = t + 1; j < n; ++j)
      if (!R.is_zero(A(t, j)) && (!found || R.norm_less(A(t, j), A(best_i, best_j)))) {
        best_i = t;
        best_j = j;
        in_column = false;
        found = true;
      }
    if (in_column)
      row_swap(t, best_i);
    else
      col_swap(t, best_j);
  }

  bool fix_divisibility() {
    const auto& A = w.a;
    for (std::size_t i = t + 1; i < m; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (!R.is_zero(A(i, j)) && !R.divides(A(t, t), A(i, j))) {
          row_add(t, i, T(1));
          return true;
        }
    return false;
  }

  // row_i += c * row_src
  void row_add(std::size_t i, std::size_t src, const T& c) {
    auto& A = w.a;
    for (std::size_t j = t; j < n; ++j)
      if (!R.is_zero(A(src, j))) A(i, j) = R.add(A(i, j), R.mul(c, A(src, j)));
    if (track_u)
      for (std::size_t j = 0; j < m; ++j)
        if (!R.is_zero(w.u(src, j))) w.u(i, j) = R.add(w.u(i, j), R.mul(c, w.u(src, j)));
    if (track_ui) {
      const T nc = R.neg(c);
      for (std::size_t r = 0; r < m; ++r)
        if (!R.is_zero(w.u_inv(r, i))) w.u_inv(r, src) = R.add(w.u_inv(r, src), R.mul(nc, w.u_inv(r, i)));
    }
  }

  // col_j += c * col_src
  void col_add(std::size_t j, std::size_t src, const T& c) {
    auto& A = w.a;
    for (std::size_t i = t; i < m; ++i)
      if (!R.is_zero(A(i, src))) A(i, j) = R.add(A(i, j), R.mul(c, A(i, src)));
    if (track_v)
      for (std::size_t r = 0; r < n; ++r)
        if (!R.is_zero(w.v(r, src))) w.v(r, j) = R.add(w.v(r, j), R.mul(c, w.v(r, src)));
    if (track_vi) {
      const T nc = R.neg(c);
      for (std::size_t k = 0; k < n; ++k)
        if (!R.is_zero(w.v_inv(j, k))) w.v_inv(src, k) = R.add(w.v_inv(src, k), R.mul(nc, w.v_inv(j, k)));
    }
  }

  void row_swap(std::size_t i, std::size_t k) {
    auto& A = w.a;
    for (std::size_t j = t; j < n; ++j) std::swap(A(i, j), A(k, j));
    if (track_u)
      for (std::size_t j = 0; j < m; ++j) std::swap(w.u(i, j), w.u(k, j));
    if (track_ui)
      for (std::size_t r = 0; r < m; ++r) std::swap(w.u_inv(r, i), w.u_inv(r, k));
  }

  void col_swap(std::size_t j, std::size_t k) {
    auto& A = w.a;
    for (std::size_t i = t; i < m; ++i) std::swap(A(i, j), A(i, k));
    if (track_v)
      for (std::size_t r = 0; r < n; ++r) std::swap(w.v(r, j), w.v(r, k));
    if (track_vi)
      for (std::size_t c = 0; c < n; ++c) std::swap(w.v_inv(j, c), w.v_inv(k, c));
  }

  void row_scale(std::size_t i, const T& unit) {
    auto& A = w.a;
    for (std::size_t j = t; j < n; ++j) A(i, j) = R.mul(unit, A(i, j));
    if (track_u)
      for (std::size_t j = 0; j < m; ++j) w.u(i, j) = R.mul(unit, w.u(i, j));
    if (track_ui) {
      const T inv = R.unit_inverse(unit);
      for (std::size_t r = 0; r < m; ++r) w.u_inv(r, i) = R.mul(w.u_inv(r, i), inv);
    }
  }

  const Ring& R;
  SmithWork<Ring>& w;
  std::size_t m, n, t = 0;
  bool track_u = false, track_ui = false, track_v = false, track_vi = false;
};

template <class Ring>
Matrix<typename Ring::value_type> convert_in(const IntMatrix& a, const Ring& R) {
  Matrix<typename Ring::value_type> out(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) out.data()[k] = R.from_int(a.data()[k]);
  return out;
}

template <class Ring>
IntMatrix convert_out(const Matrix<typename Ring::value_type>& a, const Ring& R) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) out.data()[k] = R.to_int(a.data()[k]);
  return out;
}

// Result of a Smith reduction with entries lifted back to Int.
struct SmithData {
  IntMatrix u, u_inv, v, v_inv;
  std::vector<Int> pivots;  // nonzero, normalized; length = rank
  std::size_t rank() const { return pivots.size(); }
};

template <class Ring>
SmithData smith_over(const IntMatrix& a, const Ring& R, unsigned track) {
  SmithWork<Ring> w;
  w.a = convert_in(a, R);
  SmithReducer<Ring>(R, w, track).run();
  SmithData out;
  if (track & kTrackLeft) out.u = convert_out(w.u, R);
  if (track & kTrackLeftInverse) out.u_inv = convert_out(w.u_inv, R);
  if (track & kTrackRight) out.v = convert_out(w.v, R);
  if (track & kTrackRightInverse) out.v_inv = convert_out(w.v_inv, R);
  for (const auto& p : w.pivots) out.pivots.push_back(R.to_int(p));
  return out;
}

// Integer Smith reduction: 64-bit fast path, arbitrary precision on overflow.
inline SmithData smith_integers(const IntMatrix& a, unsigned track) {
  try {
    return smith_over(a, rings::CheckedIntegers{}, track);
  } catch (const Overflow&) {
    return smith_over(a, rings::BigIntegers{}, track);
  }
}

inline void require_modulus(std::int64_t modulus) {
  if (modulus != 0 && !is_prime(modulus))
    throw Error(ErrorCode::CompositeModulus, "modulus " + std::to_string(modulus) + " is neither 0 nor prime");
}

// modulus 0 = integers, otherwise a prime field.
inline SmithData smith_any(const IntMatrix& a, std::int64_t modulus, unsigned track) {
  require_modulus(modulus);
  if (modulus == 0) return smith_integers(a, track);
  return smith_over(a, rings::PrimeField(modulus), track);
}

}  // namespace detail

struct SmithForm {
  IntMatrix D, U, V;
  std::vector<Int> pivots;  // diagonal of D, length min(rows, cols); zeros trail
  std::size_t rank = 0;
};

inline SmithForm smith_normal_form(const IntMatrix& a) {
  auto s = detail::smith_integers(a, detail::kTrackLeft | detail::kTrackRight);
  SmithForm f;
  f.U = std::move(s.u);
  f.V = std::move(s.v);
  f.rank = s.rank();
  f.D = IntMatrix(a.rows(), a.cols());
  const std::size_t k = std::min(a.rows(), a.cols());
  f.pivots.assign(k, Int(0));
  for (std::size_t i = 0; i < s.rank(); ++i) {
    f.pivots[i] = s.pivots[i];
    f.D(i, i) = s.pivots[i];
  }
  return f;
}

// Columns span ker(A) over Z (a saturated basis) or over Z/p.
inline IntMatrix kernel_basis(const IntMatrix& a, std::int64_t modulus = 0) {
  auto s = detail::smith_any(a, modulus, detail::kTrackRight);
  std::vector<std::size_t> idx;
  for (std::size_t j = s.rank(); j < a.cols(); ++j) idx.push_back(j);
  return s.v.select_columns(idx);
}

inline std::size_t rank(const IntMatrix& a, std::int64_t modulus = 0) {
  return detail::smith_any(a, modulus, detail::kTrackNone).rank();
}

// Some x with A x = b (mod p when modulus != 0), chosen by back-substitution
// through the Smith form; nullopt when no solution exists.
inline std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b, std::int64_t modulus = 0) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  auto s = detail::smith_any(a, modulus, detail::kTrackLeft | detail::kTrackRight);
  IntVector rhs = modulus ? reduce_mod(b, modulus) : b;
  IntVector y = s.u * rhs;
  IntVector z(a.cols(), Int(0));
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (modulus) y[i] = mod_reduce(y[i], modulus);
    if (i < s.rank()) {
      if (modulus) {
        z[i] = mod_reduce(y[i] * mod_inverse(static_cast<std::int64_t>(s.pivots[i]), modulus), modulus);
      } else {
        if (!(y[i] % s.pivots[i]).is_zero()) return std::nullopt;
        z[i] = y[i] / s.pivots[i];
      }
    } else if (!y[i].is_zero()) {
      return std::nullopt;
    }
  }
  IntVector x = s.v * z;
  return modulus ? reduce_mod(x, modulus) : x;
}

// Rank over Q by fraction-free (Bareiss) elimination; independent of the
// Smith reduction path.
inline std::size_t rational_rank(const IntMatrix& a) {
  IntMatrix m = a;
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace equichain
