#pragma once

// Independent reference computations for the test suite. Nothing here calls
// the library's reduction code: ranks use textbook elimination, invariant
// factors come from determinantal divisors.

#include "equichain/equichain.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using equichain::Int;
using equichain::IntMatrix;
using Rational = boost::multiprecision::cpp_rational;

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Determinant by cofactor expansion along the first row.
inline Int det(const std::vector<std::vector<Int>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<Int>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    total += (j % 2 == 0 ? Int(1) : Int(-1)) * m[0][j] * det(minor);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors (nonzero diagonal of the Smith form) via d_k = gcd of k x k minors.
// Only for small matrices.
inline std::vector<Int> invariant_factors(const IntMatrix& a) {
  std::vector<Int> out;
  Int prev = 1;
  const std::size_t top = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= top; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    Int g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a(r[i], c[j]);
        g = gcd(g, det(m));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Cokernel of a small matrix from its determinantal divisors.
inline equichain::AbelianGroup cokernel(const IntMatrix& a) {
  equichain::AbelianGroup g;
  const auto f = invariant_factors(a);
  g.free_rank = a.rows() - f.size();
  for (const auto& d : f)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

inline std::size_t rank_mod(const IntMatrix& a, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> m(a.rows(), std::vector<std::int64_t>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Int v = a(i, j) % p;
      if (v < 0) v += p;
      m[i][j] = static_cast<std::int64_t>(v);
    }
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, b = x, e = p - 2;
    while (e > 0) {
      if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % p);
      b = static_cast<std::int64_t>((__int128)b * b % p);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t s = inv(m[rank][c]);
    for (auto& v : m[rank]) v = static_cast<std::int64_t>((__int128)v * s % p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const std::int64_t f = m[i][c];
      for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = ((m[i][j] - (__int128)f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_q(const IntMatrix& a) {
  std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = Rational(a(i, j));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < a.cols(); ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// dim H_k(C; Z/p) = dim C_k - rank d_k - rank d_{k+1}.
inline std::vector<std::size_t> betti_mod(const equichain::ChainComplex& c, std::int64_t p) {
  std::vector<std::size_t> out;
  for (int k = 0; k <= c.top(); ++k) {
    const std::size_t in = k + 1 <= c.top() ? rank_mod(c.boundary(k + 1), p) : 0;
    const std::size_t outgoing = k >= 1 ? rank_mod(c.boundary(k), p) : 0;
    out.push_back(c.cells[static_cast<std::size_t>(k)] - in - outgoing);
  }
  return out;
}

inline std::vector<std::size_t> betti_q(const equichain::ChainComplex& c) {
  std::vector<std::size_t> out;
  for (int k = 0; k <= c.top(); ++k) {
    const std::size_t in = k + 1 <= c.top() ? rank_q(c.boundary(k + 1)) : 0;
    const std::size_t outgoing = k >= 1 ? rank_q(c.boundary(k)) : 0;
    out.push_back(c.cells[static_cast<std::size_t>(k)] - in - outgoing);
  }
  return out;
}

// Random unimodular matrix as a product of elementary operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  IntMatrix m = IntMatrix::identity(n);
  if (n == 0) return m;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = rng() % n, j = rng() % n;
    if (n > 1 && i == j) continue;
    if (n == 1 || rng() % 4 == 0) {
      for (std::size_t c = 0; c < n; ++c) m(i, c) = -m(i, c);
    } else {
      const int f = coef(rng);
      for (std::size_t c = 0; c < n; ++c) m(i, c) += f * m(j, c);
    }
  }
  return m;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

// Number of fuzz cases; EQUICHAIN_FUZZ_COUNT overrides.
inline std::size_t fuzz_count(std::size_t fallback) {
  if (const char* s = std::getenv("EQUICHAIN_FUZZ_COUNT")) return static_cast<std::size_t>(std::stoul(s));
  return fallback;
}

inline std::uint64_t fuzz_seed() {
  if (const char* s = std::getenv("EQUICHAIN_SEED")) return std::stoull(s);
  return 20240601;
}

// Every builtin spec whose group has prime order.
inline std::vector<std::string> prime_order_builtins() {
  std::vector<std::string> out;
  for (const auto& name : equichain::spaces::builtin_corpus())
    if (equichain::is_prime(static_cast<std::int64_t>(equichain::spaces::parse_builtin(name).group.order()))) out.push_back(name);
  return out;
}

}  // namespace oracle
