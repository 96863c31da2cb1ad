#pragma once

#include "equichain/integer.hpp"
#include "equichain/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

// Dense linear algebra over Z/p on 64-bit residues.
namespace equichain::fp {

using Vec = std::vector<std::int64_t>;

inline std::int64_t norm(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t inv(std::int64_t a, std::int64_t p) { return mod_inverse(norm(a, p), p); }

// Row-major residue matrix.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Vec> data;  // data[i] is row i

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r, Vec(c, 0)) {}

  static Mat from(const IntMatrix& a, std::int64_t p) {
    Mat m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m.data[i][j] = mod_reduce(a(i, j), p);
    return m;
  }

  Vec apply(const Vec& v, std::int64_t p) const {
    Vec out(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < cols; ++j)
        if (data[i][j] && v[j]) s = (s + data[i][j] * v[j]) % p;
      out[i] = s;
    }
    return out;
  }
};

// Basis of the null space of the submatrix on the given rows and columns,
// returned as vectors of length a.cols (zero off the selected columns).
inline std::vector<Vec> kernel(const Mat& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                               std::int64_t p) {
  const std::size_t m = rows.size(), n = cols.size();
  std::vector<Vec> r(m, Vec(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = a.data[rows[i]][cols[j]];
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t piv = row;
    while (piv < m && r[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(r[piv], r[row]);
    const std::int64_t f = inv(r[row][c], p);
    for (auto& x : r[row]) x = x * f % p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r[i][c] == 0) continue;
      const std::int64_t g = r[i][c];
      for (std::size_t j = c; j < n; ++j) r[i][j] = norm(r[i][j] - g * r[row][j], p);
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(a.cols, 0);
    v[cols[f]] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[cols[pivot_col[i]]] = norm(-r[i][f], p);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<Vec> kernel(const Mat& a, std::int64_t p) {
  std::vector<std::size_t> rows(a.rows), cols(a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) rows[i] = i;
  for (std::size_t j = 0; j < a.cols; ++j) cols[j] = j;
  return kernel(a, rows, cols, p);
}

// Incrementally built span. Every inserted vector gets a generator index;
// coordinates() expresses a vector in terms of the inserted generators.
class Span {
 public:
  Span(std::size_t n, std::int64_t p, bool track = true) : n_(n), p_(p), track_(track) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t generators() const { return count_; }

  // True when v was independent of the previous generators.
  bool insert(const Vec& v) {
    Vec a;
    Vec r = reduce(v, a);
    const std::size_t idx = count_++;
    if (track_)
      for (auto& c : combo_) c.resize(count_, 0);
    std::size_t piv = 0;
    while (piv < n_ && r[piv] == 0) ++piv;
    if (piv == n_) return false;
    const std::int64_t f = inv(r[piv], p_);
    for (auto& x : r) x = x * f % p_;
    Vec c;
    if (track_) {
      c.assign(count_, 0);
      for (std::size_t j = 0; j < a.size(); ++j) c[j] = norm(-a[j] * f, p_);
      c[idx] = f;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    combo_.push_back(std::move(c));
    return true;
  }

  bool contains(const Vec& v) const {
    Vec a;
    const Vec r = reduce(v, a);
    for (auto x : r)
      if (x) return false;
    return true;
  }

  // v minus its component in the span, zero at every pivot.
  Vec residual(const Vec& v) const {
    Vec a;
    return reduce(v, a);
  }

  // Needs tracking.
  std::optional<Vec> coordinates(const Vec& v) const {
    Vec a;
    const Vec r = reduce(v, a);
    for (auto x : r)
      if (x) return std::nullopt;
    return a;
  }

 private:
  // Returns v - sum a_j gen_j with zero entries at every pivot.
  Vec reduce(const Vec& v, Vec& a) const {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = norm(v[i], p_);
    a.assign(track_ ? count_ : 0, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::int64_t f = r[pivots_[i]];
      if (!f) continue;
      for (std::size_t j = pivots_[i]; j < n_; ++j)
        if (rows_[i][j]) r[j] = norm(r[j] - f * rows_[i][j], p_);
      if (track_)
        for (std::size_t j = 0; j < combo_[i].size(); ++j)
          if (combo_[i][j]) a[j] = (a[j] + f * combo_[i][j]) % p_;
    }
    return r;
  }

  std::size_t n_;
  std::int64_t p_;
  bool track_ = true;
  std::size_t count_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> combo_;
};

inline std::size_t rank_of(const std::vector<Vec>& vs, std::size_t n, std::int64_t p) {
  Span s(n, p, false);
  for (const auto& v : vs) s.insert(v);
  return s.rank();
}

}  // namespace equichain::fp
