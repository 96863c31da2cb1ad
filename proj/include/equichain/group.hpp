#pragma once

#include "equichain/error.hpp"
#include "equichain/integer.hpp"

#include <cstddef>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace equichain {

// A finite group given by its multiplication table. Elements are indices
// 0..n-1 with 0 the identity; table[g][h] = gh.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(cyclic(1)) {}

  static FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::BadParameter, "cyclic group of order 0");
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    FiniteGroup g(std::move(table));
    g.cyclic_label_ = true;
    g.generator_ = n > 1 ? 1 : 0;
    return g;
  }

  static FiniteGroup trivial() { return cyclic(1); }

  // Validates the group axioms; throws InvalidGroup naming the first failure.
  static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table) {
    FiniteGroup g(std::move(table));
    g.check_axioms();
    g.generator_ = g.find_generator();
    return g;
  }

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t identity() const noexcept { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

  // True when constructed as Z/n (element i = g^i).
  bool has_cyclic_label() const noexcept { return cyclic_label_; }
  // An element generating the whole group, when the group is cyclic.
  std::optional<std::size_t> generator() const { return generator_; }
  bool is_cyclic() const { return generator_.has_value(); }
  bool is_prime_cyclic() const { return is_prime(static_cast<std::int64_t>(order())); }

  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1, x = a;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  // g^k for the designated generator.
  std::size_t power(std::size_t a, std::size_t k) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < k; ++i) x = mul(x, a);
    return x;
  }

  // Greedy generating set in index order.
  std::vector<std::size_t> generators() const {
    if (generator_) return order() > 1 ? std::vector<std::size_t>{*generator_} : std::vector<std::size_t>{};
    std::vector<std::size_t> gens;
    std::vector<bool> in(order(), false);
    in[0] = true;
    for (std::size_t a = 1; a < order(); ++a) {
      if (in[a]) continue;
      gens.push_back(a);
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t x = 0; x < order(); ++x) {
          if (!in[x]) continue;
          for (std::size_t s : gens) {
            std::size_t y = mul(x, s);
            if (!in[y]) {
              in[y] = true;
              grew = true;
            }
          }
        }
      }
    }
    return gens;
  }

  bool is_subgroup(const std::vector<std::size_t>& elements) const {
    std::vector<bool> in(order(), false);
    for (auto e : elements) {
      if (e >= order()) return false;
      in[e] = true;
    }
    if (!in[0]) return false;
    for (auto a : elements) {
      if (!in[inverse(a)]) return false;
      for (auto b : elements)
        if (!in[mul(a, b)]) return false;
    }
    return true;
  }

  // The subgroup on the given elements, re-indexed in increasing element
  // order (identity first). Throws NotASubgroup.
  FiniteGroup subgroup(std::vector<std::size_t> elements) const {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!is_subgroup(elements)) throw Error(ErrorCode::NotASubgroup, "element set is not closed under multiplication and inverse");
    std::vector<std::size_t> index(order(), 0);
    for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;
    std::vector<std::vector<std::size_t>> t(elements.size(), std::vector<std::size_t>(elements.size()));
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = 0; j < elements.size(); ++j) t[i][j] = index[mul(elements[i], elements[j])];
    FiniteGroup h(std::move(t));
    h.generator_ = h.find_generator();
    return h;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

  std::string describe() const {
    if (cyclic_label_) return "Z/" + std::to_string(order());
    return "group of order " + std::to_string(order());
  }

 private:
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n && b < table_[a].size(); ++b)
        if (table_[a][b] == 0) inverse_[a] = b;
  }

  void check_axioms() const {
    const std::size_t n = table_.size();
    if (n == 0) throw Error(ErrorCode::InvalidGroup, "group of order 0");
    for (std::size_t a = 0; a < n; ++a) {
      if (table_[a].size() != n)
        throw Error(ErrorCode::InvalidGroup, "multiplication table row " + std::to_string(a) + " has wrong length");
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] >= n)
          throw Error(ErrorCode::InvalidGroup, "multiplication table entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    for (std::size_t a = 0; a < n; ++a)
      if (table_[0][a] != a || table_[a][0] != a)
        throw Error(ErrorCode::InvalidGroup, "element 0 is not a two-sided identity at " + std::to_string(a));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
            throw Error(ErrorCode::InvalidGroup, "multiplication table not associative at (" + std::to_string(i) + "," +
                                                     std::to_string(j) + "," + std::to_string(k) + ")");
    for (std::size_t a = 0; a < n; ++a) {
      bool found = false;
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == 0 && table_[b][a] == 0) found = true;
      if (!found) throw Error(ErrorCode::InvalidGroup, "element " + std::to_string(a) + " has no inverse");
    }
  }

  std::optional<std::size_t> find_generator() const {
    if (order() == 1) return 0;
    for (std::size_t a = 1; a < order(); ++a)
      if (element_order(a) == order()) return a;
    return std::nullopt;
  }

  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  bool cyclic_label_ = false;
  std::optional<std::size_t> generator_;
};

}  // namespace equichain
