#pragma once

#include "equichain/integer.hpp"

#include <cstdint>

// Coefficient rings for the generic elimination kernels. Each ring exposes
// the Euclidean structure the Smith reduction needs: a norm order for pivot
// choice, a quotient leaving a smaller remainder, and unit normalization.
namespace equichain::rings {

struct BigIntegers {
  using value_type = Int;

  bool is_zero(const Int& a) const { return a.is_zero(); }
  Int add(const Int& a, const Int& b) const { return a + b; }
  Int mul(const Int& a, const Int& b) const { return a * b; }
  Int neg(const Int& a) const { return -a; }
  bool norm_less(const Int& a, const Int& b) const { return abs(a) < abs(b); }
  bool is_unit(const Int& a) const { return a == 1 || a == -1; }
  Int quo(const Int& a, const Int& b) const { return a / b; }
  bool divides(const Int& a, const Int& b) const { return (b % a).is_zero(); }
  Int normalizer(const Int& a) const { return a < 0 ? Int(-1) : Int(1); }
  Int unit_inverse(const Int& u) const { return u; }
  Int from_int(const Int& v) const { return v; }
  Int to_int(const Int& v) const { return v; }
};

// 64-bit integers with overflow detection; the fast path for small entries.
struct CheckedIntegers {
  using value_type = std::int64_t;

  bool is_zero(std::int64_t a) const { return a == 0; }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return checked_add(a, b); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return checked_mul(a, b); }
  std::int64_t neg(std::int64_t a) const { return checked_sub(0, a); }
  bool norm_less(std::int64_t a, std::int64_t b) const { return magnitude(a) < magnitude(b); }
  bool is_unit(std::int64_t a) const { return a == 1 || a == -1; }
  std::int64_t quo(std::int64_t a, std::int64_t b) const {
    if (b == -1) return neg(a);
    return a / b;
  }
  bool divides(std::int64_t a, std::int64_t b) const { return a == -1 || b % a == 0; }
  std::int64_t normalizer(std::int64_t a) const { return a < 0 ? -1 : 1; }
  std::int64_t unit_inverse(std::int64_t u) const { return u; }
  std::int64_t from_int(const Int& v) const {
    if (!fits_int64(v)) throw Overflow();
    return static_cast<std::int64_t>(v);
  }
  Int to_int(std::int64_t v) const { return Int(v); }

 private:
  static std::uint64_t magnitude(std::int64_t a) {
    return a < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  }
};

// Z/p with representatives in [0, p).
struct PrimeField {
  using value_type = std::int64_t;
  std::int64_t p;

  explicit PrimeField(std::int64_t prime) : p(prime) {}

  bool is_zero(std::int64_t a) const { return a == 0; }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    std::int64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((__int128)a * b % p);
  }
  std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : p - a; }
  bool norm_less(std::int64_t, std::int64_t) const { return false; }
  bool is_unit(std::int64_t a) const { return a != 0; }
  std::int64_t quo(std::int64_t a, std::int64_t b) const { return mul(a, mod_inverse(b, p)); }
  bool divides(std::int64_t a, std::int64_t) const { return a != 0; }
  std::int64_t normalizer(std::int64_t a) const { return mod_inverse(a, p); }
  std::int64_t unit_inverse(std::int64_t u) const { return mod_inverse(u, p); }
  std::int64_t from_int(const Int& v) const { return mod_reduce(v, p); }
  Int to_int(std::int64_t v) const { return Int(v); }
};

}  // namespace equichain::rings
