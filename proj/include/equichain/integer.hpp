#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equichain {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

// Thrown by the checked 64-bit fast path; callers retry with Int.
struct Overflow : std::overflow_error {
  Overflow() : std::overflow_error("64-bit overflow") {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow();
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
  return r;
}

inline bool fits_int64(const Int& v) {
  return v >= std::numeric_limits<std::int64_t>::min() + 1 &&
         v <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_string(const Int& v) { return v.str(); }

// Least nonnegative residue.
inline std::int64_t mod_reduce(const Int& v, std::int64_t p) {
  Int r = v % p;
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r);
}

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t result = 1 % p;
  base = mod_reduce(base, p);
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::int64_t>((__int128)result * base % p);
    base = static_cast<std::int64_t>((__int128)base * base % p);
    exp >>= 1;
  }
  return result;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  return mod_pow(a, p - 2, p);
}

}  // namespace equichain
