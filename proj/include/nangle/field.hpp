#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "nangle/errors.hpp"

namespace nangle {

using Rng = std::mt19937_64;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Integers modulo a prime p < 2^31, stored in canonical form 0 <= v < p.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  /// Placeholder used only by default-constructed (empty) matrices.
  PrimeField() : p_(2) {}
  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p >= (1ull << 31) || !is_prime(p))
      throw InputError("characteristic " + std::to_string(p) + " is not a supported prime");
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint64_t size() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }

  value_type from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  /// Canonical representative in [0, p).
  std::int64_t to_int(value_type a) const { return a; }
  std::string to_string(value_type a) const { return std::to_string(a); }

  value_type random(Rng& rng) const { return static_cast<value_type>(rng() % p_); }
  value_type random_nonzero(Rng& rng) const { return static_cast<value_type>(1 + rng() % (p_ - 1)); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

/// Exact rationals, always stored as reduced fractions.
class RationalField {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  std::uint32_t characteristic() const { return 0; }
  std::uint64_t size() const { return 0; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_one(const value_type& a) const { return a == 1; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return value_type(1) / a;
  }

  value_type from_int(std::int64_t v) const { return value_type(v); }
  std::string to_string(const value_type& a) const { return a.str(); }

  /// Small integers in [-2, 2]; keeps sampled data readable.
  value_type random(Rng& rng) const { return value_type(static_cast<std::int64_t>(rng() % 5) - 2); }
  value_type random_nonzero(Rng& rng) const {
    std::int64_t v = static_cast<std::int64_t>(rng() % 4);
    return value_type(v < 2 ? v - 2 : v - 1);
  }

  bool operator==(const RationalField&) const { return true; }
};

}  // namespace nangle
