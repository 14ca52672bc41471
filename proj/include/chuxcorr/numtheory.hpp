// Integer primitives: factorization, gcd, Euler's totient, divisors and the
// unit group of Z/nZ. Everything is exact 64-bit arithmetic.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chuxcorr {

using Int = std::int64_t;

struct PrimePower {
  Int prime;
  int exponent;

  friend bool operator==(const PrimePower &, const PrimePower &) = default;
};

/// Prime-power decomposition n = prod p_i^c_i with p_1 < p_2 < ... < p_k.
struct Factorization {
  Int n = 1;
  std::vector<PrimePower> factors;

  bool squarefree() const {
    for (const auto &f : factors)
      if (f.exponent > 1)
        return false;
    return true;
  }
  bool prime_power() const { return factors.size() == 1; }
  bool prime() const { return factors.size() == 1 && factors[0].exponent == 1; }

  /// Number of divisors, prod (c_i + 1).
  Int divisor_count() const {
    Int d = 1;
    for (const auto &f : factors)
      d *= f.exponent + 1;
    return d;
  }
};

namespace detail {

inline void require_positive(Int n, const char *what) {
  if (n < 1)
    throw std::invalid_argument(std::string(what) + ": argument must be >= 1, got " +
                                std::to_string(n));
}

inline Int ipow(Int base, int exp) {
  Int r = 1;
  while (exp-- > 0)
    r *= base;
  return r;
}

// a*b mod m without overflow for any 64-bit operands, m > 0.
inline Int mulmod(Int a, Int b, Int m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0)
    r += m;
  return static_cast<Int>(r);
}

inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

} // namespace detail

/// gcd over all integers; the sign of the arguments is ignored.
constexpr Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Deterministic trial division up to sqrt(n).
inline Factorization factorize(Int n) {
  detail::require_positive(n, "factorize");
  Factorization out;
  out.n = n;
  Int m = n;
  auto take = [&](Int p) {
    int c = 0;
    while (m % p == 0) {
      m /= p;
      ++c;
    }
    if (c > 0)
      out.factors.push_back({p, c});
  };
  take(2);
  take(3);
  // 6k +/- 1 wheel; p <= m / p avoids overflow of p*p near 2^63.
  for (Int p = 5; p <= m / p; p += 6) {
    take(p);
    take(p + 2);
  }
  if (m > 1)
    out.factors.push_back({m, 1});
  return out;
}

inline Int euler_phi(const Factorization &f) {
  Int phi = 1;
  for (const auto &[p, c] : f.factors)
    phi *= detail::ipow(p, c - 1) * (p - 1);
  return phi;
}

inline Int euler_phi(Int n) {
  detail::require_positive(n, "euler_phi");
  return euler_phi(factorize(n));
}

/// All positive divisors in ascending order.
inline std::vector<Int> divisors(const Factorization &f) {
  std::vector<Int> out{1};
  for (const auto &[p, c] : f.factors) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int k = 1; k <= c; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i)
        out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Int> divisors(Int n) {
  detail::require_positive(n, "divisors");
  return divisors(factorize(n));
}

/// mu_n = { r : 0 < r < n, gcd(r, n) = 1 }, kept sorted.
class UnitGroup {
public:
  explicit UnitGroup(Int n) : n_(n) {
    if (n < 2)
      throw std::invalid_argument("unit_group: modulus must be >= 2, got " + std::to_string(n));
    for (Int r = 1; r < n; ++r)
      if (gcd(r, n) == 1)
        members_.push_back(r);
  }

  Int modulus() const { return n_; }
  const std::vector<Int> &members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Int r) const { return r > 0 && r < n_ && gcd(r, n_) == 1; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

private:
  Int n_;
  std::vector<Int> members_;
};

inline UnitGroup unit_group(Int n) { return UnitGroup(n); }

inline bool is_unit(Int r, Int n) { return r > 0 && r < n && gcd(r, n) == 1; }

/// "p^c·q·..." with U+00B7 between prime powers; exponent 1 is omitted.
inline std::string to_string(const Factorization &f) {
  if (f.factors.empty())
    return "1";
  std::string s;
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i > 0)
      s += "·";
    s += std::to_string(f.factors[i].prime);
    if (f.factors[i].exponent > 1)
      s += "^" + std::to_string(f.factors[i].exponent);
  }
  return s;
}

} // namespace chuxcorr
