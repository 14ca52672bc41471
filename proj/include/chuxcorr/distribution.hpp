// How the maximum cross-correlation magnitude is distributed over the whole
// Chu family of length N.
//
// For a reference root s, every root r lands at x = gcd(r - s, N), a divisor
// of N, and its peak magnitude against s is sqrt(N*x). The count at each x is
// independent of s and factors over the primes of N.

#pragma once

#include <chuxcorr/numtheory.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chuxcorr {

/// divisor x of N -> number of roots r with gcd(r - s, N) = x.
/// Every divisor of N has an entry (possibly zero); nothing else is stored.
struct MaxCorrDistribution {
  Int n = 0;
  std::optional<Int> reference_root; // unset for the closed form
  std::map<Int, Int> counts;

  Int count(Int x) const {
    auto it = counts.find(x);
    return it == counts.end() ? 0 : it->second;
  }

  Int total() const {
    Int t = 0;
    for (const auto &[x, c] : counts)
      t += c;
    return t;
  }

  /// Same counts at every divisor. The reference root is not compared.
  bool same_counts(const MaxCorrDistribution &other) const {
    return n == other.n && counts == other.counts;
  }
};

/// Per-prime factors for one divisor x = prod_{i in M_x} p_i^{n_i}.
struct DivisorCountTerm {
  struct Factor {
    Int prime;
    int exponent_in_n;    // c_i
    int exponent_in_x;    // n_i(x), 0 when p_i does not divide x
    Int value;            // phi_x(i) if p_i | x, Phi_x(i) otherwise
  };

  Int x = 1;
  std::vector<Factor> factors;

  Int product() const {
    Int p = 1;
    for (const auto &f : factors)
      p *= f.value;
    return p;
  }
};

namespace detail {

inline void require_length(Int n) {
  if (n < 2)
    throw std::invalid_argument("length must be >= 2, got " + std::to_string(n));
}

// p^{c-n} - [c != n] * p^{c-n-1}: roots whose difference carries exactly p^n.
inline Int prime_divides_factor(Int p, int c, int n) {
  const int e = c - n;
  return e == 0 ? 1 : ipow(p, e) - ipow(p, e - 1);
}

// p^c - 2p^{c-1}: roots whose difference is coprime to p.
inline Int prime_coprime_factor(Int p, int c) { return ipow(p, c) - 2 * ipow(p, c - 1); }

} // namespace detail

/// Product-form factors for divisor x of N. Throws if x does not divide N.
inline DivisorCountTerm divisor_count_term(const Factorization &f, Int x) {
  if (x < 1 || f.n % x != 0)
    throw std::invalid_argument(std::to_string(x) + " does not divide " + std::to_string(f.n));
  DivisorCountTerm term;
  term.x = x;
  Int rest = x;
  for (const auto &[p, c] : f.factors) {
    int nx = 0;
    while (rest % p == 0) {
      rest /= p;
      ++nx;
    }
    const Int value = nx > 0 ? detail::prime_divides_factor(p, c, nx) : detail::prime_coprime_factor(p, c);
    term.factors.push_back({p, c, nx, value});
  }
  return term;
}

/// Count roots per gcd(r - s, N) by scanning the unit group.
inline MaxCorrDistribution distribution_bruteforce(Int n, Int s) {
  detail::require_length(n);
  if (!is_unit(s, n))
    throw std::invalid_argument("reference root " + std::to_string(s) + " is not a unit modulo " +
                                std::to_string(n));
  MaxCorrDistribution out;
  out.n = n;
  out.reference_root = s;
  for (Int x : divisors(n))
    out.counts[x] = 0;
  for (Int r = 1; r < n; ++r) {
    if (gcd(r, n) != 1)
      continue;
    const Int x = gcd(r - s, n);
    auto it = out.counts.find(x);
    if (it == out.counts.end()) // gcd(., N) always divides N
      throw std::logic_error("gcd produced a non-divisor of N");
    ++it->second;
  }
  return out;
}

/// Product formula over the prime factorization; no reference root needed.
inline MaxCorrDistribution distribution_closed(Int n) {
  detail::require_length(n);
  const Factorization f = factorize(n);
  MaxCorrDistribution out;
  out.n = n;
  for (Int x : divisors(f))
    out.counts[x] = divisor_count_term(f, x).product();
  return out;
}

/// Count at x from the prime, squarefree or prime-power special formulas.
/// Zero when x does not divide N. Throws for other shapes of N.
inline Int special_case_count(Int n, Int x) {
  detail::require_length(n);
  if (x < 1)
    throw std::invalid_argument("x must be >= 1");
  const Factorization f = factorize(n);
  if (n % x != 0)
    return 0;

  if (f.prime())
    return x == n ? 1 : (x == 1 ? n - 2 : 0);

  if (f.squarefree()) {
    if (x == n)
      return 1;
    Int prod = 1;
    for (const auto &[p, c] : f.factors)
      if (x % p != 0)
        prod *= p - 2;
    return prod;
  }

  if (f.prime_power()) {
    const auto [p, c] = f.factors.front();
    if (x == 1)
      return detail::prime_coprime_factor(p, c);
    int nx = 0;
    for (Int y = x; y % p == 0; y /= p)
      ++nx;
    return detail::prime_divides_factor(p, c, nx);
  }

  throw std::invalid_argument("special_case_count: " + std::to_string(n) +
                              " is neither prime, squarefree nor a prime power");
}

struct UniformityReport {
  bool uniform = true;
  std::optional<Int> counterexample_root; // first s whose counts differ from s = 1
};

/// Brute-force distribution for every reference root agrees with s = 1.
inline UniformityReport verify_uniformity(Int n) {
  detail::require_length(n);
  const MaxCorrDistribution base = distribution_bruteforce(n, 1);
  for (Int s = 2; s < n; ++s) {
    if (gcd(s, n) != 1)
      continue;
    if (!distribution_bruteforce(n, s).same_counts(base))
      return {false, s};
  }
  return {};
}

} // namespace chuxcorr
