// Test-only reference implementations. None of these share code paths with
// the library: sequences are built from floating phases with std::exp,
// number theory uses std::gcd and plain scans, cliques come from subset
// enumeration.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using Int = std::int64_t;
using Complex = std::complex<double>;

inline Int phi(Int n) {
  Int c = 0;
  for (Int k = 1; k <= n; ++k)
    c += std::gcd(k, n) == 1;
  return c;
}

inline std::vector<Int> divisors(Int n) {
  std::vector<Int> d;
  for (Int k = 1; k <= n; ++k)
    if (n % k == 0)
      d.push_back(k);
  return d;
}

inline std::vector<Int> units(Int n) {
  std::vector<Int> u;
  for (Int k = 1; k < n; ++k)
    if (std::gcd(k, n) == 1)
      u.push_back(k);
  return u;
}

/// a_r(k) straight from the defining formula, phase in long double.
inline std::vector<Complex> chu(Int n, Int r) {
  std::vector<Complex> a(static_cast<std::size_t>(n));
  for (Int k = 0; k < n; ++k) {
    const long double kk = static_cast<long double>(k);
    const long double q = (n % 2 == 0) ? kk * kk : kk * (kk + 1);
    const long double ang = std::numbers::pi_v<long double> * static_cast<long double>(r) * q /
                            static_cast<long double>(n);
    a[static_cast<std::size_t>(k)] = Complex(static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang)));
  }
  return a;
}

inline Complex xcorr(const std::vector<Complex> &a, const std::vector<Complex> &b, Int tau) {
  const Int n = static_cast<Int>(a.size());
  Complex acc{};
  for (Int k = 0; k < n; ++k)
    acc += a[static_cast<std::size_t>(k)] * std::conj(b[static_cast<std::size_t>((k + tau) % n)]);
  return acc;
}

inline std::map<Int, Int> distribution(Int n, Int s) {
  std::map<Int, Int> d;
  for (Int r : units(n))
    ++d[std::gcd(r - s < 0 ? s - r : r - s, n)];
  return d;
}

/// Largest admissible subset by enumerating all subsets; among maxima the
/// lexicographically smallest. Only for tiny unit groups.
inline std::vector<Int> max_set(Int n, Int theta_cap) {
  const auto u = units(n);
  const std::size_t m = u.size();
  std::vector<Int> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<Int> pick;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u)
        pick.push_back(u[i]);
    if (pick.size() < best.size() || (pick.size() == best.size() && !(pick < best)))
      continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < pick.size(); ++i)
      for (std::size_t j = i + 1; ok && j < pick.size(); ++j)
        ok = std::gcd(pick[j] - pick[i], n) * n <= theta_cap;
    if (ok)
      best = pick;
  }
  return best;
}

} // namespace oracle
