// Chu sequences and their periodic auto/cross-correlation, evaluated by
// direct summation. These are the reference values every closed form in the
// library is checked against.
//
// Phases are kept as integers e_k modulo 2N, sample(k) = exp(j*pi*e_k/N).
// A complex exponential is only evaluated once per summed term, on the exact
// integer phase difference.

#pragma once

#include <chuxcorr/numtheory.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chuxcorr {

using Complex = std::complex<double>;

/// exp(j*pi*e/n) for an integer phase e taken modulo 2n.
inline Complex unit_phase(Int e, Int n) {
  const Int m = detail::mod(e, 2 * n);
  return std::polar(1.0, std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

/// Lookup table of exp(j*pi*e/n), e in [0, 2n). Each entry is evaluated
/// independently so no angle accumulates across entries.
class PhaseTable {
public:
  explicit PhaseTable(Int n) : n_(n), table_(static_cast<std::size_t>(2 * n)) {
    for (Int e = 0; e < 2 * n; ++e)
      table_[static_cast<std::size_t>(e)] = unit_phase(e, n);
  }
  Complex operator[](Int e) const { return table_[static_cast<std::size_t>(e)]; }
  Int length() const { return n_; }

private:
  Int n_;
  std::vector<Complex> table_;
};

class ChuSequence {
public:
  ChuSequence(Int length, Int root) : n_(length), r_(root) {
    if (length < 2)
      throw std::invalid_argument("chu: length must be >= 2, got " + std::to_string(length));
    if (root <= 0 || root >= length)
      throw std::invalid_argument("chu: root " + std::to_string(root) + " outside (0, " +
                                  std::to_string(length) + ")");
    if (gcd(root, length) != 1)
      throw std::invalid_argument("chu: root not coprime to length (r=" + std::to_string(root) +
                                  ", N=" + std::to_string(length) + ")");
    exponents_.resize(static_cast<std::size_t>(n_));
    for (Int k = 0; k < n_; ++k)
      exponents_[static_cast<std::size_t>(k)] = exponent_of(k);
  }

  Int length() const { return n_; }
  Int root() const { return r_; }

  /// e_k in [0, 2N) for any integer k (periodic extension).
  Int phase_exponent(Int k) const { return exponents_[static_cast<std::size_t>(detail::mod(k, n_))]; }
  std::span<const Int> phase_exponents() const { return exponents_; }

  Complex sample(Int k) const { return unit_phase(phase_exponent(k), n_); }

  std::vector<Complex> samples() const {
    std::vector<Complex> out;
    out.reserve(exponents_.size());
    for (Int e : exponents_)
      out.push_back(unit_phase(e, n_));
    return out;
  }

private:
  // r*k^2 mod 2N for even N, r*k*(k+1) mod 2N for odd N. Both are N-periodic
  // in k, so k is reduced first.
  Int exponent_of(Int k) const {
    const Int two_n = 2 * n_;
    const Int kk = detail::mod(k, n_);
    const Int quad = (n_ % 2 == 0) ? detail::mulmod(kk, kk, two_n) : detail::mulmod(kk, kk + 1, two_n);
    return detail::mulmod(r_, quad, two_n);
  }

  Int n_;
  Int r_;
  std::vector<Int> exponents_;
};

inline ChuSequence generate(Int length, Int root) { return ChuSequence(length, root); }

/// theta(tau) for tau = 0..N-1.
struct CorrelationVector {
  Int n = 0;
  std::vector<Complex> values;

  double energy() const {
    double e = 0.0;
    for (const auto &v : values)
      e += std::norm(v);
    return e;
  }
};

namespace detail {

inline void require_same_length(const ChuSequence &a, const ChuSequence &b) {
  if (a.length() != b.length())
    throw std::invalid_argument("correlation: length mismatch (" + std::to_string(a.length()) +
                                " vs " + std::to_string(b.length()) + ")");
}

} // namespace detail

/// Normalize a lag into [0, n). Any integer is accepted.
inline Int normalize_lag(Int lag, Int n) { return detail::mod(lag, n); }

/// theta_{r,s}(tau) = sum_k a_r(k) * conj(a_s(k + tau)), indices mod N.
/// Negative lags are reduced modulo N.
inline Complex cross_correlation(const ChuSequence &a, const ChuSequence &b, Int lag) {
  detail::require_same_length(a, b);
  const Int n = a.length();
  const Int tau = normalize_lag(lag, n);
  Complex acc{0.0, 0.0};
  for (Int k = 0; k < n; ++k) {
    const Int k2 = (k + tau) % n;
    acc += unit_phase(a.phase_exponent(k) - b.phase_exponent(k2), n);
  }
  return acc;
}

inline Complex autocorrelation(const ChuSequence &a, Int lag) { return cross_correlation(a, a, lag); }

/// Every lag by direct O(N^2) summation over a shared phase table.
inline CorrelationVector cross_correlation_all_lags(const ChuSequence &a, const ChuSequence &b,
                                                    const PhaseTable &table) {
  detail::require_same_length(a, b);
  const Int n = a.length();
  if (table.length() != n)
    throw std::invalid_argument("correlation: phase table built for a different length");
  const Int two_n = 2 * n;
  const auto ea = a.phase_exponents();
  const auto eb = b.phase_exponents();

  CorrelationVector out;
  out.n = n;
  out.values.assign(static_cast<std::size_t>(n), Complex{});
  for (Int tau = 0; tau < n; ++tau) {
    Complex acc{0.0, 0.0};
    Int k2 = tau;
    for (Int k = 0; k < n; ++k) {
      Int d = ea[static_cast<std::size_t>(k)] - eb[static_cast<std::size_t>(k2)];
      if (d < 0)
        d += two_n;
      acc += table[d];
      if (++k2 == n)
        k2 = 0;
    }
    out.values[static_cast<std::size_t>(tau)] = acc;
  }
  return out;
}

inline CorrelationVector cross_correlation_all_lags(const ChuSequence &a, const ChuSequence &b) {
  return cross_correlation_all_lags(a, b, PhaseTable(a.length()));
}

inline CorrelationVector autocorrelation_all_lags(const ChuSequence &a) {
  return cross_correlation_all_lags(a, a);
}

} // namespace chuxcorr
