// Closed-form cross-correlation magnitudes of Chu sequence pairs.
//
// For roots r, s of length N let g = gcd(N, r - s), u = N / g and
// v = (r - s) / g. Writing a lag as tau = i*g + d with 0 <= d < g, the
// magnitude |theta_{r,s}(tau)| is sqrt(N*g) at exactly one residue d* and
// zero elsewhere; d* = g/2 when N is even and u*v is odd, otherwise d* = 0.

#pragma once

#include <chuxcorr/chu.hpp>
#include <chuxcorr/numtheory.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chuxcorr {

enum class ParityCase {
  PeakAtZero,  // d* = 0
  PeakAtHalfG, // N even, u*v odd: d* = g/2
  Auto,        // r == s
};

inline std::string_view to_string(ParityCase c) {
  switch (c) {
  case ParityCase::PeakAtZero:
    return "PeakAtZero";
  case ParityCase::PeakAtHalfG:
    return "PeakAtHalfG";
  case ParityCase::Auto:
    return "Auto";
  }
  return "?";
}

/// tau = index * g + offset, 0 <= offset < g.
struct LagDecomposition {
  Int lag;
  Int index;
  Int offset;
};

struct CrossCorrProfile {
  Int n;
  Int r;
  Int s;
  Int g;
  Int u;
  Int v; // signed
  ParityCase parity_case;
  Int peak_offset;

  /// N * g, the squared peak magnitude as an exact integer.
  Int peak_magnitude_sq() const { return n * g; }
  double peak_magnitude() const { return std::sqrt(static_cast<double>(peak_magnitude_sq())); }

  /// Number of lags in [0, N) that reach the peak.
  Int peak_count() const { return u; }

  LagDecomposition decompose(Int lag) const {
    const Int tau = normalize_lag(lag, n);
    return {tau, tau / g, tau % g};
  }

  bool is_peak_lag(Int lag) const { return decompose(lag).offset == peak_offset; }
};

namespace detail {

inline void require_roots(Int n, Int r, Int s) {
  if (n < 2)
    throw std::invalid_argument("length must be >= 2, got " + std::to_string(n));
  for (Int x : {r, s})
    if (!is_unit(x, n))
      throw std::invalid_argument("root " + std::to_string(x) + " is not a unit modulo " +
                                  std::to_string(n));
}

} // namespace detail

inline CrossCorrProfile pair_profile(Int n, Int r, Int s) {
  detail::require_roots(n, r, s);
  CrossCorrProfile p{};
  p.n = n;
  p.r = r;
  p.s = s;
  p.g = gcd(n, r - s); // gcd(N, 0) = N when r == s
  p.u = n / p.g;
  p.v = (r - s) / p.g;
  if (r == s) {
    p.parity_case = ParityCase::Auto;
    p.peak_offset = 0;
  } else if (n % 2 == 0 && (p.u % 2 != 0) && (p.v % 2 != 0)) {
    p.parity_case = ParityCase::PeakAtHalfG;
    p.peak_offset = p.g / 2;
  } else {
    p.parity_case = ParityCase::PeakAtZero;
    p.peak_offset = 0;
  }
  return p;
}

/// |theta_{r,s}(tau)| from the pair invariants alone. Auto reduces to the
/// impulse N at tau = 0 since g = N there.
inline double magnitude_closed_form(const CrossCorrProfile &p, Int lag) {
  return p.is_peak_lag(lag) ? p.peak_magnitude() : 0.0;
}

/// max over tau of |theta_{r,s}(tau)| = sqrt(N * gcd(N, r - s)).
inline double max_magnitude(Int n, Int r, Int s) { return pair_profile(n, r, s).peak_magnitude(); }

enum class ExponentSign { Negative, Positive };

struct SquaredMagnitude {
  double value;         // real part of the g-term sum
  double imag_residue;  // |imaginary part|, zero up to rounding
};

/// |theta_{r,s}(tau)|^2 as the g-term sum
///   u*g * sum_{m<g} (-1)^kappa(m) * exp(-/+ j*2*pi*s*m*d/g)
/// with kappa(m) = u*v*m^2 for even N and v*m*(u+1) for odd N, d the lag
/// offset modulo g. Terms m and g-m are conjugate, so the sign of the
/// exponent does not change the result.
inline SquaredMagnitude magnitude_squared_g_sum(Int n, Int r, Int s, Int lag,
                                                ExponentSign sign = ExponentSign::Negative) {
  const CrossCorrProfile p = pair_profile(n, r, s);
  const Int d = p.decompose(lag).offset;
  const bool uv_odd = (p.u % 2 != 0) && (p.v % 2 != 0);
  const bool v_u1_odd = (p.v % 2 != 0) && ((p.u + 1) % 2 != 0);

  Complex acc{0.0, 0.0};
  for (Int m = 0; m < p.g; ++m) {
    const bool m_odd = (m % 2) != 0;
    // parity of m^2 equals parity of m
    const bool kappa_odd = (n % 2 == 0) ? (uv_odd && m_odd) : (v_u1_odd && m_odd);
    // exp(-/+ j*2*pi*x/g) == unit_phase(-/+ 2x, g), x = s*m*d mod g
    const Int x = detail::mulmod(detail::mulmod(s, m, p.g), d, p.g);
    const Complex w = unit_phase(sign == ExponentSign::Negative ? -2 * x : 2 * x, p.g);
    acc += kappa_odd ? -w : w;
  }
  const double scale = static_cast<double>(p.u) * static_cast<double>(p.g);
  return {scale * acc.real(), std::abs(scale * acc.imag())};
}

} // namespace chuxcorr
