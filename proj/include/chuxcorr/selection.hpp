// Choosing subsets of Chu roots whose pairwise cross-correlation stays under
// a budget.
//
// Two roots a, b are compatible under a squared budget theta_sq exactly when
// gcd(a - b, N) * N <= theta_sq. The largest compatible subset is bounded
// below by the units under x_min and above by phi(x_phi_min), where x_min and
// x_phi_min range over the divisors of N with x * N > theta_sq.

#pragma once

#include <chuxcorr/numtheory.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chuxcorr {

inline constexpr Int kDefaultVisitBudget = 1'000'000;
inline constexpr Int kExhaustiveMaxLength = 200;

/// A squared correlation budget |theta|^2. Only its integer part matters
/// because the compared quantity gcd * N is an integer.
class SquaredBudget {
public:
  explicit SquaredBudget(double theta_sq) : value_(theta_sq) {
    if (!std::isfinite(theta_sq))
      throw std::invalid_argument("budget must be finite");
    cap_ = static_cast<Int>(std::floor(theta_sq));
  }
  double value() const { return value_; }
  Int cap() const { return cap_; }
  bool admits(Int g, Int n) const { return g * n <= cap_; }

private:
  double value_;
  Int cap_;
};

enum class SearchStatus {
  NotSearched,
  Attained,         // reached the upper bound
  Exhausted,        // full search finished below the upper bound
  BudgetExhausted,  // visit budget ran out; best-so-far returned
};

inline std::string_view to_string(SearchStatus s) {
  switch (s) {
  case SearchStatus::NotSearched:
    return "not-searched";
  case SearchStatus::Attained:
    return "attained";
  case SearchStatus::Exhausted:
    return "exhausted";
  case SearchStatus::BudgetExhausted:
    return "budget-exhausted";
  }
  return "?";
}

struct SelectionPlan {
  Int n = 0;
  double theta_sq = 0.0;
  std::vector<Int> divisors_over_budget; // X, ascending
  Int x_min = 0;
  Int x_phi_min = 0;
  Int lower_bound = 0;
  Int upper_bound = 0;
  std::vector<Int> selected; // ascending
  SearchStatus status = SearchStatus::NotSearched;
  Int visits = 0;

  Int achieved() const { return static_cast<Int>(selected.size()); }
};

struct SetCheck {
  bool ok = true;
  std::optional<Int> non_unit;                  // first member not coprime to N
  std::optional<std::pair<Int, Int>> violation; // first incompatible pair
};

namespace detail {

inline void require_unit(Int r, Int n) {
  if (!is_unit(r, n))
    throw std::invalid_argument("root " + std::to_string(r) + " is not a unit modulo " +
                                std::to_string(n));
}

inline void require_budget_range(Int n, double theta_sq) {
  if (n < 2)
    throw std::invalid_argument("length must be >= 2, got " + std::to_string(n));
  const double nn = static_cast<double>(n);
  if (!(theta_sq >= nn && theta_sq <= nn * nn))
    throw std::invalid_argument("budget theta_sq outside [N, N^2]");
}

} // namespace detail

inline bool admissible_pair(Int n, Int r, Int s, double theta_sq) {
  detail::require_unit(r, n);
  detail::require_unit(s, n);
  return SquaredBudget(theta_sq).admits(gcd(r - s, n), n);
}

/// Bounds only; `selected` stays empty.
inline SelectionPlan plan(Int n, double theta_sq) {
  detail::require_budget_range(n, theta_sq);
  const SquaredBudget budget(theta_sq);
  const Factorization f = factorize(n);

  SelectionPlan p;
  p.n = n;
  p.theta_sq = theta_sq;
  for (Int x : divisors(f))
    if (x * n > budget.cap())
      p.divisors_over_budget.push_back(x);
  // theta_sq = N^2 leaves no divisor above the budget; every pair of units is
  // then admissible and N plays the role of the only blocking divisor.
  if (p.divisors_over_budget.empty())
    p.divisors_over_budget.push_back(n);

  p.x_min = p.divisors_over_budget.front();
  Int best_phi = -1;
  for (Int x : p.divisors_over_budget) {
    const Int ph = euler_phi(x);
    if (best_phi < 0 || ph < best_phi) { // ascending scan keeps the smallest x on ties
      best_phi = ph;
      p.x_phi_min = x;
    }
  }
  for (Int k = 1; k < p.x_min; ++k)
    if (gcd(k, n) == 1)
      ++p.lower_bound;
  p.upper_bound = best_phi;
  return p;
}

/// Pairwise check of a candidate root set. Non-units are reported before
/// pair violations; both in ascending order of the sorted set.
inline SetCheck verify_set(Int n, std::vector<Int> set, double theta_sq) {
  const SquaredBudget budget(theta_sq);
  std::sort(set.begin(), set.end());
  SetCheck out;
  for (Int a : set)
    if (!is_unit(a, n)) {
      out.ok = false;
      out.non_unit = a;
      return out;
    }
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (!budget.admits(gcd(set[i] - set[j], n), n)) {
        out.ok = false;
        out.violation = std::pair{set[i], set[j]};
        return out;
      }
  return out;
}

/// One root per residue class n modulo x_phi_min (gcd(n, x_phi_min) = 1),
/// classes in ascending order, smallest compatible unit in each class first.
/// Depth-first with backtracking over earlier choices (and over leaving a
/// class empty) until the upper bound is met, the space is exhausted, or
/// `visit_budget` candidate checks have been spent.
inline SelectionPlan construct_set(Int n, double theta_sq, Int visit_budget = kDefaultVisitBudget) {
  SelectionPlan p = plan(n, theta_sq);
  const SquaredBudget budget(theta_sq);
  const Int x = p.x_phi_min;

  std::vector<std::vector<Int>> candidates;
  for (Int residue = 1; residue < x; ++residue) {
    if (gcd(residue, x) != 1)
      continue;
    std::vector<Int> cls;
    for (Int v = residue; v < n; v += x)
      if (gcd(v, n) == 1)
        cls.push_back(v);
    candidates.push_back(std::move(cls));
  }
  const std::size_t k = candidates.size();

  std::vector<std::size_t> next(k + 1, 0);
  std::vector<char> taken(k + 1, 0);
  std::vector<char> skipped(k + 1, 0);
  std::vector<Int> current;
  std::vector<Int> best;
  auto compatible = [&](Int c) {
    return std::all_of(current.begin(), current.end(),
                       [&](Int a) { return budget.admits(gcd(c - a, n), n); });
  };

  std::size_t i = 0;
  SearchStatus status = SearchStatus::Exhausted;
  for (;;) {
    if (current.size() > best.size())
      best = current;
    if (static_cast<Int>(best.size()) >= p.upper_bound) {
      status = SearchStatus::Attained;
      break;
    }

    const bool prune = i == k || current.size() + (k - i) <= best.size();
    if (!prune) {
      bool descended = false;
      while (next[i] < candidates[i].size()) {
        const Int c = candidates[i][next[i]++];
        if (++p.visits > visit_budget) {
          status = SearchStatus::BudgetExhausted;
          break;
        }
        if (compatible(c)) {
          current.push_back(c);
          taken[i] = 1;
          ++i;
          next[i] = 0;
          taken[i] = skipped[i] = 0;
          descended = true;
          break;
        }
      }
      if (status == SearchStatus::BudgetExhausted)
        break;
      if (descended)
        continue;
      if (!skipped[i]) {
        skipped[i] = 1;
        ++i;
        next[i] = 0;
        taken[i] = skipped[i] = 0;
        continue;
      }
    }

    if (i == 0)
      break; // search space exhausted
    --i;
    if (taken[i]) {
      current.pop_back();
      taken[i] = 0;
    }
  }

  std::sort(best.begin(), best.end());
  p.selected = std::move(best);
  p.status = status;
  return p;
}

namespace detail {

// Fixed-capacity bitset over the units of N <= kExhaustiveMaxLength.
struct VertexSet {
  static constexpr std::size_t kWords = 4;
  std::array<std::uint64_t, kWords> w{};

  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1u; }
  bool empty() const {
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w)
      c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  /// Lowest set index >= from, or npos.
  std::size_t next(std::size_t from) const {
    for (std::size_t k = from / 64; k < kWords; ++k) {
      std::uint64_t x = w[k];
      if (k == from / 64)
        x &= ~std::uint64_t{0} << (from % 64);
      if (x)
        return k * 64 + static_cast<std::size_t>(std::countr_zero(x));
    }
    return npos;
  }
  VertexSet operator&(const VertexSet &o) const {
    VertexSet r;
    for (std::size_t k = 0; k < kWords; ++k)
      r.w[k] = w[k] & o.w[k];
    return r;
  }
  VertexSet without(const VertexSet &o) const {
    VertexSet r;
    for (std::size_t k = 0; k < kWords; ++k)
      r.w[k] = w[k] & ~o.w[k];
    return r;
  }
  /// Indices strictly above i.
  static VertexSet above(std::size_t i) {
    VertexSet r;
    for (std::size_t k = 0; k < kWords; ++k) {
      if (k * 64 > i)
        r.w[k] = ~std::uint64_t{0};
      else if (k == i / 64 && i % 64 != 63)
        r.w[k] = ~std::uint64_t{0} << (i % 64 + 1);
    }
    return r;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

class CliqueSearch {
public:
  explicit CliqueSearch(std::vector<VertexSet> adj) : adj_(std::move(adj)) {}

  std::vector<std::size_t> run(const VertexSet &all) {
    std::vector<std::size_t> r;
    expand(r, all);
    return best_;
  }

private:
  // Greedy sequential colouring of P; the colour count bounds any clique in P.
  std::size_t colour_bound(const VertexSet &p) const {
    std::size_t colours = 0;
    VertexSet uncoloured = p;
    while (!uncoloured.empty()) {
      ++colours;
      VertexSet q = uncoloured;
      for (std::size_t v = q.next(0); v != VertexSet::npos; v = q.next(v + 1)) {
        uncoloured.reset(v);
        q = q.without(adj_[v]);
      }
    }
    return colours;
  }

  // Vertices are tried in ascending order and best_ only changes on strict
  // improvement, so the first maximum clique found is the lexicographically
  // smallest one.
  void expand(std::vector<std::size_t> &r, const VertexSet &p) {
    if (r.size() > best_.size())
      best_ = r;
    if (p.empty() || r.size() + colour_bound(p) <= best_.size())
      return;
    std::size_t remaining = p.count();
    for (std::size_t v = p.next(0); v != VertexSet::npos; v = p.next(v + 1), --remaining) {
      if (r.size() + remaining <= best_.size())
        break;
      r.push_back(v);
      expand(r, p & adj_[v] & VertexSet::above(v));
      r.pop_back();
    }
  }

  std::vector<VertexSet> adj_;
  std::vector<std::size_t> best_;
};

} // namespace detail

/// Maximum compatible root set by branch and bound over the compatibility
/// graph on the unit group. Ties go to the lexicographically smallest set.
inline std::vector<Int> max_set_exhaustive(Int n, double theta_sq) {
  if (n > kExhaustiveMaxLength)
    throw std::invalid_argument("exhaustive search limited to N <= " +
                                std::to_string(kExhaustiveMaxLength));
  detail::require_budget_range(n, theta_sq);
  const SquaredBudget budget(theta_sq);
  const UnitGroup units(n);
  const auto &u = units.members();

  std::vector<detail::VertexSet> adj(u.size());
  detail::VertexSet all;
  for (std::size_t i = 0; i < u.size(); ++i) {
    all.set(i);
    for (std::size_t j = 0; j < u.size(); ++j)
      if (i != j && budget.admits(gcd(u[i] - u[j], n), n))
        adj[i].set(j);
  }

  const auto clique = detail::CliqueSearch(std::move(adj)).run(all);
  std::vector<Int> out;
  out.reserve(clique.size());
  for (std::size_t i : clique)
    out.push_back(u[i]);
  return out;
}

} // namespace chuxcorr
