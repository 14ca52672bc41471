#include "cli.hpp"

#include <chuxcorr/chuxcorr.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

namespace chuxcorr::cli {
namespace {

// A real printed with a fixed number of decimals in CSV.
struct Fixed {
  double value;
};
// A real printed in shortest general form (user-supplied budgets).
struct General {
  double value;
};

using Cell = std::variant<Int, Fixed, General, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  std::string s(buf);
  // -0.000000000000 from rounding residue prints as zero
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

std::string format_general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string csv_cell(const Cell &c) {
  return std::visit(
      [](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Int>)
          return std::to_string(v);
        else if constexpr (std::is_same_v<T, Fixed>)
          return format_fixed(v.value);
        else if constexpr (std::is_same_v<T, General>)
          return format_general(v.value);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return v;
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell &c) {
  return std::visit(
      [](const auto &v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fixed> || std::is_same_v<T, General>)
          return v.value;
        else
          return v;
      },
      c);
}

void write_table(const Table &t, const std::string &format, std::ostream &os) {
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        obj[t.columns[i]] = json_cell(row[i]);
      arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

// Precondition failure: reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_length(Int n, Int min = 2) {
  if (n < min || n > kMaxLength)
    throw UsageError("length " + std::to_string(n) + " outside [" + std::to_string(min) + ", " +
                     std::to_string(kMaxLength) + "]");
}

void require_root(Int r, Int n, const char *name) {
  if (r <= 0 || r >= n)
    throw UsageError(std::string(name) + "=" + std::to_string(r) + " outside (0, N)");
  if (gcd(r, n) != 1)
    throw UsageError(std::string("root not coprime to N: ") + name + "=" + std::to_string(r));
}

std::string join_set(const std::vector<Int> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

struct Result {
  Table table;
  int code = kOk;
};

// --- commands -------------------------------------------------------------

Result cmd_gen(Int n, Int r) {
  require_length(n);
  require_root(r, n, "r");
  const ChuSequence seq(n, r);
  Result res;
  res.table.columns = {"k", "re", "im"};
  for (Int k = 0; k < n; ++k) {
    const Complex z = seq.sample(k);
    res.table.rows.push_back({k, Fixed{z.real()}, Fixed{z.imag()}});
  }
  return res;
}

Result correlation_rows(const ChuSequence &a, const ChuSequence &b, std::optional<Int> lag, bool check) {
  const Int n = a.length();
  const CrossCorrProfile profile = pair_profile(n, a.root(), b.root());
  Result res;
  res.table.columns = {"tau", "re", "im", "mag", "closed_form_mag"};
  std::vector<std::pair<Int, Complex>> values;
  if (lag) {
    const Int tau = normalize_lag(*lag, n);
    values.emplace_back(tau, cross_correlation(a, b, tau));
  } else {
    const CorrelationVector cv = cross_correlation_all_lags(a, b);
    for (Int tau = 0; tau < n; ++tau)
      values.emplace_back(tau, cv.values[static_cast<std::size_t>(tau)]);
  }
  const double tol = 1e-6 * static_cast<double>(n);
  for (const auto &[tau, z] : values) {
    const double mag = std::abs(z);
    const double cf = magnitude_closed_form(profile, tau);
    if (check && std::abs(mag - cf) > tol)
      res.code = kCheckFailed;
    res.table.rows.push_back({tau, Fixed{z.real()}, Fixed{z.imag()}, Fixed{mag}, Fixed{cf}});
  }
  return res;
}

Result cmd_acorr(Int n, Int r, std::optional<Int> lag, bool check) {
  require_length(n);
  require_root(r, n, "r");
  const ChuSequence a(n, r);
  return correlation_rows(a, a, lag, check);
}

Result cmd_xcorr(Int n, Int r, Int s, std::optional<Int> lag, bool check) {
  require_length(n);
  require_root(r, n, "r");
  require_root(s, n, "s");
  return correlation_rows(ChuSequence(n, r), ChuSequence(n, s), lag, check);
}

enum class DistMode { Closed, Brute, Both };

Result cmd_dist(Int n, Int s, DistMode mode) {
  require_length(n);
  require_root(s, n, "s");
  Result res;
  const Int phi = euler_phi(n);
  if (mode == DistMode::Both) {
    const auto closed = distribution_closed(n);
    const auto brute = distribution_bruteforce(n, s);
    res.table.columns = {"x", "count_closed", "count_brute", "match"};
    for (const auto &[x, c] : closed.counts) {
      const Int b = brute.count(x);
      if (b != c)
        res.code = kCheckFailed;
      res.table.rows.push_back({x, c, b, b == c});
    }
    if (closed.total() != phi || brute.total() != phi)
      res.code = kCheckFailed;
    return res;
  }
  const auto dist = mode == DistMode::Closed ? distribution_closed(n) : distribution_bruteforce(n, s);
  const bool sum_ok = dist.total() == phi;
  if (!sum_ok)
    res.code = kCheckFailed;
  res.table.columns = {"N", "x", "count", "phi_sum_check"};
  for (const auto &[x, c] : dist.counts)
    res.table.rows.push_back({n, x, c, sum_ok});
  return res;
}

void require_budget(Int n, double theta_sq) {
  const double nn = static_cast<double>(n);
  if (!(theta_sq >= nn && theta_sq <= nn * nn))
    throw UsageError("budget below N or above N^2 (theta_sq=" + format_general(theta_sq) + ")");
}

Result cmd_select(Int n, double theta_sq, bool exhaustive, Int visit_budget) {
  require_length(n);
  require_budget(n, theta_sq);
  SelectionPlan p;
  if (exhaustive) {
    if (n > kExhaustiveMaxLength)
      throw UsageError("--exhaustive supports N <= " + std::to_string(kExhaustiveMaxLength));
    p = plan(n, theta_sq);
    p.selected = max_set_exhaustive(n, theta_sq);
    p.status = p.achieved() == p.upper_bound ? SearchStatus::Attained : SearchStatus::Exhausted;
  } else {
    p = construct_set(n, theta_sq, visit_budget);
  }
  Result res;
  if (!verify_set(n, p.selected, theta_sq).ok)
    res.code = kCheckFailed;
  res.table.columns = {"N", "theta_sq", "x_min", "x_phi_min", "lower", "upper", "achieved", "set", "status"};
  res.table.rows.push_back({n, General{theta_sq}, p.x_min, p.x_phi_min, p.lower_bound, p.upper_bound,
                            p.achieved(), join_set(p.selected), std::string(to_string(p.status))});
  return res;
}

struct SweepCell {
  Int n;
  double theta_norm_sq;
};

Result cmd_sweep(std::vector<Int> lengths, std::vector<double> norms, Int visit_budget) {
  if (lengths.empty() || norms.empty())
    throw UsageError("sweep needs at least one N and one --theta-norm-sq value");
  for (Int n : lengths)
    require_length(n);
  for (double t : norms)
    if (!(t > 0.0 && t <= 1.0))
      throw UsageError("--theta-norm-sq values must lie in (0, 1]");
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  std::sort(norms.begin(), norms.end());
  norms.erase(std::unique(norms.begin(), norms.end()), norms.end());

  std::vector<SweepCell> cells;
  for (Int n : lengths)
    for (double t : norms)
      cells.push_back({n, t});

  std::vector<std::vector<Cell>> rows(cells.size());
  std::vector<char> consistent(cells.size(), 1);
  auto work = [&](std::size_t i) {
    const auto [n, t] = cells[i];
    const double nn = static_cast<double>(n);
    const double theta_sq = std::clamp(std::round(t * nn * nn), nn, nn * nn);
    const SelectionPlan p = construct_set(n, theta_sq, visit_budget);
    const bool sandwich = p.lower_bound <= p.achieved() && p.achieved() <= p.upper_bound;
    consistent[i] = sandwich || p.status == SearchStatus::BudgetExhausted;
    rows[i] = {n, General{t}, General{theta_sq}, p.lower_bound, p.upper_bound, p.achieved(),
               std::string(to_string(p.status)), to_string(factorize(n))};
  };

  // Independent cells; rows land at fixed indices so output order is stable.
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), cells.size()));
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < cells.size(); i += workers)
        work(i);
    }));
  for (auto &f : pool)
    f.get();

  Result res;
  res.table.columns = {"N", "theta_norm_sq", "theta_sq", "lower", "upper", "achieved", "status", "prime_factors"};
  res.table.rows = std::move(rows);
  if (std::find(consistent.begin(), consistent.end(), 0) != consistent.end())
    res.code = kCheckFailed;
  return res;
}

Result cmd_factor_table(const std::vector<Int> &lengths) {
  Result res;
  res.table.columns = {"N", "prime_factors"};
  for (Int n : lengths) {
    require_length(n, 1);
    res.table.rows.push_back({n, to_string(factorize(n))});
  }
  return res;
}

std::pair<Int, Int> parse_range(const std::string &s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw UsageError("--n-range expects LO:HI");
  try {
    std::size_t p1 = 0, p2 = 0;
    const Int lo = std::stoll(s.substr(0, colon), &p1);
    const Int hi = std::stoll(s.substr(colon + 1), &p2);
    if (p1 != colon || p2 != s.size() - colon - 1 || lo > hi)
      throw UsageError("");
    return {lo, hi};
  } catch (const std::exception &) {
    throw UsageError("--n-range expects LO:HI with LO <= HI, got '" + s + "'");
  }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Chu sequence correlation toolkit", "chuxcorr"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::string format = "csv";
  app.add_option("--out", out_path, "Write output to FILE instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  Int n = 0, r = 0, s = 0, lag = 0;
  bool all = false, check = false;
  Int visit_budget = kDefaultVisitBudget;

  auto *gen = app.add_subcommand("gen", "Chu sequence samples as k,re,im");
  gen->add_option("--n", n, "Sequence length")->required();
  gen->add_option("--r", r, "Root")->required();

  auto *acorr = app.add_subcommand("acorr", "Periodic autocorrelation");
  acorr->add_option("--n", n, "Sequence length")->required();
  acorr->add_option("--r", r, "Root")->required();
  auto *acorr_lag = acorr->add_option("--lag", lag, "Single lag");
  acorr->add_flag("--all", all, "All lags (default)")->excludes(acorr_lag);
  acorr->add_flag("--check", check, "Exit 1 if any magnitude disagrees with the closed form");

  auto *xcorr = app.add_subcommand("xcorr", "Periodic cross-correlation against the closed form");
  xcorr->add_option("--n", n, "Sequence length")->required();
  xcorr->add_option("--r", r, "First root")->required();
  xcorr->add_option("--s", s, "Second root")->required();
  auto *xcorr_lag = xcorr->add_option("--lag", lag, "Single lag");
  xcorr->add_flag("--all", all, "All lags (default)")->excludes(xcorr_lag);
  xcorr->add_flag("--check", check, "Exit 1 if any magnitude disagrees with the closed form");

  Int dist_s = 1;
  bool brute = false, closed = false, both = false;
  auto *dist = app.add_subcommand("dist", "Distribution of maximum cross-correlation over divisors");
  dist->add_option("--n", n, "Sequence length")->required();
  dist->add_option("--s", dist_s, "Reference root for the brute-force scan");
  auto *f_brute = dist->add_flag("--brute", brute, "Brute-force count only");
  auto *f_closed = dist->add_flag("--closed", closed, "Product formula only (default)");
  auto *f_both = dist->add_flag("--both", both, "Both, with a match column");
  f_brute->excludes(f_closed)->excludes(f_both);
  f_closed->excludes(f_both);

  double theta_sq = 0.0;
  bool exhaustive = false;
  auto *select = app.add_subcommand("select", "Root set under a squared cross-correlation budget");
  select->add_option("--n", n, "Sequence length")->required();
  select->add_option("--theta-sq", theta_sq, "Squared budget |theta|^2")->required();
  select->add_flag("--exhaustive", exhaustive, "Exact maximum set (N <= 200)");
  select->add_option("--visit-budget", visit_budget, "Candidate visits before giving up");

  std::vector<Int> n_list;
  std::string n_range;
  std::vector<double> norms;
  auto *sweep = app.add_subcommand("sweep", "Bounds and achieved set sizes over N and normalized budgets");
  auto *sweep_list = sweep->add_option("--n-list", n_list, "Comma-separated lengths")->delimiter(',');
  auto *sweep_range = sweep->add_option("--n-range", n_range, "Inclusive range LO:HI");
  sweep_list->excludes(sweep_range);
  sweep->add_option("--theta-norm-sq", norms, "Comma-separated normalized budgets")->delimiter(',')->required();
  sweep->add_option("--visit-budget", visit_budget, "Candidate visits per cell before giving up");

  std::vector<Int> table_list;
  auto *factor = app.add_subcommand("factor-table", "Prime factorizations");
  factor->add_option("--n-list", table_list, "Comma-separated integers")->delimiter(',')->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    std::ostringstream help_out;
    const int code = app.exit(e, help_out, err);
    out << help_out.str();
    return code == 0 ? kOk : kUsage;
  }

  Result res;
  try {
    if (*gen) {
      res = cmd_gen(n, r);
    } else if (*acorr) {
      res = cmd_acorr(n, r, acorr_lag->count() ? std::optional<Int>(lag) : std::nullopt, check);
    } else if (*xcorr) {
      res = cmd_xcorr(n, r, s, xcorr_lag->count() ? std::optional<Int>(lag) : std::nullopt, check);
    } else if (*dist) {
      res = cmd_dist(n, dist_s, both ? DistMode::Both : (brute ? DistMode::Brute : DistMode::Closed));
    } else if (*select) {
      res = cmd_select(n, theta_sq, exhaustive, visit_budget);
    } else if (*sweep) {
      if (sweep_range->count()) {
        const auto [lo, hi] = parse_range(n_range);
        require_length(lo);
        require_length(hi);
        n_list.clear();
        for (Int k = lo; k <= hi; ++k)
          n_list.push_back(k);
      } else if (!sweep_list->count()) {
        throw UsageError("sweep needs --n-list or --n-range");
      }
      res = cmd_sweep(n_list, norms, visit_budget);
    } else if (*factor) {
      res = cmd_factor_table(table_list);
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << out_path << '\n';
      return kUsage;
    }
    write_table(res.table, format, file);
  } else {
    write_table(res.table, format, out);
  }
  if (res.code == kCheckFailed)
    err << "check failed\n";
  return res.code;
}

} // namespace chuxcorr::cli
