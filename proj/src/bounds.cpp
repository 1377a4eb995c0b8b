#include "slicerank/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace slicerank {

namespace bmp = boost::multiprecision;

namespace {

mpfr_ptr raw(Real& v) { return v.backend().data(); }
mpfr_srcptr raw(const Real& v) { return v.backend().data(); }

void require_unit_interval(const Real& t, const char* what) {
  if (!(t > 0 && t < 1)) throw DomainError(std::string(what) + " must lie in (0,1)");
}

Real from_int(long v) { return Real(v); }

} // namespace

PrecisionScope::PrecisionScope(int digits) : previous_(Real::default_precision()) {
  if (digits < 1) throw DomainError("precision must be at least one digit");
  Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

std::string truncated_decimal(const Real& v, int decimals) {
  if (decimals < 0) throw DomainError("negative decimal count");
  Real scaled;
  mpfr_ui_pow_ui(raw(scaled), 10, static_cast<unsigned long>(decimals), MPFR_RNDN);
  mpfr_mul(raw(scaled), raw(v), raw(scaled), MPFR_RNDZ);
  mpz_t z;
  mpz_init(z);
  mpfr_get_z(z, raw(scaled), MPFR_RNDZ);
  const bool negative = mpz_sgn(z) < 0;
  mpz_abs(z, z);
  char* buf = mpz_get_str(nullptr, 10, z);
  std::string digits(buf);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(buf, std::char_traits<char>::length(buf) + 1);
  mpz_clear(z);

  if (decimals > 0) {
    if (static_cast<int>(digits.size()) <= decimals)
      digits.insert(0, static_cast<std::size_t>(decimals + 1) - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), 1, '.');
  }
  return (negative ? "-" : "") + digits;
}

std::string decimal_string(const Real& v, int digits) {
  return v.str(std::max(digits - 1, 0), std::ios_base::scientific);
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("binomial requires 0 <= k <= n");
  BigInt out;
  mpz_bin_uiui(out.backend().data(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

BigInt count_low_weight(long n, long r) {
  if (n < 0) throw DomainError("count_low_weight requires n >= 0");
  if (r < 0) return 0;
  const long top = std::min(r, n);
  if (2 * top >= n && top < n) {
    // Complement through the shorter tail.
    BigInt full = 1;
    full <<= static_cast<unsigned>(n);
    return full - count_low_weight(n, n - top - 1);
  }
  BigInt term = 1, sum = 1;
  for (long j = 1; j <= top; ++j) {
    term = term * (n - j + 1) / j;
    sum += term;
  }
  return sum;
}

Real gf_bound(long n, long r, const Real& t) {
  require_unit_interval(t, "t");
  if (n < 0 || r < 0) throw DomainError("gf_bound requires n, r >= 0");
  return pow(1 + t, from_int(n)) / pow(t, from_int(r));
}

Real gf_bound_lower(long n, long r, const Real& t) {
  require_unit_interval(t, "t");
  if (n < 0 || r < 0) throw DomainError("gf_bound requires n, r >= 0");
  Real base, num, den, out;
  mpfr_add_ui(raw(base), raw(t), 1, MPFR_RNDD);
  mpfr_pow_ui(raw(num), raw(base), static_cast<unsigned long>(n), MPFR_RNDD);
  mpfr_pow_ui(raw(den), raw(t), static_cast<unsigned long>(r), MPFR_RNDU);
  mpfr_div(raw(out), raw(num), raw(den), MPFR_RNDD);
  return out;
}

Real gf_log_derivative(long n, long r, const Real& t) {
  return from_int(n) / (1 + t) - from_int(r) / t;
}

Real optimal_t(long n, long r) {
  if (r <= 0 || 2 * r >= n)
    throw DomainError("optimal_t requires 0 < r < n/2 (t* = r/(n-r) must lie in (0,1))");
  const Real t = from_int(r) / from_int(n - r);
  // Minimizer: the derivative changes sign from - to + across t*.
  const Real eps = pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
  const Real below = t * (1 - eps), above = t * (1 + eps);
  if (!(gf_log_derivative(n, r, below) < 0 && gf_log_derivative(n, r, above) > 0))
    throw InternalInconsistency("no sign change of the derivative at r/(n-r)");
  return t;
}

BigInt rank_ceiling_exact(const TriangleParams& params) {
  return 3 * count_low_weight(params.n, params.r_count);
}

Real rank_ceiling_gf(const TriangleParams& params) {
  const long n = params.n, r = params.r_count;
  if (r == 0) return Real(3);
  if (2 * r >= n) return 3 * pow(Real(2), from_int(n));
  return 3 * gf_bound(n, r, optimal_t(n, r));
}

BinomialTerm max_binomial_term(long n, const Real& x) {
  require_unit_interval(x, "x");
  if (n < 0) throw DomainError("max_binomial_term requires n >= 0");
  BinomialTerm best{0, Real(1)};
  Real term = 1;
  for (long k = 1; 2 * k <= n; ++k) {
    term = term * from_int(n - k + 1) / from_int(k) * x;
    if (term > best.value) best = {k, term};
  }
  return best;
}

FiniteBound finite_lower_bound(long n, std::optional<long> k_lo, std::optional<long> k_hi) {
  if (n < 2) throw DomainError("finite_lower_bound requires n >= 2");
  const long lo = std::max(1L, k_lo.value_or(1));
  const long hi = std::min(n / 2, k_hi.value_or(n / 2));
  if (lo > hi) throw DomainError("no slice weight in range 1..n/2");

  std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (long j = 1; j <= n; ++j) row[j] = row[j - 1] * (n - j + 1) / j;
  std::vector<BigInt> prefix(row.size());
  prefix[0] = row[0];
  for (std::size_t j = 1; j < row.size(); ++j) prefix[j] = prefix[j - 1] + row[j];

  FiniteBound out;
  out.n = n;
  for (long k = lo; k <= hi; ++k) {
    BoundRow b;
    b.params = TriangleParams::for_slice(static_cast<int>(n), static_cast<int>(k));
    b.slice_size = row[static_cast<std::size_t>(k)];
    b.rank_ceiling_exact = 3 * prefix[static_cast<std::size_t>(std::min<long>(b.params.r_count, n))];
    b.rank_ceiling_gf = rank_ceiling_gf(b.params);
    b.ratio = BigRational(b.slice_size, b.rank_ceiling_exact);
    const BigInt num = bmp::numerator(b.ratio), den = bmp::denominator(b.ratio);
    b.chromatic_lb = std::max<BigInt>((num + den - 1) / den, BigInt(1));
    if (out.rows.empty() || b.ratio > out.rows[out.best].ratio) out.best = out.rows.size();
    out.rows.push_back(std::move(b));
  }
  return out;
}

Real log_binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("log_binomial requires 0 <= k <= n");
  Real a = from_int(n + 1), b = from_int(k + 1), c = from_int(n - k + 1);
  int sign = 0;
  mpfr_lgamma(raw(a), &sign, raw(a), MPFR_RNDN);
  mpfr_lgamma(raw(b), &sign, raw(b), MPFR_RNDN);
  mpfr_lgamma(raw(c), &sign, raw(c), MPFR_RNDN);
  return a - b - c;
}

Real log_count_low_weight(long n, long r) {
  if (n < 0 || r < 0) throw DomainError("log_count_low_weight requires n, r >= 0");
  const Real log2n = from_int(n) * log(Real(2));
  if (r >= n) return log2n;
  if (2 * r >= n) {
    const long m = n - r - 1;
    if (m < 0) return log2n;
    const Real tail = log_count_low_weight(n, m);
    return log2n + log1p(-exp(tail - log2n));
  }
  // Terms C(n, j) for j <= r decay at least geometrically going down from r.
  const Real cutoff = pow(Real(10), -static_cast<int>(Real::default_precision()) - 5);
  Real cur = 1, acc = 1;
  for (long j = r; j >= 1; --j) {
    cur = cur * from_int(j) / from_int(n - j + 1);
    acc += cur;
    if (cur < acc * cutoff) break;
  }
  return log_binomial(n, r) + log(acc);
}

Real LogFiniteBound::growth() const { return exp(rows.at(best).log_ratio / from_int(n)); }

Real LogFiniteBound::best_k_fraction() const {
  return from_int(rows.at(best).k) / from_int(n);
}

LogBoundRow log_bound_row(long n, long k) {
  if (n < 2 || k < 1 || k > n) throw DomainError("log_bound_row requires 1 <= k <= n, n >= 2");
  const std::uint64_t p = smallest_odd_prime_above(static_cast<std::uint64_t>(k), 4);
  const long D = std::min<long>(3 * n, n + 2 * (static_cast<long>(p) - 1));
  LogBoundRow row;
  row.k = k;
  row.p = p;
  row.r = D / 3;
  row.log_slice_size = log_binomial(n, k);
  row.log_rank_ceiling = log(Real(3)) + log_count_low_weight(n, row.r);
  row.log_ratio = row.log_slice_size - row.log_rank_ceiling;
  return row;
}

LogFiniteBound finite_lower_bound_log(long n) {
  if (n < 2) throw DomainError("finite_lower_bound requires n >= 2");
  LogFiniteBound out;
  out.n = n;
  std::uint64_t previous = 1;
  for (std::uint64_t p = 3;; p = smallest_odd_prime_above(p)) {
    // Weights whose canonical prime is p: 4 * previous <= k <= 4p - 1.
    const long lo = std::max<long>(1, static_cast<long>(4 * previous));
    if (lo > n / 2) break;
    LogBoundRow row = log_bound_row(n, std::min<long>(static_cast<long>(4 * p - 1), n / 2));
    if (out.rows.empty() || row.log_ratio > out.rows[out.best].log_ratio)
      out.best = out.rows.size();
    out.rows.push_back(std::move(row));
    previous = p;
  }
  return out;
}

Real growth_function(const Real& t) {
  return cbrt(t) * (1 + pow(t, Real(1) / 6)) / (1 + t);
}

Real growth_function_log_derivative(const Real& t) {
  const Real s = pow(t, Real(1) / 6);
  return 1 / (3 * t) + s / (6 * t * (1 + s)) - 1 / (1 + t);
}

AsymptoticResult asymptotic_constant(int digits) {
  if (digits < 1) throw DomainError("digits must be at least 1");
  PrecisionScope scope(digits + 20);

  constexpr int kGrid = 1000;
  std::vector<Real> values;
  values.reserve(kGrid - 1);
  for (int i = 1; i < kGrid; ++i) values.push_back(growth_function(Real(i) / kGrid));
  const auto peak = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const bool rising = values[i] < values[i + 1];
    if ((i < peak && !rising) || (i >= peak && rising))
      throw InternalInconsistency("growth function is not unimodal on the grid");
  }
  if (peak == 0 || peak + 1 == values.size())
    throw InternalInconsistency("grid maximum on the boundary");

  // Grid point i holds t = (i + 1) / kGrid.
  Real lo = Real(static_cast<long>(peak)) / kGrid;
  Real hi = Real(static_cast<long>(peak) + 2) / kGrid;
  if (!(growth_function_log_derivative(lo) > 0 && growth_function_log_derivative(hi) < 0))
    throw InternalInconsistency("derivative does not change sign across the grid peak");
  // Guard digits keep the truncated output exact away from digit boundaries.
  const Real width = pow(Real(10), -(digits + 10));
  while (hi - lo > width) {
    const Real mid = (lo + hi) / 2;
    if (growth_function_log_derivative(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }

  AsymptoticResult res;
  res.digits = digits;
  res.t_star = (lo + hi) / 2;
  res.bracket = hi - lo;
  res.c = growth_function(res.t_star) - 1;
  res.cube_root_t = cbrt(res.t_star);
  if (!(res.cube_root_t > Real(1) / 2))
    throw InternalInconsistency("maximizer violates t^(1/3) > 1/2");
  res.c_decimal = truncated_decimal(res.c, digits);
  res.t_star_decimal = truncated_decimal(res.t_star, digits);
  res.grid_points = kGrid - 1;
  return res;
}

} // namespace slicerank
