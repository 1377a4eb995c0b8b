#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "slicerank/modular_tensor.hpp"

namespace slicerank {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

// Working precision of the CLI. Library calls use the ambient Real default
// precision, so callers wrap them in a PrecisionScope.
inline constexpr int kDefaultDigits = 50;

// Sets the working precision (decimal digits) of newly created Reals for the
// lifetime of the guard.
class PrecisionScope {
public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  unsigned previous_;
};

// Decimal string of v truncated (toward zero) to `decimals` places after the point.
std::string truncated_decimal(const Real& v, int decimals);
// Decimal string with `digits` significant digits, round to nearest.
std::string decimal_string(const Real& v, int digits);

BigInt binomial(long n, long k);
// sum_{j=0}^{min(r,n)} C(n, j); zero for r < 0.
BigInt count_low_weight(long n, long r);

// (1+t)^n / t^r at the current precision, round to nearest.
Real gf_bound(long n, long r, const Real& t);
// Same quantity rounded downward at every step: a certified lower bound on
// the exact value, used for conservative comparisons.
Real gf_bound_lower(long n, long r, const Real& t);

// Minimizer r/(n-r) of (1+t)^n / t^r over (0,1); requires 0 < r < n/2.
Real optimal_t(long n, long r);
// d/dt log gf_bound = n/(1+t) - r/t.
Real gf_log_derivative(long n, long r, const Real& t);

enum class CeilingVariant { exact, gf };

BigInt rank_ceiling_exact(const TriangleParams& params);
// 3 * min_{0<t<1} (1+t)^n / t^r with r = floor(D/3). When r >= n/2 the
// infimum is the t -> 1 limit, 3 * 2^n.
Real rank_ceiling_gf(const TriangleParams& params);

struct BinomialTerm {
  long k_star = 0;
  Real value;
};

// max_{0 <= k <= n/2} C(n,k) x^k, smallest maximizing index.
BinomialTerm max_binomial_term(long n, const Real& x);

// --- finite-n bounds -------------------------------------------------------

struct BoundRow {
  TriangleParams params;
  BigInt slice_size;
  BigInt rank_ceiling_exact;
  Real rank_ceiling_gf;
  BigRational ratio; // slice_size / rank_ceiling_exact
  BigInt chromatic_lb; // max(ceil(ratio), 1)
};

struct FiniteBound {
  long n = 0;
  std::vector<BoundRow> rows;
  std::size_t best = 0; // index of the row with the largest ratio
};

// Rows for k in [k_lo, k_hi] (clipped to 1..n/2). Exact arithmetic throughout.
FiniteBound finite_lower_bound(long n, std::optional<long> k_lo = std::nullopt,
                               std::optional<long> k_hi = std::nullopt);

// Log-domain row: logs are natural logarithms.
struct LogBoundRow {
  long k = 0;
  std::uint64_t p = 0;
  long r = 0;
  Real log_slice_size;
  Real log_rank_ceiling;
  Real log_ratio;
};

struct LogFiniteBound {
  long n = 0;
  // One row per odd prime class: k = min(4p - 1, n/2) maximizes the ratio
  // within the class, since the ceiling depends on k only through p.
  std::vector<LogBoundRow> rows;
  std::size_t best = 0;

  // (best ratio)^(1/n)
  Real growth() const;
  Real best_k_fraction() const;
};

// Threshold above which the CLI switches to log-domain evaluation.
inline constexpr long kLogDomainThreshold = 10000;

Real log_binomial(long n, long k);
// log sum_{j <= r} C(n, j)
Real log_count_low_weight(long n, long r);

// Row for one (n, k) with the canonical prime.
LogBoundRow log_bound_row(long n, long k);
LogFiniteBound finite_lower_bound_log(long n);

// --- asymptotic constant ---------------------------------------------------

// t^(1/3) (1 + t^(1/6)) / (1 + t)
Real growth_function(const Real& t);
Real growth_function_log_derivative(const Real& t);

struct AsymptoticResult {
  int digits = 0;
  Real t_star;
  Real c;             // growth_function(t_star) - 1
  Real bracket;       // final bisection interval width
  Real cube_root_t;   // t_star^(1/3), asserted > 1/2
  std::string c_decimal;      // truncated to `digits` places
  std::string t_star_decimal; // truncated to `digits` places
  int grid_points = 0;
};

// Grid pre-scan for unimodality, then bisection on the sign of the
// derivative. Throws InternalInconsistency if the scan is not unimodal.
AsymptoticResult asymptotic_constant(int digits);

} // namespace slicerank
