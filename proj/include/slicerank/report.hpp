#pragma once

#include <string>

#include "json.hpp"

#include "slicerank/bounds.hpp"
#include "slicerank/identity_suite.hpp"
#include "slicerank/poly_expand.hpp"
#include "slicerank/search_oracle.hpp"

namespace slicerank {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum class CertificateStatus { pass, fail, partial };

std::string to_string(CertificateStatus s);

// Top-level record emitted by every CLI subcommand.
struct Certificate {
  std::string command;
  Json config;
  std::string paper_anchor;
  Json results;
  CertificateStatus status = CertificateStatus::pass;
  std::optional<double> timing_seconds;

  Json to_json() const;
};

// Exact integers travel as decimal strings.
std::string decimal(const BigInt& v);
std::string ratio_string(const BigRational& r);

Json points_json(const std::vector<SlicePoint>& pts);
Json triple_json(const std::array<SlicePoint, 3>& t);
Json params_json(const TriangleParams& p);

Json to_json(const DiagonalCertificate& c);
Json to_json(const IdentitySuiteResult& r);
Json to_json(const PointwiseReport& r);
Json to_json(const SliceCount& c);
// Full term lists. Masks as fixed-width hex, coefficients in [1, p-1].
Json to_json(const MonomialMap& m);
Json to_json(const SliceDecomposition& d);
Json to_json(const AsymptoticResult& r);

struct BoundColumns {
  bool exact = true;
  bool gf = true;
  int digits = kDefaultDigits;
};

Json to_json(const BoundRow& row, const BoundColumns& cols);
Json to_json(const FiniteBound& b, const BoundColumns& cols);
Json to_json(const LogBoundRow& row, long n, int digits);
Json to_json(const LogFiniteBound& b, int digits);

std::string bound_csv_header(const BoundColumns& cols);
std::string bound_csv(const FiniteBound& b, const BoundColumns& cols);
std::string log_bound_csv_header();
std::string log_bound_csv(long n, const std::vector<LogBoundRow>& rows, int digits);

Json to_json(const OracleResult& r, const TriangleHypergraph& h);

} // namespace slicerank
