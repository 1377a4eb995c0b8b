#include "slicerank/report.hpp"

#include <sstream>

namespace slicerank {

namespace {

std::string hex_mask(std::uint64_t mask, int n) { return SlicePoint(n, mask).to_hex(); }

std::string real_string(const Real& v, int digits) { return decimal_string(v, digits); }

} // namespace

std::string to_string(CertificateStatus s) {
  switch (s) {
  case CertificateStatus::pass:
    return "pass";
  case CertificateStatus::fail:
    return "fail";
  case CertificateStatus::partial:
    return "partial";
  }
  return "fail";
}

Json Certificate::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = config;
  j["paper_anchor"] = paper_anchor;
  j["results"] = results;
  j["status"] = to_string(status);
  if (timing_seconds) j["timing"] = {{"seconds", *timing_seconds}};
  return j;
}

std::string decimal(const BigInt& v) { return v.str(); }

std::string ratio_string(const BigRational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Json points_json(const std::vector<SlicePoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.to_hex());
  return a;
}

Json triple_json(const std::array<SlicePoint, 3>& t) {
  return Json::array({t[0].to_hex(), t[1].to_hex(), t[2].to_hex()});
}

Json params_json(const TriangleParams& p) {
  return Json{{"n", p.n},
              {"k", p.k},
              {"p", p.p},
              {"degree_bound", p.degree_bound},
              {"r", p.r_count},
              {"within_hypothesis", p.within_hypothesis()},
              {"active_window", p.in_active_window()}};
}

Json to_json(const DiagonalCertificate& c) {
  Json values = Json::array();
  for (const auto& [pt, v] : c.diagonal_values) values.push_back(Json::array({pt.to_hex(), v}));
  Json j{{"params", params_json(c.params)},
         {"set_size", c.set_size},
         {"mode", c.status == DiagonalMode::complete ? "complete" : "sampled"},
         {"off_diagonal_checked", c.off_diagonal_checked},
         {"diagonal_values", values},
         {"passed", c.passed()}};
  if (c.violation)
    j["violation"] = {{"kind", to_string(c.violation->kind)},
                      {"triple", triple_json(c.violation->triple)},
                      {"value", c.violation->value}};
  return j;
}

Json to_json(const IdentitySuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j{{"name", c.name}, {"checked", c.checked}, {"violations", c.violations}};
    if (c.first_violation) j["first_violation"] = triple_json(*c.first_violation);
    checks.push_back(j);
  }
  Json j{{"params", params_json(r.params)},
         {"scope", r.exhaustive ? "exhaustive" : "sampled"},
         {"triples", r.triples},
         {"checks", checks}};
  if (r.witness_certificate) j["greedy_witness_diagonal"] = to_json(*r.witness_certificate);
  j["passed"] = r.passed();
  return j;
}

Json to_json(const PointwiseReport& r) {
  Json j{{"passed", r.passed}, {"checked", r.checked}, {"max_key_weight", r.max_key_weight}};
  if (r.mismatch)
    j["mismatch"] = {{"triple", triple_json(r.mismatch->triple)},
                     {"expected", r.mismatch->expected},
                     {"actual", r.mismatch->actual}};
  return j;
}

Json to_json(const SliceCount& c) {
  return Json{{"entries", c.entries},
              {"ceiling", std::to_string(c.ceiling)},
              {"within_ceiling", c.within_ceiling}};
}

Json to_json(const MonomialMap& m) {
  const int n = m.params().n;
  Json terms = Json::array();
  for (const auto& t : m.terms())
    terms.push_back(Json::array({hex_mask(t.ex, n), hex_mask(t.ey, n), hex_mask(t.ez, n), t.coeff}));
  return Json{{"params", params_json(m.params())}, {"term_layout", "[ex, ey, ez, coeff]"},
              {"terms", terms}};
}

Json to_json(const SliceDecomposition& d) {
  const int n = d.params.n;
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    Json cof = Json::array();
    for (const auto& c : e.cofactor)
      cof.push_back(Json::array({hex_mask(c.first, n), hex_mask(c.second, n), c.coeff}));
    entries.push_back(Json{{"block", std::string(1, to_char(e.block))},
                           {"key", hex_mask(e.key, n)},
                           {"cofactor", cof}});
  }
  return Json{{"params", params_json(d.params)},
              {"cofactor_layout", "[first, second, coeff], remaining blocks in X, Y, Z order"},
              {"entries", entries}};
}

Json to_json(const AsymptoticResult& r) {
  return Json{
      {"digits", r.digits},
      {"c", r.c_decimal},
      {"t_star", r.t_star_decimal},
      {"base", "1." + r.c_decimal.substr(r.c_decimal.find('.') + 1)},
      {"bracket", real_string(r.bracket, 6)},
      {"t_star_cube_root", truncated_decimal(r.cube_root_t, r.digits)},
      {"side_condition", "t_star^(1/3) > 1/2"},
      {"grid_points", r.grid_points},
      {"error_term",
       "eps0 = n^0.525 enters as t^(eps0/n) = 1 + o(1); slicing exponent r = n/3 + k/6 + eps0/3"}};
}

Json to_json(const BoundRow& row, const BoundColumns& cols) {
  const auto& p = row.params;
  Json j{{"n", p.n},
         {"k", p.k},
         {"p", p.p},
         {"degree_bound", p.degree_bound},
         {"r", p.r_count},
         {"slice_size", decimal(row.slice_size)}};
  if (cols.exact) j["rank_ceiling_exact"] = decimal(row.rank_ceiling_exact);
  if (cols.gf) j["rank_ceiling_gf"] = real_string(row.rank_ceiling_gf, cols.digits);
  j["ratio"] = ratio_string(row.ratio);
  j["ratio_decimal"] = real_string(Real(row.ratio), 12);
  j["chromatic_lb"] = decimal(row.chromatic_lb);
  j["active_window"] = p.in_active_window();
  return j;
}

Json to_json(const FiniteBound& b, const BoundColumns& cols) {
  Json rows = Json::array();
  for (const auto& r : b.rows) rows.push_back(to_json(r, cols));
  const auto& best = b.rows.at(b.best);
  return Json{{"n", b.n},
              {"domain", "exact"},
              {"rows", rows},
              {"best", {{"k", best.params.k},
                        {"ratio", ratio_string(best.ratio)},
                        {"chromatic_lb", decimal(best.chromatic_lb)}}}};
}

Json to_json(const LogBoundRow& row, long n, int digits) {
  return Json{{"n", n},
              {"k", row.k},
              {"p", row.p},
              {"r", row.r},
              {"log_slice_size", real_string(row.log_slice_size, digits)},
              {"log_rank_ceiling", real_string(row.log_rank_ceiling, digits)},
              {"log_ratio", real_string(row.log_ratio, digits)}};
}

Json to_json(const LogFiniteBound& b, int digits) {
  Json rows = Json::array();
  for (const auto& r : b.rows) rows.push_back(to_json(r, b.n, digits));
  const auto& best = b.rows.at(b.best);
  return Json{{"n", b.n},
              {"domain", "log"},
              {"rows", rows},
              {"best", {{"k", best.k},
                        {"log_ratio", real_string(best.log_ratio, digits)},
                        {"growth", real_string(b.growth(), digits)},
                        {"k_fraction", real_string(b.best_k_fraction(), digits)}}}};
}

std::string bound_csv_header(const BoundColumns& cols) {
  std::string h = "n,k,p,degree_bound,r,slice_size";
  if (cols.exact) h += ",rank_ceiling_exact";
  if (cols.gf) h += ",rank_ceiling_gf";
  return h + ",ratio,chromatic_lb,active_window\n";
}

std::string bound_csv(const FiniteBound& b, const BoundColumns& cols) {
  std::ostringstream os;
  os << bound_csv_header(cols);
  for (const auto& row : b.rows) {
    const auto& p = row.params;
    os << p.n << ',' << p.k << ',' << p.p << ',' << p.degree_bound << ',' << p.r_count << ','
       << decimal(row.slice_size);
    if (cols.exact) os << ',' << decimal(row.rank_ceiling_exact);
    if (cols.gf) os << ',' << real_string(row.rank_ceiling_gf, cols.digits);
    os << ',' << ratio_string(row.ratio) << ',' << decimal(row.chromatic_lb) << ','
       << (p.in_active_window() ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string log_bound_csv_header() {
  return "n,k,p,r,log_slice_size,log_rank_ceiling,log_ratio\n";
}

std::string log_bound_csv(long n, const std::vector<LogBoundRow>& rows, int digits) {
  std::ostringstream os;
  os << log_bound_csv_header();
  for (const auto& r : rows)
    os << n << ',' << r.k << ',' << r.p << ',' << r.r << ','
       << real_string(r.log_slice_size, digits) << ',' << real_string(r.log_rank_ceiling, digits)
       << ',' << real_string(r.log_ratio, digits) << '\n';
  return os.str();
}

Json to_json(const OracleResult& r, const TriangleHypergraph& h) {
  std::vector<SlicePoint> witness;
  for (auto i : r.witness) witness.push_back(h.vertices[i]);
  return Json{{"size", r.size},
              {"status", to_string(r.status)},
              {"nodes_expanded", r.nodes_expanded},
              {"budget_spent", r.budget_spent},
              {"greedy_incumbent", r.greedy_size},
              {"witness", points_json(witness)}};
}

} // namespace slicerank
