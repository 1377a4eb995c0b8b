#include "slicerank/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "slicerank/errors.hpp"
#include "slicerank/report.hpp"

namespace slicerank::cli {

namespace {

// Verification triples above which `verify` refuses exhaustive mode.
constexpr double kMaxExhaustiveTriples = 5e9;
// Exhaustive checks inside `report` stay below this many triples.
constexpr double kReportExhaustiveTriples = 2e6;
constexpr int kReportSliceMaxN = 10;

std::string approx(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

struct Shared {
  std::string format;
  std::string output;
  bool timing = false;
};

struct Outcome {
  Certificate cert;
  // Set when the command has a tabular form.
  std::optional<std::string> csv;
};

void add_shared(CLI::App* sub, Shared& s) {
  sub->add_option("--format", s.format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--output", s.output, "Write the output to this file instead of stdout");
  sub->add_flag("--timing", s.timing, "Record wall-clock time (output is then not reproducible)");
}

Json shared_json(const Shared& s, const std::string& format) {
  return Json{{"format", format}, {"output", s.output}, {"timing", s.timing}};
}

CertificateStatus worst(CertificateStatus a, CertificateStatus b) {
  auto rank = [](CertificateStatus s) {
    return s == CertificateStatus::fail ? 2 : s == CertificateStatus::partial ? 1 : 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

CertificateStatus pass_if(bool ok) { return ok ? CertificateStatus::pass : CertificateStatus::fail; }

TriangleParams make_params(int n, int k, std::optional<std::uint32_t> prime) {
  return prime ? TriangleParams::with_prime(n, k, *prime) : TriangleParams::for_slice(n, k);
}

double slice_size(int n, int k) {
  if (n < 1 || k < 0 || k > n) return 0;
  return binomial(n, k).convert_to<double>();
}

void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      render_text(value, prefix.empty() ? key : prefix + "." + key, os);
  } else if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); });
    if (j.size() > 8 || !scalars) {
      if (j.size() <= 8) {
        for (std::size_t i = 0; i < j.size(); ++i)
          render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
      } else {
        os << prefix << ": [" << j.size() << " items]\n";
      }
    } else {
      os << prefix << ": " << j.dump() << '\n';
    }
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

// --- constant ---------------------------------------------------------------

struct ConstantArgs {
  int digits = 10;
};

Outcome constant_command(const ConstantArgs& a) {
  Outcome o;
  PrecisionScope scope(a.digits + 20);
  const AsymptoticResult r = asymptotic_constant(a.digits);
  o.cert.command = "constant";
  o.cert.config = {{"digits", a.digits}};
  o.cert.paper_anchor =
      "growth constant c of the lower bound (1 + c + o(1))^n for the triangle chromatic number";
  o.cert.results = to_json(r);
  o.cert.status = CertificateStatus::pass;
  o.csv = "digits,c,t_star\n" + std::to_string(a.digits) + "," + r.c_decimal + "," +
          r.t_star_decimal + "\n";
  return o;
}

// --- bound ------------------------------------------------------------------

struct BoundArgs {
  long n = 0;
  std::optional<long> k;
  bool all_k = false;
  std::string mode = "both";
  bool log = false;
  int digits = 20;
};

Outcome bound_command(const BoundArgs& a) {
  if (a.n < 2) throw DomainError("bound requires n >= 2");
  if (a.k && (*a.k < 1 || 2 * *a.k > a.n)) throw DomainError("bound requires 1 <= k <= n/2");
  Outcome o;
  PrecisionScope scope(std::max(kDefaultDigits, a.digits + 10));
  const bool log_domain = a.log || a.n > kLogDomainThreshold;
  o.cert.command = "bound";
  o.cert.config = {{"n", a.n},
                   {"k", a.k ? Json(*a.k) : Json("all")},
                   {"mode", a.mode},
                   {"domain", log_domain ? "log" : "exact"},
                   {"digits", a.digits}};
  o.cert.paper_anchor = "finite-n chromatic lower bound |slice| / slice-rank ceiling";

  if (log_domain) {
    LogFiniteBound b;
    if (a.k) {
      b.n = a.n;
      b.rows.push_back(log_bound_row(a.n, *a.k));
    } else {
      b = finite_lower_bound_log(a.n);
    }
    o.cert.results = to_json(b, a.digits);
    o.cert.status = CertificateStatus::pass;
    o.csv = log_bound_csv(b.n, b.rows, a.digits);
    return o;
  }

  const FiniteBound b = a.k ? finite_lower_bound(a.n, *a.k, *a.k) : finite_lower_bound(a.n);
  BoundColumns cols;
  cols.exact = a.mode != "gf";
  cols.gf = a.mode != "exact";
  cols.digits = a.digits;
  o.cert.results = to_json(b, cols);

  // The generating-function ceiling dominates the exact count on every row.
  bool ordered = true;
  for (const auto& row : b.rows)
    if (Real(row.rank_ceiling_exact) > row.rank_ceiling_gf) ordered = false;
  o.cert.results["exact_within_gf"] = ordered;
  o.cert.status = pass_if(ordered);
  o.csv = bound_csv(b, cols);
  return o;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  int n = 0;
  int k = 0;
  bool exhaustive = false;
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> prime;
};

Json verify_results(const TriangleParams& params, bool exhaustive, std::uint64_t samples,
                    std::uint64_t seed, CertificateStatus& status) {
  IdentitySuiteOptions opt;
  opt.exhaustive = exhaustive;
  opt.samples = samples;
  opt.seed = seed;
  opt.greedy_seed = seed;
  opt.check_witness = slice_size(params.n, params.k) <= EnumerationBudget{}.max_vertices;
  const IdentitySuiteResult r = run_identity_suite(params, opt);
  Json j = to_json(r);
  if (!opt.check_witness) j["greedy_witness_diagonal"] = "skipped: slice exceeds enumeration budget";
  status = pass_if(r.passed());
  return j;
}

Outcome verify_command(const VerifyArgs& a) {
  const TriangleParams params = make_params(a.n, a.k, a.prime);
  const bool exhaustive = !a.sample;
  const double m = slice_size(a.n, a.k);
  if (exhaustive && m * m * m > kMaxExhaustiveTriples)
    throw ResourceError("exhaustive verification needs " + approx(m * m * m) +
                            " triples; use --sample",
                        m * m * m, kMaxExhaustiveTriples);
  Outcome o;
  o.cert.command = "verify";
  o.cert.config = {{"n", a.n},
                   {"k", a.k},
                   {"p", params.p},
                   {"scope", exhaustive ? "exhaustive" : "sampled"},
                   {"samples", exhaustive ? 0 : *a.sample},
                   {"seed", a.seed}};
  o.cert.paper_anchor = "coordinate-profile identities, equilateral distance bound for a1 = 0, "
                        "support and diagonality of F, G, H";
  o.cert.results = verify_results(params, exhaustive, exhaustive ? 0 : *a.sample, a.seed,
                                  o.cert.status);
  return o;
}

// --- expand -----------------------------------------------------------------

struct ExpandArgs {
  int n = 0;
  int k = 0;
  std::optional<std::uint32_t> prime;
  std::string check = "exhaustive";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  ExpansionBudget budget;
  std::string dump;
};

Json expand_results(const TriangleParams& params, const ExpansionBudget& budget, CheckPlan plan,
                    CertificateStatus& status, const std::string& dump) {
  ExpansionStats stats;
  const MonomialMap h = expand_H(params, budget, &stats);
  const PointwiseReport hcheck = verify_expansion(h, plan);
  std::optional<PointwiseReport> cube;
  if (plan.scope == CheckScope::exhaustive_slice && params.n <= 6)
    cube = verify_expansion(h, CheckPlan::cube());
  const SliceDecomposition d = build_slice_decomposition(h);
  const PointwiseReport dcheck = verify_decomposition(d, plan);
  const SliceCount count = slice_count(d);

  Json j;
  j["params"] = params_json(params);
  j["expansion"] = {{"f_terms", stats.f_terms},
                    {"f_last_factor_raw_terms", stats.f_raw_terms},
                    {"g_terms", stats.g_terms},
                    {"product_terms", stats.product_terms},
                    {"h_terms", h.size()},
                    {"max_degree", h.max_degree()},
                    {"degree_bound", params.degree_bound},
                    {"within_degree_bound", h.max_degree() <= params.degree_bound}};
  j["expansion_check"] = to_json(hcheck);
  if (cube) j["cube_check"] = to_json(*cube);
  j["decomposition"] = {{"entries", d.entries.size()},
                        {"slice_count", to_json(count)},
                        {"check", to_json(dcheck)}};
  const bool ok = hcheck.passed && (!cube || cube->passed) && dcheck.passed &&
                  count.within_ceiling && h.max_degree() <= params.degree_bound;
  status = pass_if(ok);

  if (!dump.empty()) {
    std::ofstream f(dump, std::ios::binary);
    if (!f) throw DomainError("cannot open dump file " + dump);
    f << Json{{"monomial_map", to_json(h)}, {"decomposition", to_json(d)}}.dump() << '\n';
  }
  return j;
}

Outcome expand_command(const ExpandArgs& a) {
  const TriangleParams params = make_params(a.n, a.k, a.prime);
  const CheckPlan plan =
      a.check == "exhaustive" ? CheckPlan::slice() : CheckPlan::sampled(a.samples, a.seed);
  Outcome o;
  o.cert.command = "expand";
  o.cert.config = {{"n", a.n},
                   {"k", a.k},
                   {"p", params.p},
                   {"check", a.check},
                   {"samples", a.check == "exhaustive" ? 0 : a.samples},
                   {"seed", a.seed},
                   {"budget",
                    {{"max_n", a.budget.max_n},
                     {"max_p", a.budget.max_p},
                     {"max_product_terms", a.budget.max_product_terms}}},
                   {"dump", a.dump}};
  o.cert.paper_anchor = "multilinear expansion of H = F * G and its slice decomposition of size "
                        "at most 3 * sum_{j <= floor(D/3)} C(n, j)";
  o.cert.results = expand_results(params, a.budget, plan, o.cert.status, a.dump);
  return o;
}

// --- search -----------------------------------------------------------------

struct SearchArgs {
  int n = 0;
  int k = 0;
  std::optional<std::uint32_t> prime;
  std::uint64_t nodes = 100'000'000;
  std::uint64_t seed = 0;
};

Json search_results(const TriangleParams& params, std::uint64_t nodes, std::uint64_t seed,
                    CertificateStatus& status) {
  const TriangleHypergraph h = enumerate_triangles(params);
  SearchBudget budget;
  budget.max_nodes = nodes;
  budget.seed = seed;
  const OracleResult r = max_triangle_free(h, budget);

  std::vector<SlicePoint> witness;
  for (auto i : r.witness) witness.push_back(h.vertices[i]);
  const bool free = is_triangle_free(witness, params.side_squared());
  const auto mode = witness.size() <= 512 ? DiagonalCheckMode::complete()
                                          : DiagonalCheckMode::sampled(10000, seed);
  const DiagonalCertificate diag = verify_diagonal_on(witness, params, mode);
  const BigInt ceiling = rank_ceiling_exact(params);
  const bool within = BigInt(r.size) <= ceiling;

  Json j;
  j["params"] = params_json(params);
  j["hypergraph"] = {{"vertices", h.vertices.size()}, {"edges", h.edges.size()}};
  j["oracle"] = to_json(r, h);
  j["witness_triangle_free"] = free;
  j["witness_diagonal"] = to_json(diag);
  j["rank_ceiling_exact"] = decimal(ceiling);
  j["within_rank_ceiling"] = within;

  // A diagonal witness must respect the slice-rank ceiling.
  const bool ok = free && diag.passed() && within;
  status = !ok ? CertificateStatus::fail
               : r.status == OracleStatus::exact ? CertificateStatus::pass
                                                 : CertificateStatus::partial;
  return j;
}

Outcome search_command(const SearchArgs& a) {
  const TriangleParams params = make_params(a.n, a.k, a.prime);
  Outcome o;
  o.cert.command = "search";
  o.cert.config = {{"n", a.n}, {"k", a.k}, {"p", params.p}, {"nodes", a.nodes}, {"seed", a.seed}};
  o.cert.paper_anchor = "largest triangle-free subset of the slice versus the slice-rank ceiling";
  o.cert.results = search_results(params, a.nodes, a.seed, o.cert.status);
  return o;
}

// --- report -----------------------------------------------------------------

struct ReportArgs {
  std::vector<long> n_list;
  int digits = 10;
  std::uint64_t samples = 10000;
  std::uint64_t nodes = 1'000'000;
  std::uint64_t seed = 0;
};

Json skipped(const std::string& why) { return Json{{"skipped", why}}; }

Outcome report_command(const ReportArgs& a) {
  for (long n : a.n_list)
    if (n < 2) throw DomainError("report requires every n >= 2");
  Outcome o;
  o.cert.command = "report";
  o.cert.config = {{"n_list", a.n_list},
                   {"digits", a.digits},
                   {"samples", a.samples},
                   {"nodes", a.nodes},
                   {"seed", a.seed}};
  o.cert.paper_anchor = "combined bundle: growth constant, finite bounds, identity, expansion "
                        "and search certificates";
  CertificateStatus status = CertificateStatus::pass;

  Json results;
  results["constant"] = constant_command({a.digits}).cert.results;
  Json instances = Json::array();
  for (long n : a.n_list) {
    Json inst;
    inst["n"] = n;
    BoundArgs ba;
    ba.n = n;
    ba.digits = 20;
    Outcome bound = bound_command(ba);
    status = worst(status, bound.cert.status);
    inst["bound"] = bound.cert.results;

    Json slices = Json::array();
    if (n <= kReportSliceMaxN) {
      const int ni = static_cast<int>(n);
      for (int k = 1; 2 * k <= ni; ++k) {
        const TriangleParams params = TriangleParams::for_slice(ni, k);
        Json s;
        s["k"] = k;
        CertificateStatus st = CertificateStatus::pass;
        const double m = slice_size(ni, k);
        const bool exhaustive = m * m * m <= kReportExhaustiveTriples;
        s["verify"] = verify_results(params, exhaustive, exhaustive ? 0 : a.samples, a.seed, st);
        status = worst(status, st);
        try {
          s["expand"] = expand_results(params, {}, CheckPlan::sampled(a.samples, a.seed), st, "");
          status = worst(status, st);
        } catch (const ResourceError& e) {
          s["expand"] = skipped(e.what());
        }
        try {
          SearchBudget probe;
          if (m > static_cast<double>(probe.max_vertices))
            throw ResourceError("slice exceeds search vertex limit", m,
                                static_cast<double>(probe.max_vertices));
          s["search"] = search_results(params, a.nodes, a.seed, st);
          status = worst(status, st);
        } catch (const ResourceError& e) {
          s["search"] = skipped(e.what());
        }
        slices.push_back(std::move(s));
      }
    }
    inst["slices"] = std::move(slices);
    instances.push_back(std::move(inst));
  }
  results["instances"] = std::move(instances);
  o.cert.results = std::move(results);
  o.cert.status = status;
  return o;
}

int exit_code(CertificateStatus s) {
  switch (s) {
  case CertificateStatus::pass:
    return kPass;
  case CertificateStatus::fail:
    return kFail;
  case CertificateStatus::partial:
    return kPartial;
  }
  return kFail;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slice-rank lower bounds for monochromatic equilateral triangles", "slicerank"};
  app.require_subcommand(1);
  Shared shared;

  ConstantArgs ca;
  auto* constant = app.add_subcommand("constant", "Asymptotic growth constant c");
  constant->add_option("--digits", ca.digits, "Decimal places of c and t*")
      ->check(CLI::Range(1, 2000));

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Finite-n chromatic lower bounds");
  bound->add_option("--n", ba.n, "Dimension")->required();
  auto* bk = bound->add_option("--k", ba.k, "Single slice weight");
  auto* ball = bound->add_flag("--all-k", ba.all_k, "Every k in 1..n/2 (default)");
  bk->excludes(ball);
  bound->add_option("--mode", ba.mode, "Ceiling columns: exact, gf or both")
      ->check(CLI::IsMember({"exact", "gf", "both"}));
  bound->add_flag("--log", ba.log, "Force log-domain evaluation (automatic above n = 10000)");
  bound->add_option("--digits", ba.digits, "Significant digits of real-valued columns")
      ->check(CLI::Range(1, 2000));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Identity and tensor invariant suite");
  verify->add_option("--n", va.n, "Dimension")->required();
  verify->add_option("--k", va.k, "Slice weight")->required();
  auto* vex = verify->add_flag("--exhaustive", va.exhaustive, "All ordered triples (default)");
  auto* vs = verify->add_option("--sample", va.sample, "Number of random triples");
  vex->excludes(vs);
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_option("--prime", va.prime, "Override the canonical prime");

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "Expand H and build its slice decomposition");
  expand->add_option("--n", ea.n, "Dimension")->required();
  expand->add_option("--k", ea.k, "Slice weight")->required();
  expand->add_option("--prime", ea.prime, "Override the canonical prime");
  expand->add_option("--check", ea.check, "Pointwise check: exhaustive or sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  expand->add_option("--samples", ea.samples, "Triples for --check sample");
  expand->add_option("--seed", ea.seed, "Random seed");
  expand->add_option("--max-n", ea.budget.max_n, "Expansion budget: largest n");
  expand->add_option("--max-p", ea.budget.max_p, "Expansion budget: largest p");
  expand->add_option("--max-terms", ea.budget.max_product_terms,
                     "Expansion budget: term products");
  expand->add_option("--dump", ea.dump, "Write the monomial map and decomposition as JSON");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exact maximum triangle-free subset of a slice");
  search->add_option("--n", sa.n, "Dimension")->required();
  search->add_option("--k", sa.k, "Slice weight")->required();
  search->add_option("--prime", sa.prime, "Override the canonical prime");
  search->add_option("--nodes", sa.nodes, "Branch-and-bound node budget");
  search->add_option("--seed", sa.seed, "Seed of the greedy incumbents");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Combined JSON bundle for several n");
  report->add_option("--n-list", ra.n_list, "Dimensions")->required()->expected(1, -1);
  report->add_option("--digits", ra.digits, "Decimal places of the constant")
      ->check(CLI::Range(1, 2000));
  report->add_option("--samples", ra.samples, "Triples for sampled checks");
  report->add_option("--nodes", ra.nodes, "Node budget per search");
  report->add_option("--seed", ra.seed, "Random seed");

  for (auto* sub : {constant, bound, verify, expand, search, report}) add_shared(sub, shared);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string default_format = "json";
  try {
    if (*constant) {
      o = constant_command(ca);
    } else if (*bound) {
      default_format = "csv";
      o = bound_command(ba);
    } else if (*verify) {
      o = verify_command(va);
    } else if (*expand) {
      o = expand_command(ea);
    } else if (*search) {
      o = search_command(sa);
    } else {
      o = report_command(ra);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << " (required " << e.required() << ", limit " << e.limit()
        << ")\n";
    return kUsage;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kFail;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string format = shared.format.empty() ? default_format : shared.format;
  if (format == "csv" && !o.csv) {
    err << "error: csv output is available for constant and bound only\n";
    return kUsage;
  }
  o.cert.config.update(shared_json(shared, format));
  if (shared.timing) o.cert.timing_seconds = seconds;

  std::ostringstream body;
  if (format == "json") {
    body << o.cert.to_json().dump(2) << '\n';
  } else if (format == "csv") {
    body << *o.csv;
  } else {
    render_text(o.cert.to_json(), "", body);
  }

  if (shared.output.empty()) {
    out << body.str();
  } else {
    std::ofstream f(shared.output, std::ios::binary);
    if (!f) {
      err << "error: cannot open output file " << shared.output << '\n';
      return kUsage;
    }
    f << body.str();
  }
  return exit_code(o.cert.status);
}

} // namespace slicerank::cli
