// spt2: command-line front end.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or infrastructure error.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "spt2/exprlang.hpp"
#include "spt2/fixtures.hpp"
#include "spt2/report.hpp"
#include "spt2/table_cache.hpp"
#include "spt2/verify.hpp"

namespace {

using namespace spt2;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string format;  // empty: command default
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 1;

  std::string fmt(const char* fallback) const { return format.empty() ? fallback : format; }

  Spt2Table table(std::size_t n) const {
    if (no_cache) return build_table(n);
    std::filesystem::path dir = default_cache_dir();
    if (!cache_dir.empty()) dir = cache_dir;
    return load_or_build_table(n, dir).table;
  }
};

std::string json_or_text(const Config& cfg) {
  const std::string f = cfg.fmt("json");
  if (f == "csv") throw UsageError("--format csv is only available for 'table'");
  return f;
}

std::string claim_text(const CongruenceClaim& c) {
  return "spt2(" + std::to_string(c.step) + "n+" + std::to_string(c.offset) + ") = 0 mod " +
         std::to_string(c.modulus);
}

std::string violations_text(const ClaimReport& r) {
  std::string s;
  for (std::size_t i = 0; i < r.violations.size() && i < 8; ++i) {
    if (i > 0) s += ' ';
    s += "n=" + std::to_string(r.violations[i].n) + ":" + std::to_string(r.violations[i].value_mod);
  }
  if (r.violations.size() > 8) s += " ...";
  return s;
}

void print_claims(const std::vector<ClaimReport>& reports, const std::string& format) {
  if (format == "json") {
    for (const auto& r : reports) std::cout << claim_json(r).dump() << '\n';
    return;
  }
  TextTable t({"label", "claim", "n_max", "witnesses", "status", "violations"});
  for (const auto& r : reports) {
    t.add_row({r.label, claim_text(r.claim), std::to_string(r.claim.n_max),
               std::to_string(r.witnesses_checked), r.pass ? "pass" : "FAIL", violations_text(r)});
  }
  t.render(std::cout);
}

// ---- table ------------------------------------------------------------------

int cmd_table(const Config& cfg, std::size_t n, bool cross_check) {
  const std::string format = cfg.fmt("csv");
  const Spt2Table t = cfg.table(n);
  int rc = kPass;
  if (cross_check) {
    if (n > static_cast<std::size_t>(kDefaultEnumerationLimit)) {
      throw UsageError("--cross-check enumerates overpartitions and needs N <= " +
                       std::to_string(kDefaultEnumerationLimit));
    }
    const Spt2Table e = build_table_by_enumeration(static_cast<int>(n));
    for (std::size_t i = 0; i <= n; ++i) {
      if (e.values[i] != t.values[i]) {
        std::cerr << "cross-check mismatch at n = " << i << ": genfunc " << t.values[i]
                  << ", enumeration " << e.values[i] << '\n';
        rc = kViolation;
      }
    }
    if (rc == kPass) std::cerr << "cross-check: enumeration agrees for 0 <= n <= " << n << '\n';
  }
  if (format == "csv") {
    write_csv(t, std::cout);
  } else if (format == "json") {
    for (std::size_t i = 0; i <= n; ++i) {
      std::cout << Json{{"n", i}, {"spt2", integer_json(t.values[i])}}.dump() << '\n';
    }
  } else {
    TextTable tt({"n", "spt2(n)"});
    for (std::size_t i = 0; i <= n; ++i) tt.add_row({std::to_string(i), t.values[i].get_str()});
    tt.render(std::cout);
  }
  return rc;
}

// ---- verify -----------------------------------------------------------------

int cmd_verify(const Config& cfg, const CongruenceClaim& c) {
  const std::string format = json_or_text(cfg);
  if (c.step < 1 || c.modulus < 2) throw UsageError("need a >= 1 and M >= 2");
  const Spt2Table t = cfg.table(c.largest_argument());
  const ClaimReport r = verify_claim(c, t, "");
  print_claims({r}, format);
  return r.pass ? kPass : kViolation;
}

struct TheoremOptions {
  std::string which;
  std::uint64_t max_arg = 3000;
  std::uint64_t n_max = 0;  // 0: per-theorem default
  unsigned j_max = 3;
  bool replay = false;
  unsigned replay_j_max = 2;
  std::vector<std::uint64_t> primes{5, 7, 13};
  unsigned k_max = 0;
  std::uint64_t m_max = 10;
};

int theorem_prior(const Config& cfg, const TheoremOptions& o, const std::string& format) {
  const auto claims = prior_claims(o.max_arg);
  const Spt2Table t = cfg.table(o.max_arg);
  std::vector<ClaimReport> reports;
  bool ok = true;
  for (const auto& [name, c] : claims) {
    reports.push_back(verify_claim(c, t, name));
    ok = ok && reports.back().pass;
  }
  print_claims(reports, format);
  return ok ? kPass : kViolation;
}

int theorem_1(const Config& cfg, const TheoremOptions& o, const std::string& format) {
  const auto claims = theorem1_claims(o.n_max ? o.n_max : 50);
  std::uint64_t need = 0;
  for (const auto& [name, c] : claims) need = std::max(need, c.largest_argument());
  const Spt2Table t = cfg.table(need);
  std::vector<ClaimReport> reports;
  bool ok = true;
  for (const auto& [name, c] : claims) {
    reports.push_back(verify_claim(c, t, name));
    ok = ok && reports.back().pass;
  }
  print_claims(reports, format);
  return ok ? kPass : kViolation;
}

int theorem_2(const Config& cfg, const TheoremOptions& o, const std::string& format) {
  const std::uint64_t n_max = o.n_max ? o.n_max : 10;
  const auto families = theorem2_families(o.j_max, n_max);
  std::uint64_t need = 0;
  for (const auto& f : families) {
    need = std::max(need, f.instance(f.j_max).largest_argument());
    if (o.replay) need = std::max(need, f.instance(o.replay_j_max + 1).largest_argument());
  }
  const Spt2Table t = cfg.table(need);
  bool ok = true;
  std::vector<FamilyReport> fams;
  std::vector<InductionStepReport> steps;
  for (const auto& f : families) {
    fams.push_back(verify_family(f, t));
    ok = ok && fams.back().pass;
    if (!o.replay) continue;
    for (unsigned j = 0; j <= o.replay_j_max; ++j) {
      steps.push_back(verify_induction_step(f, j, n_max, t));
      ok = ok && steps.back().status == InductionStatus::Pass;
    }
  }
  if (format == "json") {
    for (const auto& r : fams) std::cout << family_json(r).dump() << '\n';
    for (const auto& r : steps) std::cout << induction_json(r).dump() << '\n';
  } else {
    std::vector<ClaimReport> all;
    for (const auto& r : fams) all.insert(all.end(), r.instances.begin(), r.instances.end());
    print_claims(all, format);
    if (!steps.empty()) {
      std::cout << '\n';
      TextTable tt({"family", "j", "status", "doubling", "reason"});
      for (const auto& s : steps) {
        tt.add_row({s.family, std::to_string(s.j), to_string(s.status),
                    s.doubling_holds ? "holds" : "FAILS", s.reason});
      }
      tt.render(std::cout);
    }
  }
  return ok ? kPass : kViolation;
}

int theorem_3(const Config& cfg, const TheoremOptions& o, const std::string& format) {
  std::vector<PrimeFamilyClaim> claims;
  std::uint64_t need = 0;
  for (auto p : o.primes) {
    PrimeFamilyClaim c{p, o.k_max, o.m_max, 4};
    validate_prime_family(c);
    need = std::max(need, prime_family_largest_argument(c));
    claims.push_back(c);
  }
  const Spt2Table t = cfg.table(need);
  bool ok = true;
  std::vector<PrimeFamilyReport> reports;
  for (const auto& c : claims) {
    reports.push_back(verify_prime_family(c, t));
    ok = ok && reports.back().pass;
  }
  if (format == "json") {
    for (const auto& r : reports) std::cout << prime_family_json(r).dump() << '\n';
  } else {
    TextTable tt({"p", "k", "m", "argument", "4n'+3", "spt2 mod 4", "x^2+2y^2", "nu_p", "status"});
    for (const auto& r : reports) {
      for (const auto& x : r.instances) {
        tt.add_row({std::to_string(r.claim.p), std::to_string(x.k), std::to_string(x.m),
                    std::to_string(x.argument), std::to_string(x.form_value),
                    std::to_string(x.value_mod), x.representable ? "yes" : "no",
                    std::to_string(x.valuation), x.pass ? "pass" : "FAIL"});
      }
    }
    tt.render(std::cout);
  }
  return ok ? kPass : kViolation;
}

int cmd_verify_theorem(const Config& cfg, const TheoremOptions& o) {
  const std::string format = json_or_text(cfg);
  if (o.which == "prior") return theorem_prior(cfg, o, format);
  if (o.which == "1") return theorem_1(cfg, o, format);
  if (o.which == "2") return theorem_2(cfg, o, format);
  return theorem_3(cfg, o, format);
}

// ---- identity ---------------------------------------------------------------

struct IdentityOptions {
  std::vector<std::string> names;
  bool all = false;
  bool list = false;
  std::string file;
  std::size_t order = 0;  // 0: per-fixture
};

int cmd_identity(const Config& cfg, const IdentityOptions& o) {
  const std::string format = json_or_text(cfg);
  std::vector<Fixture> pool;
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw UsageError("cannot read fixture file '" + o.file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    pool = parse_fixtures(ss.str());
  } else {
    pool = builtin_fixtures();
  }
  if (o.list) {
    for (const auto& f : pool) {
      std::cout << f.name << (f.expect_fail ? "  (xfail)" : "") << '\n';
    }
    return kPass;
  }

  // Suites honour xfail; fixtures named on the command line are judged as written.
  std::vector<const Fixture*> selected;
  bool suite = false;
  if (o.names.empty()) {
    if (!o.all && o.file.empty()) throw UsageError("name a fixture, or pass --all or --file");
    suite = true;
    for (const auto& f : pool) selected.push_back(&f);
  } else {
    if (o.all) throw UsageError("--all cannot be combined with fixture names");
    for (const auto& name : o.names) {
      auto it = std::find_if(pool.begin(), pool.end(), [&](const Fixture& f) { return f.name == name; });
      if (it == pool.end()) throw UsageError("unknown fixture '" + name + "'");
      selected.push_back(&*it);
    }
  }

  Spt2Source source;
  std::vector<CheckReport> reports(selected.size());
  std::vector<std::string> errors(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < selected.size();) {
      try {
        reports[i] = run_fixture(*selected[i], source,
                                 o.order ? std::optional<std::size_t>(o.order) : std::nullopt);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(cfg.threads, selected.size()));
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < n_threads; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (!errors[i].empty()) throw std::runtime_error(selected[i]->name + ": " + errors[i]);
  }

  int rc = kPass;
  TextTable tt({"fixture", "order", "mod", "status", "first bad exponent", "lhs", "rhs"});
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const CheckReport& r = reports[i];
    const bool xfail = suite && selected[i]->expect_fail;
    std::string status;
    if (xfail) status = r.pass ? "xpass" : "xfail";
    else status = r.pass ? "pass" : "fail";
    if (status == "fail" || status == "xpass") rc = kViolation;
    if (format == "json") {
      std::cout << fixture_json(r, status).dump() << '\n';
    } else {
      tt.add_row({r.name, std::to_string(r.order), r.modulus ? std::to_string(r.modulus) : "exact",
                  status, r.first_bad_exponent ? std::to_string(*r.first_bad_exponent) : "",
                  r.lhs_coeff ? r.lhs_coeff->get_str() : "", r.rhs_coeff ? r.rhs_coeff->get_str() : ""});
    }
  }
  if (format != "json") tt.render(std::cout);
  return rc;
}

// ---- dissect ----------------------------------------------------------------

int cmd_dissect(const Config& cfg, const std::string& text, std::size_t m, std::size_t r,
                std::size_t order, std::uint64_t modulus) {
  const std::string format = json_or_text(cfg);
  if (m < 1 || r >= m) throw UsageError("need m >= 1 and 0 <= r < m");
  if (order < 1) throw UsageError("--order must be >= 1");
  if (modulus == 1) throw UsageError("--mod must be >= 2");
  const CoeffRing ring = modulus ? CoeffRing::modulo(modulus) : CoeffRing::integers();
  const ProductExpr e = parse_product(text);
  const Series full = expand_expr(e, ring, m * (order - 1) + r + 1);
  const Series part = truncate(dissect(full, DissectionSpec{m, r}), order);
  if (format == "json") {
    Json coeffs = Json::array();
    for (const auto& c : part.coefficients()) coeffs.push_back(integer_json(c));
    std::cout << Json{{"expr", to_string(e)}, {"m", m}, {"r", r}, {"order", order},
                      {"modulus", modulus}, {"coefficients", coeffs}}
                     .dump()
              << '\n';
  } else {
    std::cout << to_string(part, order) << '\n';
  }
  return kPass;
}

// ---- scan -------------------------------------------------------------------

int cmd_scan(const Config& cfg, std::uint64_t modulus, std::uint64_t a_max, std::uint64_t n_min,
             std::uint64_t n) {
  const std::string format = json_or_text(cfg);
  if (modulus < 2 || a_max < 1) throw UsageError("need M >= 2 and --a-max >= 1");
  const std::uint64_t need = std::max<std::uint64_t>(n, a_max * n_min);
  const Spt2Table t = cfg.table(need);
  const auto hits = scan(modulus, a_max, n_min, t, cfg.threads);
  if (format == "json") {
    for (const auto& h : hits) std::cout << scan_hit_json(h).dump() << '\n';
  } else {
    TextTable tt({"a", "b", "M", "witnesses", "subsumed by"});
    for (const auto& h : hits) {
      tt.add_row({std::to_string(h.claim.step), std::to_string(h.claim.offset),
                  std::to_string(h.claim.modulus), std::to_string(h.claim.n_max + 1),
                  h.subsumed_by ? std::to_string(h.subsumed_by->first) + "n+" +
                                      std::to_string(h.subsumed_by->second)
                                : ""});
    }
    tt.render(std::cout);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series engine and congruence verifier for spt2(n)"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "Output format (json, csv, text)")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Table cache directory (default $SPT2_CACHE_DIR)");
  app.add_flag("--no-cache", cfg.no_cache, "Build tables in memory only");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  std::function<int()> run;

  std::size_t table_n = 0;
  bool cross_check = false;
  auto* table = app.add_subcommand("table", "Print spt2(n) for 0 <= n <= N");
  table->add_option("N", table_n, "Largest index")->required();
  table->add_flag("--cross-check", cross_check, "Compare against overpartition enumeration");
  table->callback([&] { run = [&] { return cmd_table(cfg, table_n, cross_check); }; });

  CongruenceClaim claim{1, 0, 4, 100};
  auto* verify = app.add_subcommand("verify", "Check spt2(a n + b) = 0 (mod M) for n <= n_max");
  verify->add_option("a", claim.step)->required();
  verify->add_option("b", claim.offset)->required();
  verify->add_option("M", claim.modulus)->required();
  verify->add_option("--n-max", claim.n_max, "Largest n checked");
  verify->callback([&] { run = [&] { return cmd_verify(cfg, claim); }; });

  TheoremOptions th;
  auto* theorem = app.add_subcommand("verify-theorem", "Run a built-in congruence suite");
  theorem->add_option("which", th.which, "prior, 1, 2 or 3")
      ->required()
      ->check(CLI::IsMember({"prior", "1", "2", "3"}));
  theorem->add_option("--max-arg", th.max_arg, "prior: largest spt2 argument");
  theorem->add_option("--n-max", th.n_max, "1, 2: largest n");
  theorem->add_option("--j-max", th.j_max, "2: largest j");
  theorem->add_flag("--replay-induction", th.replay, "2: replay the doubling induction step");
  theorem->add_option("--replay-j-max", th.replay_j_max, "2: largest j replayed");
  theorem->add_option("--p", th.primes, "3: prime (repeatable)");
  theorem->add_option("--k-max", th.k_max, "3: largest k");
  theorem->add_option("--m-max", th.m_max, "3: largest m");
  theorem->callback([&] { run = [&] { return cmd_verify_theorem(cfg, th); }; });

  IdentityOptions id;
  auto* identity = app.add_subcommand("identity", "Check q-series identity fixtures");
  identity->add_option("names", id.names, "Fixture names");
  identity->add_flag("--all", id.all, "Run every fixture");
  identity->add_flag("--list", id.list, "List fixture names");
  identity->add_option("--file", id.file, "Fixture file instead of the built-in set");
  identity->add_option("--order", id.order, "Coefficients compared (overrides fixtures)");
  identity->callback([&] { run = [&] { return cmd_identity(cfg, id); }; });

  std::string expr;
  std::size_t dm = 2, dr = 0, dorder = 50;
  std::uint64_t dmod = 0;
  auto* dis = app.add_subcommand("dissect", "Print the (m, r) part of an expression");
  dis->add_option("expr", expr)->required();
  dis->add_option("m", dm)->required();
  dis->add_option("r", dr)->required();
  dis->add_option("--order", dorder, "Coefficients printed");
  dis->add_option("--mod", dmod, "Reduce modulo M");
  dis->callback([&] { run = [&] { return cmd_dissect(cfg, expr, dm, dr, dorder, dmod); }; });

  std::uint64_t smod = 4, a_max = 80, n_min = 100, scan_n = 10000;
  auto* sc = app.add_subcommand("scan", "Search for progressions with spt2(a n + b) = 0 (mod M)");
  sc->add_option("M", smod)->required();
  sc->add_option("--a-max", a_max, "Largest step");
  sc->add_option("--n-min", n_min, "Minimum number of witnesses");
  sc->add_option("--n", scan_n, "Table size");
  sc->callback([&] { run = [&] { return cmd_scan(cfg, smod, a_max, n_min, scan_n); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  try {
    return run();
  } catch (const CacheCorrupt& e) {
    std::cerr << "error: corrupt table cache: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kError;
}
