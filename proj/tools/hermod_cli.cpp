// hermod-cli: expansions, golden tables, verification runs and generator caches.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 mathematical precondition failure.

#include "hermod/congruence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace hermod;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kMath = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  long disc = -4;
  int weight = 4;
  long trace = 8;
  long prime = 0;
  std::string out;
  std::string format = "table";
  std::string cache_dir;
  std::string data_dir = default_data_dir();
  std::string golden;
  bool no_external = false;
  bool build_generators = false;
};

void emit(const JobConfig& cfg, const std::function<void(std::ostream&)>& body) {
  if (cfg.out.empty() || cfg.out == "-") {
    body(std::cout);
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write " + cfg.out);
  body(f);
}

GeneratorSet generators(const JobConfig& cfg, long T) {
  if (cfg.cache_dir.empty()) return build_generators(T);
  if (!cfg.build_generators)
    if (auto g = load_generators(cfg.cache_dir, T)) {
      std::cerr << "generators: loaded from " << cfg.cache_dir << '\n';
      return *g;
    }
  GeneratorSet g = build_generators(T);
  save_generators(g, cfg.cache_dir);
  std::cerr << "generators: built at trace " << T << ", stored in " << cfg.cache_dir << '\n';
  return g;
}

int cmd_eisenstein(const JobConfig& cfg) {
  QuadField K = QuadField::make(cfg.disc);
  KriegParams P(K, cfg.weight);
  if (cfg.trace < 0) throw UsageError("trace bound must be nonnegative");
  FourierExpansion F = krieg_expansion(P, cfg.trace);
  emit(cfg, [&](std::ostream& os) { write_expansion(os, F); });
  (cfg.out.empty() ? std::cerr : std::cout) << "in_theorem_range: " << (F.in_theorem_range ? "yes" : "no") << '\n';
  return kPass;
}

struct TableRow {
  HermIndex index;
  long ndet;
  std::vector<Rational> printed, computed;
  std::string status;
};

int report_rows(const JobConfig& cfg, const std::vector<std::string>& columns, const std::vector<TableRow>& rows,
                bool checksum_ok, const std::string& note) {
  int mismatches = 0;
  for (const auto& r : rows) mismatches += r.status == "DIFF";
  emit(cfg, [&](std::ostream& os) {
    if (cfg.format == "records") {
      for (const auto& r : rows) {
        nlohmann::json j;
        j["index"] = to_string(r.index);
        j["ndet"] = r.ndet;
        for (std::size_t c = 0; c < columns.size(); ++c) {
          j[columns[c]]["printed"] = r.printed[c].get_str();
          j[columns[c]]["computed"] = r.computed[c].get_str();
        }
        j["status"] = r.status;
        os << j.dump() << '\n';
      }
      nlohmann::json s;
      s["rows"] = rows.size();
      s["mismatches"] = mismatches;
      s["checksum_ok"] = checksum_ok;
      if (!note.empty()) s["note"] = note;
      os << s.dump() << '\n';
      return;
    }
    if (!note.empty()) os << "# " << note << '\n';
    os << std::left << std::setw(16) << "index" << std::setw(6) << "ndet";
    for (const auto& c : columns) os << std::setw(30) << c;
    os << "status\n";
    for (const auto& r : rows) {
      os << std::setw(16) << to_string(r.index) << std::setw(6) << r.ndet;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        std::string cell = r.computed[c].get_str();
        if (r.computed[c] != r.printed[c]) cell += " (printed " + r.printed[c].get_str() + ")";
        os << std::setw(30) << cell;
      }
      os << r.status << '\n';
    }
    os << rows.size() << " rows, " << mismatches << " mismatches, checksum " << (checksum_ok ? "ok" : "BAD") << '\n';
  });
  return mismatches == 0 && checksum_ok ? kPass : kFail;
}

int cmd_table(const JobConfig& cfg, int which) {
  if (which != 1 && which != 2) throw UsageError("table must be 1 or 2");
  std::string path = !cfg.golden.empty() ? cfg.golden : cfg.data_dir + "/table" + std::to_string(which) + ".txt";
  GoldenTable t = read_golden_file(path, which == 1 ? 2 : 1);
  long T = 0;
  for (const auto& r : t.rows) T = std::max(T, r.index.trace());
  GeneratorSet g = generators(cfg, std::max(T, 2L));
  std::vector<TableRow> rows;
  std::vector<std::string> columns;
  std::string note;
  std::vector<FourierExpansion> cols;
  if (which == 1) {
    FourierExpansion e4sq = mul(g.E4, g.E4);
    cols.push_back(linear_combine({{1, &e4sq}, {-5760, &g.chi8}}));
    cols.push_back(linear_combine({{1, &e4sq}, {-3072, &g.chi8}}));
    columns = {"H1", "H2"};
    note = "H1, H2 columns from E4^2 - 5760 chi8 and E4^2 - 3072 chi8";
    CheckContext ctx;
    ctx.data_dir = cfg.data_dir;
    ctx.use_external = !cfg.no_external;
    auto g1 = ctx.external_gram("H1"), g2 = ctx.external_gram("H2");
    if (g1 && g2) {
      cols.push_back(theta_series(*g1, 2));
      cols.push_back(theta_series(*g2, 2));
      columns.push_back("H1 enumerated");
      columns.push_back("H2 enumerated");
      note += "; enumerated columns from lattices/H1.gram, H2.gram for tr <= 2";
    } else {
      note += " (no external Gram data)";
    }
  } else {
    cols.push_back(g.leech);
    columns = {"Leech"};
    note = "theta_Leech from the psi12 relation";
  }
  for (const auto& gr : t.rows) {
    TableRow r{gr.index, gr.ndet, {}, {}, "ok"};
    for (std::size_t c = 0; c < cols.size(); ++c) {
      bool enumerated = c >= 2;
      if (enumerated && gr.index.trace() > 2) {
        r.printed.push_back(Rational(gr.values[c - 2]));
        r.computed.push_back(Rational(gr.values[c - 2]));
        continue;
      }
      r.printed.push_back(Rational(gr.values[enumerated ? c - 2 : c]));
      r.computed.push_back(cols[c].coeff(gr.index));
      if (r.computed.back() != r.printed.back()) r.status = gr.erratum ? "ERRATUM" : "DIFF";
    }
    rows.push_back(std::move(r));
  }
  return report_rows(cfg, columns, rows, t.checksum_ok, note);
}

int cmd_verify(const JobConfig& cfg, const std::string& id, long trace) {
  CheckContext ctx;
  ctx.trace = trace;
  ctx.use_external = !cfg.no_external;
  ctx.data_dir = cfg.data_dir;
  ctx.set_generators(generators(cfg, trace));
  std::vector<CheckResult> results;
  try {
    results = run_named_checks(ctx, id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(cfg, [&](std::ostream& os) {
    if (cfg.format == "records")
      for (const auto& j : report_json(results)) os << j.dump() << '\n';
    else
      print_report_table(os, results);
  });
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  return ok ? kPass : kFail;
}

int cmd_theta(const JobConfig& cfg, const std::string& gram_path) {
  GramMatrix G = read_gram_file(gram_path);
  G.validate();
  auto buckets = short_vectors(G, cfg.trace);
  FourierExpansion F = theta_series(G, cfg.trace);
  emit(cfg, [&](std::ostream& os) { write_expansion(os, F); });
  std::ostream& info = cfg.out.empty() ? std::cerr : std::cout;
  info << "gram " << (G.label.empty() ? gram_path : G.label) << ": rank " << G.rank << ", disc " << G.field.d << '\n';
  for (const auto& [t, vs] : buckets) info << "  half-norm " << t << ": " << vs.size() << " vectors\n";
  return kPass;
}

int cmd_generators(const JobConfig& cfg, long trace) {
  if (cfg.cache_dir.empty()) throw UsageError("generators needs --cache-dir or HERMOD_CACHE_DIR");
  GeneratorSet g = generators(cfg, trace);
  std::cout << "trace " << g.trace_bound << ", calibration " << g.calibration.to_string() << ", chi8 scale "
            << g.chi8_scale.get_str() << '\n';
  for (int i = 0; i < 5; ++i)
    std::cout << "  " << generator_names()[i] << ": weight " << g.generator(i).weight << ", " << g.generator(i).coeffs.size()
              << " coefficients\n";
  return kPass;
}

// Row reduction over F_p; returns the pivot columns and leaves A in reduced echelon form.
std::vector<std::size_t> row_reduce_mod(std::vector<std::vector<long>>& A, long p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0, cols = A.empty() ? 0 : A[0].size();
  auto inv = [p](long a) {
    long r = 1, e = p - 2;
    a = pos_mod(a, p);
    for (; e; e >>= 1, a = a * a % p)
      if (e & 1) r = r * a % p;
    return r;
  };
  for (std::size_t c = 0; c < cols && row < A.size(); ++c) {
    std::size_t piv = row;
    while (piv < A.size() && A[piv][c] == 0) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[row], A[piv]);
    long s = inv(A[row][c]);
    for (auto& v : A[row]) v = v * s % p;
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][c] == 0) continue;
      long f = A[r][c];
      for (std::size_t k = 0; k < cols; ++k) A[r][k] = pos_mod(A[r][k] - f * A[row][k], p);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

// Forms F of weight p+1 over Q(i) with F = 1 + ... and Theta(F) = 0 mod p, up to the trace bound.
int cmd_conjecture_scan(const JobConfig& cfg, long trace) {
  long p = cfg.prime;
  if (!is_prime(p) || p < 5) throw UsageError("--prime must be a prime >= 5");
  if (p % 4 != 3) throw UsageError("the scan concerns primes p = 3 mod 4");
  int k = static_cast<int>(p + 1);
  if (k > 24) throw UsageError("weight p+1 above 24 is outside the generator range");
  GeneratorSet g = generators(cfg, trace);
  auto exps = monomial_exponents(k);
  auto basis = monomial_basis(g, k);
  std::vector<HermIndex> idx = enumerate_psd(QuadField::gaussian(), trace);
  // Unknowns c_j; equations: Theta(sum c_j B_j)(H) = 0 for every H, and sum c_j a(B_j; 0) = 1.
  std::size_t n = basis.size();
  std::vector<std::vector<long>> A;
  std::vector<FourierExpansion> thetas;
  for (const auto& b : basis) thetas.push_back(theta_op(b));
  for (const auto& h : idx) {
    std::vector<long> row(n + 1, 0);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = thetas[j].coeff(h);
      if (!is_p_integral(c, p)) throw NotPIntegral("basis form not " + std::to_string(p) + "-integral at " + to_string(h));
      row[j] = residue(c, p);
      any = any || row[j] != 0;
    }
    if (any) A.push_back(row);
  }
  std::vector<std::vector<long>> K = A;
  auto kernel_pivots = row_reduce_mod(K, p);
  std::vector<long> norm(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) norm[j] = residue(basis[j].coeff(HermIndex::zero(-4)), p);
  norm[n] = 1;
  A.push_back(norm);
  auto pivots = row_reduce_mod(A, p);
  bool solvable = pivots.empty() || pivots.back() != n;
  auto sb = sturm_trace_bound(2 * k, QuadField::gaussian());

  std::ostream& os = std::cout;
  os << "p = " << p << ", weight " << k << ", trace bound " << trace << " (Sturm bound at weight " << 2 * k << ": "
     << (sb ? std::to_string(*sb) : "none") << ")\n";
  os << "monomial basis:";
  for (const auto& m : exps) os << ' ' << m.name();
  os << "\nkernel of Theta mod p on this basis: dimension " << n - kernel_pivots.size() << '\n';
  if (!solvable) {
    os << "no form 1 + ... of weight " << k << " with Theta = 0 mod " << p << " in the span\n";
  } else {
    os << "a form 1 + ... with Theta = 0 mod " << p << ":";
    std::vector<long> sol(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = A[r][n];
    for (std::size_t j = 0; j < n; ++j)
      if (sol[j]) os << ' ' << (sol[j] > 0 ? "+" : "") << sol[j] << '*' << exps[j].name();
    os << "  (coefficients mod " << p << ")\n";
  }
  FourierExpansion E = krieg_expansion(KriegParams(QuadField::gaussian(), k), trace);
  Verdict v = verify_zero_mod_p(theta_op(E), p, 2 * k);
  os << "Eisenstein series of weight " << k << ": Theta = 0 mod " << p << " is " << status_name(v.status) << '\n';
  os << "exploratory: a lattice of rank " << k << " would need its theta series in this affine space\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian modular forms of degree 2: expansions, tables and congruence checks"};
  app.require_subcommand(1);
  JobConfig cfg;
  if (const char* env = std::getenv("HERMOD_CACHE_DIR")) cfg.cache_dir = env;

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"table", "records"}));
    sub->add_option("--cache-dir", cfg.cache_dir, "Generator cache directory (env HERMOD_CACHE_DIR)");
    sub->add_option("--data-dir", cfg.data_dir, "Directory with golden tables and lattices/");
    sub->add_flag("--no-external-data", cfg.no_external, "Ignore external Gram data");
    sub->add_flag("--build-generators", cfg.build_generators, "Rebuild the generator cache");
  };

  auto* eis = app.add_subcommand("eisenstein", "Write the Eisenstein series F_{k,K}");
  common(eis);
  eis->add_option("--disc", cfg.disc, "Field discriminant")->required();
  eis->add_option("--weight", cfg.weight, "Even weight >= 4")->required();
  eis->add_option("--trace", cfg.trace, "Trace bound");

  int which = 0;
  auto* tab = app.add_subcommand("table", "Regenerate a golden table and diff it");
  common(tab);
  tab->add_option("which", which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  tab->add_option("--golden", cfg.golden, "Golden table file");

  std::string check_id = "all";
  long check_trace = 6;
  auto* ver = app.add_subcommand("verify", "Run registered checks");
  common(ver);
  ver->add_option("check", check_id, "Check id or 'all'");
  ver->add_option("--trace", check_trace, "Trace bound for the generators")->check(CLI::Range(2, 8));

  std::string gram_path;
  auto* th = app.add_subcommand("theta", "Theta series of a Gram matrix file");
  common(th);
  th->add_option("gram", gram_path, "Gram file")->required();
  th->add_option("--trace", cfg.trace, "Trace bound");

  long gen_trace = 6;
  auto* gen = app.add_subcommand("generators", "Build or load the generator cache");
  common(gen);
  gen->add_option("--trace", gen_trace, "Trace bound")->check(CLI::Range(2, 8));

  long scan_trace = 6;
  auto* scan = app.add_subcommand("conjecture-scan", "Exploratory: weight p+1 forms with Theta = 0 mod p");
  common(scan);
  scan->add_option("--prime", cfg.prime, "Prime p = 3 mod 4")->required();
  scan->add_option("--trace", scan_trace, "Trace bound")->check(CLI::Range(2, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*eis) return cmd_eisenstein(cfg);
    if (*tab) return cmd_table(cfg, which);
    if (*ver) return cmd_verify(cfg, check_id, check_trace);
    if (*th) return cmd_theta(cfg, gram_path);
    if (*gen) return cmd_generators(cfg, gen_trace);
    if (*scan) return cmd_conjecture_scan(cfg, scan_trace);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InsufficientBound& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GramFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GramMathError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMath;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMath;
  } catch (const NotPIntegral& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMath;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
