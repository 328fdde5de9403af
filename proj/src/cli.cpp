#include "klsum/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "klsum/classifier.hpp"
#include "klsum/congruence.hpp"
#include "klsum/io.hpp"
#include "klsum/kloosterman.hpp"

namespace klsum::cli {

namespace {

struct RunConfig {
  std::uint64_t p = 0;
  unsigned r = 1;
  unsigned n = 1;
  std::string format = "csv";
  std::string out_path;
  std::string table_path;
  bool force_full_distinctness = false;
  bool list_all_e = false;
  std::uint64_t cap_terms = kDefaultTermCap;
  std::uint64_t cap_field = std::uint64_t{1} << 24;
  std::optional<unsigned> embed_precision;
  unsigned threads = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FieldPtr make_field(const RunConfig& cfg) {
  if (!is_prime(cfg.p)) throw UsageError("p must be prime");
  if (cfg.n < 1) throw UsageError("n must be at least 1");
  FieldOptions options;
  options.max_group_order = cfg.cap_field;
  return build_field(cfg.p, cfg.r, options);
}

// Where data and the human-readable summary go. Data goes to --out when
// given, else stdout; the summary then moves to stderr so stdout stays
// machine-readable.
class Sinks {
 public:
  Sinks(const RunConfig& cfg, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file " + cfg.out_path);
    }
  }
  std::ostream& data() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }
  std::ostream& summary() { return file_.is_open() ? out_ : err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::ofstream file_;
};

KlTable load_or_sweep(const RunConfig& cfg, FieldPtr field) {
  if (cfg.table_path.empty()) return kloosterman_sweep(std::move(field), cfg.n, cfg.threads);
  std::ifstream in(cfg.table_path, std::ios::binary);
  if (!in) throw UsageError("cannot open table " + cfg.table_path);
  return read_table_csv(in, std::move(field), cfg.n);
}

bool sweep_feasible(const RunConfig& cfg, const FieldSpec& field) {
  const BigInt work = BigInt(field.group_order()) * field.group_order() * cfg.n;
  return work <= cfg.cap_terms;
}

std::string distinctness_status(const Parameters& params, const DistinctnessReport* report) {
  if (report != nullptr) {
    if (report->holds) return "holds (exhaustive check)";
    return "fails (" + std::to_string(report->violations.size()) + " colliding pairs)";
  }
  if (distinctness_bounds(params.p, params.r, params.n).guaranteed) return "holds (guaranteed: n = 1, r <= 4, p >= r(n+1))";
  return "unverified";
}

void print_parameters(std::ostream& os, const Parameters& params) {
  os << "p = " << params.p << ", r = " << params.r << ", n = " << params.n << "\n"
     << "d = " << params.d << ", R = " << params.R << ", maximal degree (p-1)/d = " << params.max_degree() << "\n";
  if (params.trivial()) os << "R = 1: every nonzero point generates E_d when distinctness holds\n";
}

void print_rational_summary(std::ostream& os, const RationalPoints& rp) {
  if (!rp.possible) {
    os << rp.reason << (rp.exhaustive ? "" : " (relies on distinctness, which is not established)") << "\n";
    return;
  }
  os << "rational points: " << rp.dlogs.size() << (rp.exhaustive ? " (complete)" : " (lower bound)") << "\n";
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto field = make_field(cfg);
  const KlTable table = kloosterman_sweep(field, cfg.n, cfg.threads);
  Sinks sinks(cfg, out, err);
  if (cfg.format == "json") write_table_json(sinks.data(), table);
  else write_table_csv(sinks.data(), table, cfg.embed_precision);
  sinks.summary() << "wrote " << table.size() << " values of Kl_" << cfg.n << "(" << field->q() << ", a)\n";
  return kPass;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto field = make_field(cfg);
  const Parameters params = derive_parameters(cfg.p, cfg.r, cfg.n);
  const bool guaranteed = distinctness_bounds(cfg.p, cfg.r, cfg.n).guaranteed;

  std::optional<DistinctnessReport> check;
  if ((!guaranteed || cfg.force_full_distinctness) && sweep_feasible(cfg, *field)) {
    check = check_distinctness(kloosterman_sweep(field, cfg.n, cfg.threads));
  }
  const Mode mode = resolve_mode(params, check ? &*check : nullptr);
  const auto rows = classify_field(params, *field, mode);
  const auto rational = rational_points(params, *field, mode);

  Sinks sinks(cfg, out, err);
  const ClassificationOutput output{params, rows, cfg.list_all_e};
  if (cfg.format == "json") {
    Json j = classification_to_json(output);
    j["distinctness"] = distinctness_status(params, check ? &*check : nullptr);
    j["rational_points"] = rational.possible ? Json(rational.dlogs.size()) : Json(nullptr);
    sinks.data() << j.dump(2) << '\n';
  } else {
    write_classification_csv(sinks.data(), output);
  }

  std::ostream& s = sinks.summary();
  print_parameters(s, params);
  s << "distinctness: " << distinctness_status(params, check ? &*check : nullptr) << "\n"
    << "mode: " << to_string(mode) << "\n";
  print_rational_summary(s, rational);
  return kPass;
}

// One line per property: name, passed/total.
class CheckLog {
 public:
  explicit CheckLog(std::ostream& os) : os_(os) {}

  void record(const std::string& name, std::size_t passed, std::size_t total,
              const std::vector<std::string>& details = {}) {
    const bool ok = passed == total;
    os_ << (ok ? "PASS " : "FAIL ") << name << ": " << passed << "/" << total << "\n";
    for (std::size_t i = 0; i < details.size() && i < 20; ++i) os_ << "    " << details[i] << "\n";
    if (details.size() > 20) os_ << "    ... " << details.size() - 20 << " more\n";
    all_ok_ = all_ok_ && ok;
  }
  bool all_ok() const { return all_ok_; }

 private:
  std::ostream& os_;
  bool all_ok_ = true;
};

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto field = make_field(cfg);
  const Parameters params = derive_parameters(cfg.p, cfg.r, cfg.n);
  const KlTable table = load_or_sweep(cfg, field);
  const FieldSpec& f = *field;

  Sinks sinks(cfg, out, err);
  std::ostream& s = cfg.out_path.empty() ? out : sinks.summary();
  CheckLog log(s);
  print_parameters(s, params);

  const DistinctnessReport distinct = check_distinctness(table);
  const Mode mode = resolve_mode(params, &distinct);
  s << "distinctness: " << distinctness_status(params, &distinct) << "\n"
    << "mode: " << to_string(mode) << "\n";
  if (distinctness_bounds(cfg.p, cfg.r, cfg.n).guaranteed) {
    log.record("distinctness (guaranteed field)", distinct.holds ? 1 : 0, 1);
  }

  const CycInt expected_zero = CycInt::rational(f.p(), cfg.n % 2 == 0 ? 1 : -1);
  log.record("Kl(0) = (-1)^n", table.at_zero() == expected_zero ? 1 : 0, 1);

  const auto frob = frobenius_violations(table);
  log.record("Frobenius invariance", f.group_order() - frob.size(), f.group_order());
  const auto equiv = equivariance_violations(table);
  const std::size_t equiv_total = static_cast<std::size_t>(f.p() - 1) * f.q();
  log.record("Galois equivariance", equiv_total - equiv.size(), equiv_total);

  const VerificationReport report = verify_against_ground_truth(params, table, mode);
  if (mode == Mode::kIff) {
    log.record("predicted field = generated field (iff)", report.iff_matches, report.iff_rows, report.failures);
  } else {
    log.record("predicted field contains generated field (if-only)", report.containment_ok, report.if_only_rows,
               report.failures);
  }
  log.record("nonzero trace => degree (p-1)/d", report.nonzero_trace_max_degree, report.nonzero_trace_points);

  // Coset form (i) against minimal-exponent form (ii), and against the
  // exponent sets produced by the congruence oracle.
  std::size_t equiv_checks = 0, equiv_ok = 0, oracle_checks = 0, oracle_ok = 0;
  std::vector<std::string> equiv_fail, oracle_fail;
  for (auto e64 : divisors(params.R)) {
    if (e64 == 1) continue;
    const auto e = static_cast<unsigned>(e64);
    for (auto t64 : divisors(params.r / e)) {
      const auto t = static_cast<unsigned>(t64);
      const auto closed = closed_form_solution_set(params.p, params.r, params.n, params.d, e, t);
      const std::set<BigInt> closed_set(closed.begin(), closed.end());
      for (std::uint32_t k = 0; k < f.group_order(); ++k) {
        const FieldElement a = f.gamma_pow(k);
        const bool coset = coset_membership_dlog(params, f, a, e, t).has_value();
        ++equiv_checks;
        if (coset == minimal_exponent_membership(f, a, e, t)) ++equiv_ok;
        else equiv_fail.push_back("gamma^" + std::to_string(k) + " e=" + std::to_string(e) + " t=" + std::to_string(t));
        ++oracle_checks;
        if (coset == (closed_set.count(BigInt(k)) > 0)) ++oracle_ok;
        else oracle_fail.push_back("gamma^" + std::to_string(k) + " e=" + std::to_string(e) + " t=" + std::to_string(t));
      }
      if (t < params.r) {
        ++oracle_checks;
        if (union_over_shifts(params.p, params.r, params.n, e, t) == closed) ++oracle_ok;
        else oracle_fail.push_back("union identity e=" + std::to_string(e) + " t=" + std::to_string(t));
      }
    }
  }
  log.record("coset form <=> minimal exponent form", equiv_ok, equiv_checks, equiv_fail);
  log.record("classifier agrees with congruence oracle", oracle_ok, oracle_checks, oracle_fail);

  std::size_t certified = 0, trace_ok = 0;
  std::vector<std::string> trace_fail;
  for (const auto& row : report.rows) {
    if (!row.certificate) continue;
    ++certified;
    if (verify_trace_zero(params, f, row)) ++trace_ok;
    else trace_fail.push_back("gamma^" + std::to_string(row.a_dlog));
  }
  log.record("certified points have zero trace", trace_ok, certified, trace_fail);

  const RationalPoints rational = rational_points(params, f, mode);
  std::vector<std::uint32_t> actual_rational;
  for (std::uint32_t k = 0; k < f.group_order(); ++k) {
    if (is_rational(table.at_dlog(k))) actual_rational.push_back(k);
  }
  std::size_t predicted_rational_ok = 0;
  std::vector<std::string> rational_fail;
  for (auto k : rational.dlogs) {
    if (std::binary_search(actual_rational.begin(), actual_rational.end(), k)) ++predicted_rational_ok;
    else rational_fail.push_back("gamma^" + std::to_string(k) + " predicted rational but is not");
  }
  if (mode == Mode::kIff) {
    for (auto k : actual_rational) {
      if (!std::binary_search(rational.dlogs.begin(), rational.dlogs.end(), k)) {
        rational_fail.push_back("gamma^" + std::to_string(k) + " rational but not predicted");
      }
    }
    log.record("rational points match", rational_fail.empty() ? rational.dlogs.size() : predicted_rational_ok,
               std::max(rational.dlogs.size(), actual_rational.size()), rational_fail);
  } else {
    log.record("predicted rational points are rational", predicted_rational_ok, rational.dlogs.size(), rational_fail);
  }
  print_rational_summary(s, rational);
  s << "actual rational values among nonzero points: " << actual_rational.size() << "\n";

  if (!cfg.out_path.empty()) {
    const ClassificationOutput output{params, report.rows, cfg.list_all_e};
    if (cfg.format == "json") sinks.data() << classification_to_json(output).dump(2) << '\n';
    else write_classification_csv(sinks.data(), output);
  }
  s << (log.all_ok() ? "verification passed\n" : "verification FAILED\n");
  return log.all_ok() ? kPass : kCheckFailed;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  if (!is_prime(cfg.p)) throw UsageError("p must be prime");
  const auto b = distinctness_bounds(cfg.p, cfg.r, cfg.n);
  out << "p = " << cfg.p << ", r = " << cfg.r << ", n = " << cfg.n << "\n"
      << "fischer_threshold = " << b.fischer_threshold << "\n"
      << "fischer_bound_met = " << (b.fischer_bound_met ? "true" : "false") << "\n"
      << "wan_threshold = " << b.wan_threshold << "\n"
      << "wan_bound_met = " << (b.wan_bound_met ? "true" : "false") << " (advisory: extra side condition unchecked)\n"
      << "referee_threshold = " << b.referee_threshold << "\n"
      << "referee_bound_met = " << (b.referee_bound_met ? "true" : "false") << "\n"
      << "guaranteed = " << (b.guaranteed ? "true" : "false") << "\n";
  return kPass;
}

int cmd_distinctness(const RunConfig& cfg, std::ostream& out) {
  auto field = make_field(cfg);
  const KlTable table = load_or_sweep(cfg, field);
  const auto report = check_distinctness(table);
  out << "holds = " << (report.holds ? "true" : "false") << "\n"
      << "violations = " << report.violations.size() << "\n";
  for (const auto& [a, b] : report.violations) out << "gamma^" << a << " ~ gamma^" << b << "\n";
  return report.holds ? kPass : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Kloosterman sums over finite fields and the subfields they generate"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "characteristic (prime)")->required();
    sub->add_option("--r", cfg.r, "extension degree")->check(CLI::PositiveNumber);
    sub->add_option("--n", cfg.n, "Kloosterman dimension")->check(CLI::PositiveNumber);
  };
  auto add_field = [&cfg](CLI::App* sub) {
    sub->add_option("--cap-field", cfg.cap_field, "largest allowed q - 1");
    sub->add_option("--cap-terms", cfg.cap_terms, "enumeration / sweep work cap");
    sub->add_option("--threads", cfg.threads, "worker threads for the sweep")->check(CLI::PositiveNumber);
  };
  auto add_output = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "output path");
  };

  auto* sweep = app.add_subcommand("sweep", "tabulate Kl_n(q, a) for every a");
  add_common(sweep);
  add_field(sweep);
  add_output(sweep);
  sweep->add_option("--embed-precision", cfg.embed_precision, "append complex approximations (digits)");

  auto* classify = app.add_subcommand("classify", "predict the field generated at every nonzero point");
  add_common(classify);
  add_field(classify);
  add_output(classify);
  classify->add_flag("--force-full-distinctness", cfg.force_full_distinctness, "run the exhaustive check anyway");
  classify->add_flag("--list-all-e", cfg.list_all_e, "list every applicable e");

  auto* verify = app.add_subcommand("verify", "check predictions and identities against exact values");
  add_common(verify);
  add_field(verify);
  add_output(verify);
  verify->add_flag("--force-full-distinctness", cfg.force_full_distinctness, "accepted; verify always checks");
  verify->add_flag("--list-all-e", cfg.list_all_e, "list every applicable e");
  verify->add_option("--table", cfg.table_path, "read values from a sweep CSV instead of recomputing");

  auto* bounds = app.add_subcommand("bounds", "report known sufficient conditions for distinctness");
  add_common(bounds);

  auto* distinct = app.add_subcommand("distinctness", "exhaustively check distinctness up to Frobenius");
  add_common(distinct);
  add_field(distinct);
  distinct->add_option("--table", cfg.table_path, "read values from a sweep CSV instead of recomputing");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(cfg, out, err);
    if (classify->parsed()) return cmd_classify(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (bounds->parsed()) return cmd_bounds(cfg, out);
    if (distinct->parsed()) return cmd_distinctness(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsageError;
}

}  // namespace klsum::cli
