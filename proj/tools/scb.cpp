// scb: certify step-size coefficients for boundedness of linear multistep
// methods.
//
// Exit codes: 0 feasible / certified, 1 infeasible, 2 inconclusive,
// 10 usage or parse error, 11 invalid method input, 12 internal error.

#include "scb/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace scb;

namespace {

constexpr int kExitUsage = 10;
constexpr int kExitInput = 11;
constexpr int kExitInternal = 12;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string method;
  std::string format = "json";
  std::string output;
  long horizon = 1000;
  long precision = 0;
  long precision_cap = 0;
};

Rational parse_gamma(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError("cannot parse '" + text + "' as a rational: " + e.what());
  }
}

AnalyzerOptions analyzer_options(const Common& c) {
  AnalyzerOptions o = default_options();
  o.horizon = c.horizon;
  if (c.precision_cap > 0) o.max_digits = c.precision_cap;
  if (c.precision > 0) {
    o.interval_digits = c.precision;
    o.max_digits = std::max(o.max_digits, c.precision);
  }
  return o;
}

void emit(const Common& c, Json report, double seconds) {
  report["timings"] = Json{{"total_ms", static_cast<long>(seconds * 1000)}};
  std::string text;
  if (c.format == "json") text = report.dump(2) + "\n";
  else if (c.format == "csv") text = to_csv(report);
  else text = to_text(report);
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw UsageError("cannot write " + c.output);
  f << text;
}

int exit_for(Status s) {
  switch (s) {
    case Status::Feasible: return 0;
    case Status::Infeasible: return 1;
    case Status::Inconclusive: return 2;
  }
  return 2;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Analysis is only meaningful for methods meeting the standing assumptions.
Method load(const std::string& name) {
  Method m = resolve_method(name);
  require_valid(m);
  return m;
}

// ------------------------------------------------------------------ commands

int cmd_list(const Common& c) {
  Json rows = Json::array();
  for (const auto& name : catalog_names()) {
    const Method m = catalog(name);
    Json row{{"name", name}, {"family", to_string(m.family)}, {"k", m.k}, {"valid", is_valid(m)}};
    if (auto ref = reference_value(name)) row["reference_gamma_sup"] = ref->approx;
    rows.push_back(std::move(row));
  }
  Json report{{"schema_version", kSchemaVersion}, {"command", "list"}, {"methods", std::move(rows)}};
  Common out = c;
  if (c.format == "text") {
    std::ostringstream os;
    for (const auto& r : report["methods"]) {
      os << r["name"].get<std::string>() << "  k=" << r["k"].get<int>() << "  " << r["family"].get<std::string>();
      if (r.contains("reference_gamma_sup")) os << "  gamma_sup " << r["reference_gamma_sup"].get<std::string>();
      os << "\n";
    }
    std::cout << os.str();
    return 0;
  }
  emit(out, std::move(report), 0);
  return 0;
}

int cmd_check(const Common& c, const std::string& gamma_text) {
  const auto t0 = std::chrono::steady_clock::now();
  const Method m = load(c.method);
  const Rational gamma = parse_gamma(gamma_text);
  if (gamma <= 0) throw UsageError("--gamma must be positive");
  const ScbVerdict v = check_scb(m, gamma, analyzer_options(c));
  emit(c, check_report(m, v), since(t0));
  return exit_for(v.status);
}

int cmd_gamma_sup(const Common& c, const std::string& tol_text) {
  const auto t0 = std::chrono::steady_clock::now();
  const Method m = load(c.method);
  const Rational tol = parse_gamma(tol_text);
  if (tol <= 0) throw UsageError("--tol must be positive");
  GammaSupOptions o;
  o.analyzer = analyzer_options(c);
  o.analyzer.interval_digits = 0;
  const GammaSupResult r = gamma_sup(m, tol, o);
  std::optional<ReferenceCheck> ref;
  if (auto rv = reference_value(m.name); rv && c.method == m.name) ref = compare_with_reference(r, *rv);
  emit(c, gamma_sup_report(m, r, ref), since(t0));
  return r.certified ? 0 : 2;
}

int cmd_tau(const Common& c, long n) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n < 1) throw UsageError("--n must be at least 1");
  const Method m = load(c.method);
  std::vector<Rational> tau = tau_prefix(m, n);
  tau.erase(tau.begin());  // report tau_1 .. tau_n
  AnalyzerOptions o = analyzer_options(c);
  o.interval_digits = 0;
  const ExistenceResult e = scb_exists(m, o);
  emit(c, tau_report(m, tau, e), since(t0));
  switch (e.verdict) {
    case Existence::Exists: return 0;
    case Existence::NotExists: return 1;
    case Existence::Inconclusive: return 2;
  }
  return 2;
}

// Accepted target names and their canonical form.
std::string canonical_target(const std::string& t) {
  if (t == "bdf-optimal" || t == "theorem-2.2") return "bdf-optimal";
  if (t == "ab-optimal" || t == "theorem-2.4") return "ab-optimal";
  if (t == "ebdf-existence" || t == "theorem-2.1") return "ebdf-existence";
  if (t == "bdf4-witnesses" || t == "remark-bdf4") return "bdf4-witnesses";
  throw UsageError("unknown target '" + t + "' (bdf-optimal, ab-optimal, ebdf-existence, bdf4-witnesses)");
}

int cmd_reproduce(const Common& c, const std::string& target_in, const std::string& tol_text) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string target = canonical_target(target_in);
  Json rows = Json::array();
  bool all = true;
  AnalyzerOptions o = analyzer_options(c);
  o.interval_digits = 0;

  if (target == "bdf-optimal" || target == "ab-optimal") {
    const Rational tol = parse_gamma(tol_text);
    const std::string prefix = target == "bdf-optimal" ? "bdf" : "ab";
    for (const auto& ref : reference_values()) {
      if (ref.method.rfind(prefix, 0) != 0) continue;
      GammaSupOptions go;
      go.analyzer = o;
      const GammaSupResult r = gamma_sup(catalog(ref.method), tol, go);
      const ReferenceCheck chk = compare_with_reference(r, ref);
      Json row{{"method", ref.method}, {"reference", ref.approx}, {"mechanism", to_string(r.mechanism)}};
      if (r.mechanism == Mechanism::SimpleRoot) row["simple_root_n"] = r.simple_root_n;
      if (r.mechanism != Mechanism::NonePositive && r.mechanism != Mechanism::Unbounded) {
        row["lo"] = to_string(r.lo);
        row["hi"] = to_string(r.hi);
        row["lo_decimal"] = to_decimal(r.lo, 15, Rounding::Down);
      }
      row["passed"] = chk.passed;
      row["detail"] = chk.detail;
      all = all && chk.passed;
      rows.push_back(std::move(row));
    }
  } else if (target == "ebdf-existence") {
    for (const char* name : {"ebdf3", "ebdf4", "ebdf5"}) {
      const ExistenceResult e = scb_exists(catalog(name), o);
      Json row{{"method", name}, {"status", to_string(e.verdict)}};
      bool ok = e.verdict == Existence::Exists;
      if (e.tail) {
        row["n_start"] = e.tail->n_start;
        if (e.tail->kind == TailKind::Dominant) {
          const Rational ratio = e.tail->residual_upper / e.tail->leading_lower;
          row["residual_ratio"] = to_decimal(ratio, 6, Rounding::Up);
          ok = ok && ratio <= rational_of(9, 10);
        }
      }
      row["passed"] = ok;
      all = all && ok;
      rows.push_back(std::move(row));
    }
  } else {
    const WitnessSetReference ref;
    const Method m = catalog(ref.method);
    const ExactScan exact = exact_sign_scan(m, ref.gamma, 1, ref.horizon, false);
    Json row{{"method", ref.method}, {"gamma", to_string(ref.gamma)}, {"horizon", ref.horizon}};
    row["expected"] = ref.negatives;
    row["exact_negatives"] = exact.negatives;
    bool ok = exact.negatives == ref.negatives;
    if (c.precision > 0) {
      const IntervalScan iv = interval_sign_scan(m, ref.gamma, ref.horizon, c.precision);
      row["interval_digits"] = c.precision;
      row["interval_negatives"] = iv.negatives;
      row["interval_undecided"] = iv.unknown.size();
      ok = ok && iv.negatives == ref.negatives && iv.unknown.empty();
    }
    row["passed"] = ok;
    all = ok;
    rows.push_back(std::move(row));
  }

  Json report{{"schema_version", kSchemaVersion}, {"command", "reproduce"}, {"target", target}};
  report["status"] = all ? "Pass" : "Fail";
  report["rows"] = std::move(rows);
  if (c.format == "text") {
    std::ostringstream os;
    for (const auto& r : report["rows"]) {
      os << (r["passed"].get<bool>() ? "PASS " : "FAIL ") << r["method"].get<std::string>();
      for (const char* k : {"mechanism", "lo_decimal", "status", "residual_ratio", "detail"})
        if (r.contains(k)) os << "  " << k << "=" << (r[k].is_string() ? r[k].get<std::string>() : r[k].dump());
      if (r.contains("exact_negatives")) os << "  negatives=" << r["exact_negatives"].dump();
      os << "\n";
    }
    std::cout << os.str();
  } else {
    emit(c, std::move(report), since(t0));
  }
  return all ? 0 : 1;
}

std::pair<long, long> parse_index_range(const std::string& s) {
  const size_t dots = s.find("..");
  try {
    if (dots == std::string::npos) return {1, std::stol(s)};
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("cannot parse index range '" + s + "' (expected a..b)");
  }
}

std::vector<Rational> parse_gamma_grid(const std::string& s) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ':') {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw UsageError("--gamma expects start:stop:step");
  const Rational a = parse_gamma(parts[0]), b = parse_gamma(parts[1]), h = parse_gamma(parts[2]);
  if (h <= 0 || b < a) throw UsageError("empty gamma range '" + s + "'");
  std::vector<Rational> grid;
  for (Rational g = a; g <= b; g += h) grid.push_back(g);
  if (grid.size() > 1000000) throw UsageError("gamma grid too large");
  return grid;
}

int cmd_mu_curve(const Common& c, const std::string& n_range, const std::string& grid_text, const std::string& mark) {
  const Method m = load(c.method);
  const auto [n_lo, n_hi] = parse_index_range(n_range);
  if (n_lo < 0 || n_hi < n_lo) throw UsageError("empty index range '" + n_range + "'");
  const std::vector<Rational> grid = parse_gamma_grid(grid_text);
  std::vector<Rational> points = grid;
  std::optional<Rational> marked;
  if (!mark.empty()) {
    marked = parse_gamma(mark);
    points.push_back(*marked);
  }
  std::ostringstream os;
  os << "gamma,n,value,marker\n";
  for (size_t i = 0; i < points.size(); ++i) {
    const bool is_mark = marked && i + 1 == points.size();
    const auto mu = mu_prefix(m, points[i], n_hi);
    for (long n = n_lo; n <= n_hi; ++n)
      os << to_string(points[i]) << "," << n << "," << to_string(mu[static_cast<size_t>(n)]) << ","
         << (is_mark ? 1 : 0) << "\n";
  }
  if (c.output.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.output);
    if (!f) throw UsageError("cannot write " + c.output);
    f << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify step-size coefficients for boundedness of linear multistep methods"};
  app.require_subcommand(1);

  Common c;
  std::string gamma, tol = "1e-9", target, n_range, grid, mark;
  long tau_n = 10;

  auto add_common = [&](CLI::App* sub, bool needs_method) {
    auto* opt = sub->add_option("--method,-m", c.method, "catalog name or JSON method file");
    if (needs_method) opt->required();
    sub->add_option("--format,-f", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output,-o", c.output, "write the report to a file");
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--horizon", c.horizon, "exact finite-check length")->check(CLI::PositiveNumber);
    sub->add_option("--precision", c.precision, "run the finite check in interval arithmetic at this many digits");
    sub->add_option("--precision-cap", c.precision_cap, "largest precision in digits (env SCB_PRECISION_CAP)");
  };

  auto* list = app.add_subcommand("list", "list the built-in methods");
  list->add_option("--format,-f", c.format)->check(CLI::IsMember({"json", "csv", "text"}));

  auto* check = app.add_subcommand("check", "decide whether gamma is an SCB");
  add_common(check, true);
  add_analysis(check);
  check->add_option("--gamma,-g", gamma, "p/q or decimal")->required();

  auto* gsup = app.add_subcommand("gamma-sup", "enclose the largest SCB");
  add_common(gsup, true);
  add_analysis(gsup);
  gsup->add_option("--tol", tol, "enclosure width");

  auto* tau = app.add_subcommand("tau", "tau_n prefix and SCB existence");
  add_common(tau, true);
  add_analysis(tau);
  tau->add_option("--n", tau_n, "number of terms");

  auto* repro = app.add_subcommand("reproduce", "run a reference suite");
  add_common(repro, false);
  add_analysis(repro);
  repro->add_option("--target,-t", target, "bdf-optimal, ab-optimal, ebdf-existence or bdf4-witnesses")->required();
  repro->add_option("--tol", tol, "enclosure width");

  auto* curve = app.add_subcommand("mu-curve", "CSV samples of mu_n(gamma)");
  add_common(curve, true);
  curve->add_option("--n", n_range, "index range a..b")->required();
  curve->add_option("--gamma,-g", grid, "start:stop:step")->required();
  curve->add_option("--mark", mark, "extra gamma flagged in the marker column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*list) return cmd_list(c);
    if (*check) return cmd_check(c, gamma);
    if (*gsup) return cmd_gamma_sup(c, tol);
    if (*tau) return cmd_tau(c, tau_n);
    if (*repro) return cmd_reproduce(c, target, tol);
    if (*curve) return cmd_mu_curve(c, n_range, grid, mark);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
