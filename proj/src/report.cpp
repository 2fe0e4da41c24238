#include "scb/report.hpp"

#include <algorithm>
#include <sstream>

namespace scb {

namespace {

Json rationals(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

Json exact_with_decimal(const Rational& q, Rounding mode = Rounding::Nearest) {
  return Json{{"exact", to_string(q)}, {"decimal", to_decimal(q, 15, mode)}};
}

}  // namespace

Json to_json(const Method& m) {
  return Json{{"name", m.name}, {"family", to_string(m.family)}, {"k", m.k}, {"a", rationals(m.a)}, {"b", rationals(m.b)}};
}

Json to_json(const Interval& x, int digits) {
  // str() prints "[lo, hi]" rounded outward.
  const std::string s = x.str(digits);
  const size_t comma = s.find(", ");
  return Json::array({s.substr(1, comma - 1), s.substr(comma + 2, s.size() - comma - 3)});
}

Json to_json(const ComplexBox& z, int digits) { return Json{{"re", to_json(z.re, digits)}, {"im", to_json(z.im, digits)}}; }

Json to_json(const TailCertificate& t) {
  Json j{{"kind", t.kind == TailKind::Zero ? "zero" : "dominant"}, {"n_start", t.n_start}};
  if (t.kind == TailKind::Zero) return j;
  j["rho"] = Json{{"lo", to_decimal(t.rho_lo, 20, Rounding::Down)}, {"hi", to_decimal(t.rho_hi, 20, Rounding::Up)}};
  j["rho_multiplicity"] = t.rho_multiplicity;
  j["leading_lower"] = exact_with_decimal(t.leading_lower, Rounding::Down);
  j["residual_upper"] = exact_with_decimal(t.residual_upper, Rounding::Up);
  j["residual_ratio"] = to_decimal(t.residual_upper / t.leading_lower, 6, Rounding::Up);
  Json terms = Json::array();
  for (const auto& term : t.terms)
    terms.push_back(Json{{"coeff_upper", to_decimal(term.coeff_upper, 12, Rounding::Up)},
                         {"n_power", term.n_power},
                         {"ratio_upper", to_decimal(term.ratio_upper, 12, Rounding::Up)}});
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const ClosedForm& cf, int digits) {
  Json roots = Json::array();
  for (const auto& r : cf.roots) {
    Json coeffs = Json::array();
    for (const auto& c : r.coeffs) coeffs.push_back(to_json(c, digits));
    roots.push_back(Json{{"root", to_json(r.root.box, digits)},
                         {"multiplicity", r.multiplicity},
                         {"real", r.root.real},
                         {"coeffs", std::move(coeffs)}});
  }
  return Json{{"sequence", to_string(cf.kind)},
              {"gamma", cf.gamma},
              {"valid_from", cf.valid_from},
              {"zero_root_multiplicity", cf.zero_root_multiplicity},
              {"digits", cf.digits},
              {"roots", std::move(roots)}};
}

Json to_json(const ScbVerdict& v) {
  Json ev{{"type", to_string(v.evidence)}};
  switch (v.evidence) {
    case EvidenceType::FeasibleCert:
      ev["checked_to"] = v.checked_to;
      if (v.tail) ev["tail"] = to_json(*v.tail);
      break;
    case EvidenceType::InfeasibleWitness:
      ev["n"] = v.witnesses.front();
      ev["witnesses"] = v.witnesses;
      break;
    case EvidenceType::InfeasibleStability:
      if (v.stability) {
        ev["poly"] = to_string(v.stability->poly, "z");
        ev["leading_vanishes"] = v.stability->leading_vanishes;
        ev["roots_inside"] = v.stability->count.inside;
        ev["roots_on_circle"] = v.stability->count.on;
        ev["roots_outside"] = v.stability->count.outside;
      }
      break;
    case EvidenceType::InfeasibleComplexDominance:
      if (v.dominance) {
        ev["root"] = to_json(v.dominance->root);
        ev["coeff"] = to_json(v.dominance->coeff);
        ev["ratio_upper"] = to_decimal(v.dominance->ratio_upper, 12, Rounding::Up);
        ev["digits"] = v.dominance->digits;
      }
      break;
    case EvidenceType::InconclusiveHorizon:
      ev["checked_to"] = v.checked_to;
      break;
  }
  if (!v.unknown.empty()) ev["undecided_interval_signs"] = v.unknown.size();
  if (!v.note.empty()) ev["note"] = v.note;
  return Json{{"gamma", to_string(v.gamma)},
              {"gamma_decimal", to_decimal(v.gamma, 15)},
              {"status", to_string(v.status)},
              {"evidence", std::move(ev)},
              {"precision_used", v.precision_used},
              {"horizon_used", v.horizon_used}};
}

Json to_json(const ExistenceResult& e) {
  Json j{{"status", to_string(e.verdict)}, {"n0", e.n0}, {"checked_to", e.checked_to}};
  j["rho_unit_roots"] = Json{{"distinct", e.rho_unit_roots.distinct}, {"has_one", e.rho_unit_roots.has_one}};
  if (e.tail) j["tail"] = to_json(*e.tail);
  if (e.nonpositive_index) j["nonpositive_index"] = *e.nonpositive_index;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

Json to_json(const GammaSupResult& r) {
  Json j{{"mechanism", to_string(r.mechanism)}};
  if (r.mechanism == Mechanism::SimpleRoot) j["simple_root_n"] = r.simple_root_n;
  if (r.mechanism != Mechanism::NonePositive) {
    Json enc{{"lo", exact_with_decimal(r.lo, Rounding::Down)}};
    if (r.mechanism == Mechanism::Unbounded) enc["hi"] = "inf";
    else enc["hi"] = exact_with_decimal(r.hi, Rounding::Up);
    if (r.mechanism != Mechanism::Unbounded) enc["width"] = to_decimal(r.hi - r.lo, 6, Rounding::Up);
    j["enclosure"] = std::move(enc);
  }
  j["certified"] = r.certified;
  if (r.simple_root)
    j["simple_root_bound"] = Json{{"n", r.simple_root->n},
                                  {"poly", to_string(to_rational(r.simple_root->gamma.poly()), "g")},
                                  {"lo", to_string(r.simple_root->gamma.lo())},
                                  {"hi", to_string(r.simple_root->gamma.hi())}};
  if (r.crossover)
    j["crossover"] = Json{{"lo", exact_with_decimal(r.crossover->lo, Rounding::Down)}, {"hi", exact_with_decimal(r.crossover->hi, Rounding::Up)}};
  if (r.at_lo) j["feasible_at_lo"] = to_json(*r.at_lo);
  if (r.at_hi) j["infeasible_at_hi"] = to_json(*r.at_hi);
  if (!r.ladder.empty()) j["ladder"] = rationals(r.ladder);
  if (r.existence) j["existence"] = to_json(*r.existence);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json check_report(const Method& m, const ScbVerdict& v) {
  Json j{{"schema_version", kSchemaVersion}, {"command", "check"}, {"method", to_json(m)}};
  const Json body = to_json(v);
  for (auto& [k, val] : body.items()) j[k] = val;
  return j;
}

Json gamma_sup_report(const Method& m, const GammaSupResult& r, const std::optional<ReferenceCheck>& ref) {
  Json j{{"schema_version", kSchemaVersion}, {"command", "gamma-sup"}, {"method", to_json(m)}};
  const bool finite = r.mechanism != Mechanism::Unbounded && r.mechanism != Mechanism::NonePositive;
  j["status"] = r.certified ? (finite ? "Enclosed" : to_string(r.mechanism)) : "Inconclusive";
  const Json body = to_json(r);
  for (auto& [k, val] : body.items()) j[k] = val;
  Json ev{{"type", to_string(r.mechanism)}};
  if (r.at_hi) ev["hi"] = to_string(r.at_hi->evidence);
  if (r.at_lo) ev["lo"] = to_string(r.at_lo->evidence);
  if (r.existence && r.mechanism == Mechanism::NonePositive && r.existence->nonpositive_index)
    ev["nonpositive_tau_index"] = *r.existence->nonpositive_index;
  j["evidence"] = std::move(ev);
  long precision = 0, horizon = 0;
  for (const auto* v : {r.at_lo ? &*r.at_lo : nullptr, r.at_hi ? &*r.at_hi : nullptr}) {
    if (!v) continue;
    precision = std::max(precision, v->precision_used);
    horizon = std::max(horizon, v->horizon_used);
  }
  j["precision_used"] = precision;
  j["horizon_used"] = horizon;
  if (ref) j["reference"] = Json{{"passed", ref->passed}, {"detail", ref->detail}};
  return j;
}

Json tau_report(const Method& m, const std::vector<Rational>& tau, const ExistenceResult& e) {
  Json j{{"schema_version", kSchemaVersion}, {"command", "tau"}, {"method", to_json(m)}};
  j["n0"] = e.n0;
  j["tau"] = rationals(tau);
  j["status"] = to_string(e.verdict);
  j["evidence"] = to_json(e);
  j["horizon_used"] = e.checked_to;
  return j;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    // Scalar lists stay on one line.
    std::string joined;
    for (const auto& v : j) joined += (joined.empty() ? "" : " ") + (v.is_string() ? v.get<std::string>() : v.dump());
    out.emplace_back(prefix, joined);
  } else if (j.is_array()) {
    size_t i = 0;
    for (const auto& v : j) flatten(v, prefix + "." + std::to_string(i++), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string to_csv(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  os << "field,value\n";
  for (const auto& [k, v] : rows) os << csv_field(k) << "," << csv_field(v) << "\n";
  return os.str();
}

std::string to_text(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << ": " << v << "\n";
  return os.str();
}

}  // namespace scb
