#include "scb/analyzer.hpp"

#include <cstdlib>

namespace scb {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "Yes";
    case Tri::No: return "No";
    case Tri::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Feasible: return "Feasible";
    case Status::Infeasible: return "Infeasible";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(EvidenceType e) {
  switch (e) {
    case EvidenceType::FeasibleCert: return "FeasibleCert";
    case EvidenceType::InfeasibleWitness: return "InfeasibleWitness";
    case EvidenceType::InfeasibleStability: return "InfeasibleStability";
    case EvidenceType::InfeasibleComplexDominance: return "InfeasibleComplexDominance";
    case EvidenceType::InconclusiveHorizon: return "InconclusiveHorizon";
  }
  return "InconclusiveHorizon";
}

std::string to_string(Existence e) {
  switch (e) {
    case Existence::Exists: return "Exists";
    case Existence::NotExists: return "NotExists";
    case Existence::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

AnalyzerOptions default_options() {
  AnalyzerOptions o;
  if (const char* cap = std::getenv("SCB_PRECISION_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v >= 16) o.max_digits = v;
  }
  return o;
}

namespace {

RationalPoly stability_poly(const Method& m, const Rational& lambda) {
  const GeneratingPolys g = generating_polys(m);
  return g.rho - lambda * g.sigma;
}

StabilityData stability_data(const Method& m, const Rational& gamma) {
  StabilityData sd;
  sd.poly = stability_poly(m, -gamma);
  sd.leading_vanishes = 1 + gamma * m.b_at(0) == 0;
  if (!sd.leading_vanishes) sd.count = unit_circle_count(sd.poly);
  return sd;
}

bool interior(const StabilityData& sd) { return !sd.leading_vanishes && sd.count.on == 0 && sd.count.outside == 0; }

std::optional<ComplexDominanceCert> complex_certificate(const ClosedForm& cf) {
  const Dominance d = dominance(cf);
  if (d.state != DominanceState::ComplexDominant || !d.ratio_upper || *d.ratio_upper >= 1) return std::nullopt;
  const auto& r = cf.roots[d.top[0]];
  const ComplexBox& c = r.coeffs.back();
  if (!c.abs_sq().certainly_positive()) return std::nullopt;
  return ComplexDominanceCert{r.root.box, c, *d.ratio_upper, cf.digits};
}

// Closed form at increasing precision until the dominance classification is
// decided or the cap is reached.
std::optional<ClosedForm> settled_closed_form(const Method& m, const Rational& gamma, const AnalyzerOptions& opt,
                                              std::string& note) {
  const long cap = std::min(opt.max_digits, opt.closed_form_max_digits);
  std::optional<ClosedForm> last;
  for (long d = opt.digits; d <= cap; d *= 2) {
    ClosedFormOptions co;
    co.digits = d;
    co.max_digits = cap;
    co.allow_multiple = true;
    try {
      last = closed_form(m, GammaValue(gamma), SeqKind::Mu, co);
    } catch (const ClosedFormUnavailable& e) {
      note = e.what();
      return last;
    } catch (const std::domain_error& e) {
      note = e.what();
      return last;
    }
    const DominanceState s = dominance(*last).state;
    if (s == DominanceState::ComplexDominant || s == DominanceState::NegativeDominant) return last;
    if (s == DominanceState::RealDominant) {
      const auto& top = last->roots[dominance(*last).top[0]];
      if (!top.coeffs.back().re.contains_zero()) return last;
    }
    if (last->roots.empty()) return last;
    d = std::max(d, last->digits);
  }
  return last;
}

// Sign of mu_n from the scaled numerator.
int mu_sign(const ExactMuStream& s, bool flip) {
  int sign = s.sign();
  if (flip && s.index() % 2 == 1) sign = -sign;  // index() = n + 1 after next()
  return sign;
}

}  // namespace

Tri in_stability_interior(const Method& m, const Rational& lambda) {
  if (1 - lambda * m.b_at(0) == 0) return Tri::No;
  return root_condition(stability_poly(m, lambda)) == RootCondition::SatisfiedStrictly ? Tri::Yes : Tri::No;
}

std::optional<ComplexDominanceCert> infeasible_by_complex_dominance(const Method& m, const Rational& gamma,
                                                                    const AnalyzerOptions& opt) {
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
  std::string note;
  const auto cf = settled_closed_form(m, gamma, opt, note);
  if (!cf) return std::nullopt;
  return complex_certificate(*cf);
}

ScbVerdict check_scb(const Method& m, const Rational& gamma, const AnalyzerOptions& opt) {
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
  ScbVerdict v;
  v.gamma = gamma;
  v.horizon_used = opt.horizon;

  StabilityData sd = stability_data(m, gamma);
  if (!interior(sd)) {
    v.status = Status::Infeasible;
    v.evidence = EvidenceType::InfeasibleStability;
    v.stability = std::move(sd);
    return v;
  }
  v.stability = std::move(sd);

  // Finite check of mu_1 .. mu_horizon.
  if (opt.interval_digits > 0) {
    long d = opt.interval_digits;
    IntervalScan scan;
    while (true) {
      scan = interval_sign_scan(m, gamma, opt.horizon, d);
      v.precision_used = d;
      if (scan.unknown.empty() || d >= opt.max_digits) break;
      d = std::min(d * 2, opt.max_digits);
    }
    v.unknown = scan.unknown;
    if (!scan.negatives.empty()) {
      v.status = Status::Infeasible;
      v.evidence = EvidenceType::InfeasibleWitness;
      v.witnesses = scan.negatives;
      return v;
    }
    if (!scan.unknown.empty())
      v.note = std::to_string(scan.unknown.size()) + " signs undecided at " + std::to_string(d) +
               " digits; decided exactly";
  }

  const bool flip = 1 + gamma * m.b_at(0) < 0;
  ExactMuStream s(m, gamma);
  s.next();  // mu_0
  for (long n = 1; n <= opt.horizon; ++n) {
    s.next();
    if (mu_sign(s, flip) < 0) v.witnesses.push_back(n);
  }
  if (!v.witnesses.empty()) {
    v.status = Status::Infeasible;
    v.evidence = EvidenceType::InfeasibleWitness;
    return v;
  }
  v.checked_to = opt.horizon;

  // Continues the exact scan up to `to`, stopping at the first negative.
  auto scan_to = [&](long to) {
    while (s.index() <= to) {
      s.next();
      if (mu_sign(s, flip) < 0) {
        v.witnesses.push_back(s.index() - 1);
        return false;
      }
      v.checked_to = s.index() - 1;
    }
    return true;
  };

  std::string note;
  const auto cf = settled_closed_form(m, gamma, opt, note);
  if (cf) {
    v.precision_used = std::max(v.precision_used, cf->digits);
    std::optional<TailCertificate> tail;
    bool complex_dominant = false;
    try {
      tail = tail_certificate(*cf);
    } catch (const std::domain_error&) {
      complex_dominant = true;
    }
    if (tail) {
      if (tail->n_start - 1 > std::max(opt.horizon, opt.witness_cap)) {
        note = "tail certificate starts at n = " + std::to_string(tail->n_start) + ", beyond the scan cap";
      } else if (!scan_to(tail->n_start - 1)) {
        v.status = Status::Infeasible;
        v.evidence = EvidenceType::InfeasibleWitness;
        return v;
      } else {
        v.status = Status::Feasible;
        v.evidence = EvidenceType::FeasibleCert;
        v.tail = std::move(tail);
        return v;
      }
    }
    if (complex_dominant) {
      if (auto cert = complex_certificate(*cf)) {
        v.status = Status::Infeasible;
        v.evidence = EvidenceType::InfeasibleComplexDominance;
        v.dominance = std::move(cert);
        return v;
      }
    }
  }

  // Witness search up to the cap.
  if (!scan_to(std::max(opt.horizon, opt.witness_cap))) {
    v.status = Status::Infeasible;
    v.evidence = EvidenceType::InfeasibleWitness;
    v.horizon_used = std::max(opt.horizon, opt.witness_cap);
    return v;
  }
  v.status = Status::Inconclusive;
  v.evidence = EvidenceType::InconclusiveHorizon;
  v.horizon_used = std::max(opt.horizon, opt.witness_cap);
  if (v.precision_used == 0) v.precision_used = opt.digits;
  v.note = note.empty() ? "no certificate within the horizon and precision" : note;
  return v;
}

ExistenceResult scb_exists(const Method& m, const AnalyzerOptions& opt) {
  ExistenceResult r;
  r.n0 = n0(m);
  r.rho_unit_roots = unit_roots(generating_polys(m).rho);

  std::vector<Rational> tau = tau_prefix(m, opt.horizon);
  std::optional<long> first_bad;
  for (long n = r.n0; n <= opt.horizon; ++n) {
    if (tau[static_cast<size_t>(n)] > 0) continue;
    if (n % r.n0 == 0) {
      r.verdict = Existence::NotExists;
      r.nonpositive_index = n;
      r.checked_to = n;
      return r;
    }
    if (!first_bad) first_bad = n;
  }
  r.checked_to = opt.horizon;
  if (first_bad) {
    r.note = "tau_" + std::to_string(*first_bad) + " <= 0 at an index that is not a multiple of n0";
    return r;
  }
  if (r.rho_unit_roots.distinct != 1 || !r.rho_unit_roots.has_one) {
    r.note = "rho has unit-modulus roots other than 1";
    return r;
  }

  const long cap = std::min(opt.max_digits, opt.closed_form_max_digits);
  for (long d = opt.digits; d <= cap; d *= 2) {
    ClosedFormOptions co;
    co.digits = d;
    co.max_digits = cap;
    co.allow_multiple = true;
    std::optional<TailCertificate> tail;
    try {
      const ClosedForm cf = closed_form(m, GammaValue(Rational(0)), SeqKind::Tau, co);
      tail = tail_certificate(cf);
      d = std::max(d, cf.digits);
    } catch (const std::exception& e) {
      r.note = e.what();
      break;
    }
    if (!tail) continue;
    if (tail->n_start - 1 > opt.horizon) {
      if (tail->n_start - 1 > opt.witness_cap) {
        r.note = "tail certificate starts beyond the scan cap";
        return r;
      }
      tau = tau_prefix(m, tail->n_start - 1);
      for (long n = opt.horizon + 1; n < tail->n_start; ++n) {
        if (tau[static_cast<size_t>(n)] <= 0) {
          r.note = "tau_" + std::to_string(n) + " <= 0";
          if (n % r.n0 == 0) {
            r.verdict = Existence::NotExists;
            r.nonpositive_index = n;
          }
          return r;
        }
      }
      r.checked_to = tail->n_start - 1;
    }
    r.verdict = Existence::Exists;
    r.tail = std::move(tail);
    return r;
  }
  if (r.note.empty()) r.note = "no tail certificate within the precision cap";
  return r;
}

}  // namespace scb
