#include "scb/recursion.hpp"

#include <sstream>

namespace scb {

std::string to_string(SeqKind k) { return k == SeqKind::Mu ? "mu" : "tau"; }

Interval gamma_interval(const GammaValue& g, mpfr_prec_t bits) {
  if (const auto* q = std::get_if<Rational>(&g)) return Interval(*q, bits);
  return std::get<AlgebraicReal>(g).enclosure(bits);
}

std::string to_string(const GammaValue& g) {
  if (const auto* q = std::get_if<Rational>(&g)) return to_string(*q);
  return "root of " + to_string(to_rational(std::get<AlgebraicReal>(g).poly()), "g") + " in " +
         std::get<AlgebraicReal>(g).str(20);
}

// ---------------------------------------------------------------- exact

std::vector<Rational> mu_prefix(const Method& m, const Rational& gamma, long n_max) {
  std::vector<Rational> mu;
  if (n_max < 0) return mu;
  const Rational lead = 1 + gamma * m.b_at(0);
  if (lead == 0) throw std::domain_error("mu recursion: 1 + gamma b_0 vanishes");
  std::vector<Rational> c(static_cast<size_t>(m.k) + 1);
  for (int j = 1; j <= m.k; ++j) c[static_cast<size_t>(j)] = m.a_at(j) - gamma * m.b_at(j);
  mu.reserve(static_cast<size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) {
    Rational s = n <= m.k ? m.b_at(static_cast<int>(n)) : Rational(0);
    for (int j = 1; j <= m.k && j <= n; ++j) s += c[static_cast<size_t>(j)] * mu[static_cast<size_t>(n - j)];
    mu.push_back(s / lead);
  }
  return mu;
}

std::vector<Rational> tau_prefix(const Method& m, long n_max) { return mu_prefix(m, Rational(0), n_max); }

Rational eval_mu(const Method& m, const Rational& gamma, long n) {
  if (n < 0) return 0;
  ExactMuStream s(m, gamma);
  for (long i = 0; i < n; ++i) s.next();
  s.next();
  return s.value();
}

Rational eval_tau(const Method& m, long n) { return eval_mu(m, Rational(0), n); }

namespace {

struct Scaled {
  Integer L;
  std::vector<Integer> C;  // index 1..k
  std::vector<Integer> B;  // index 0..k
};

Scaled scaled_coefficients(const Method& m, const Rational& gamma) {
  const Integer D = m.denominator();
  const Integer& p = gamma.get_num();
  const Integer& q = gamma.get_den();
  auto integral = [](const Rational& v) {
    if (v.get_den() != 1) throw std::logic_error("scaled recursion: non-integral coefficient");
    return v.get_num();
  };
  Scaled s;
  s.L = integral(Rational(D) * (Rational(q) + Rational(p) * m.b_at(0)));
  s.C.assign(static_cast<size_t>(m.k) + 1, Integer(0));
  s.B.assign(static_cast<size_t>(m.k) + 1, Integer(0));
  for (int j = 1; j <= m.k; ++j)
    s.C[static_cast<size_t>(j)] = integral(Rational(D) * (Rational(q) * m.a_at(j) - Rational(p) * m.b_at(j)));
  for (int j = 0; j <= m.k; ++j) s.B[static_cast<size_t>(j)] = integral(Rational(D * q) * m.b_at(j));
  if (s.L == 0) throw std::domain_error("mu recursion: 1 + gamma b_0 vanishes");
  return s;
}

}  // namespace

ExactMuStream::ExactMuStream(const Method& m, const Rational& gamma) : k_(m.k) {
  const Scaled s = scaled_coefficients(m, gamma);
  L_ = s.L;
  E_.assign(static_cast<size_t>(k_) + 1, Integer(0));
  Integer lp = 1;
  for (int j = 1; j <= k_; ++j) {
    E_[static_cast<size_t>(j)] = s.C[static_cast<size_t>(j)] * lp;
    lp *= L_;
  }
  Bs_.assign(static_cast<size_t>(k_) + 1, Integer(0));
  lp = 1;
  for (int n = 0; n <= k_; ++n) {
    Bs_[static_cast<size_t>(n)] = s.B[static_cast<size_t>(n)] * lp;
    lp *= L_;
  }
  window_.reserve(static_cast<size_t>(k_) + 1);
}

const Integer& ExactMuStream::next() {
  // window_ holds M_{n-k} .. M_{n-1} (fewer at the start), oldest first.
  Integer v = n_ <= k_ ? Bs_[static_cast<size_t>(n_)] : Integer(0);
  const size_t w = window_.size();
  for (size_t j = 1; j <= w; ++j) v += E_[j] * window_[w - j];
  if (static_cast<int>(w) == k_) window_.erase(window_.begin());
  window_.push_back(std::move(v));
  ++n_;
  return window_.back();
}

Rational ExactMuStream::value() const {
  Integer lp;
  mpz_pow_ui(lp.get_mpz_t(), L_.get_mpz_t(), static_cast<unsigned long>(n_));
  return rational_of(window_.back(), lp);
}

ExactScan exact_sign_scan(const Method& m, const Rational& gamma, long n_from, long n_to, bool stop_at_first_negative) {
  ExactScan out;
  out.n_from = n_from;
  out.n_to = n_from - 1;
  ExactMuStream s(m, gamma);
  // L > 0 is required for sign(M_n) = sign(mu_n).
  const bool flip = (1 + gamma * m.b_at(0)) < 0;
  for (long n = 0; n <= n_to; ++n) {
    s.next();
    if (n < n_from) continue;
    out.n_to = n;
    int sign = s.sign();
    if (flip && (n + 1) % 2) sign = -sign;
    if (sign < 0) {
      out.negatives.push_back(n);
      if (stop_at_first_negative) break;
    } else if (sign == 0) {
      out.zeros.push_back(n);
    }
  }
  return out;
}

IntegerPoly mu_denominator_base(const Method& m) {
  const Integer D = m.denominator();
  return IntegerPoly::from_descending({Rational(D * m.b_at(0)).get_num(), D});
}

std::vector<IntegerPoly> mu_numerators(const Method& m, long n_max) {
  const Integer D = m.denominator();
  const IntegerPoly L = mu_denominator_base(m);
  std::vector<IntegerPoly> Cj(static_cast<size_t>(m.k) + 1);
  for (int j = 1; j <= m.k; ++j)
    Cj[static_cast<size_t>(j)] =
        IntegerPoly::from_descending({Rational(-(D * m.b_at(j))).get_num(), Rational(D * m.a_at(j)).get_num()});
  std::vector<IntegerPoly> Lpow{IntegerPoly::constant(1)};
  while (static_cast<int>(Lpow.size()) <= m.k) Lpow.push_back(Lpow.back() * L);
  std::vector<IntegerPoly> E(static_cast<size_t>(m.k) + 1);
  for (int j = 1; j <= m.k; ++j) E[static_cast<size_t>(j)] = Cj[static_cast<size_t>(j)] * Lpow[static_cast<size_t>(j - 1)];
  std::vector<IntegerPoly> M;
  for (long n = 0; n <= n_max; ++n) {
    IntegerPoly v;
    if (n <= m.k) {
      const Integer Bn = Rational(D * m.b_at(static_cast<int>(n))).get_num();
      if (Bn != 0) v = Bn * Lpow[static_cast<size_t>(n)];
    }
    for (int j = 1; j <= m.k && j <= n; ++j) v = v + E[static_cast<size_t>(j)] * M[static_cast<size_t>(n - j)];
    M.push_back(std::move(v));
  }
  return M;
}

// ---------------------------------------------------------------- intervals

IntervalMuStream::IntervalMuStream(const Method& m, const Rational& gamma, long digits)
    : k_(m.k), bits_(bits_for_digits(digits)), integer_path_(true), L_(bits_) {
  const Scaled s = scaled_coefficients(m, gamma);
  Ci_ = s.C;
  Li_ = s.L;
  Bi_ = s.B;
}

IntervalMuStream::IntervalMuStream(const Method& m, const Interval& gamma, long digits)
    : k_(m.k), bits_(bits_for_digits(digits)), L_(bits_) {
  const Interval g = gamma.with_bits(bits_);
  L_ = Interval(1L, bits_) + g * Interval(m.b_at(0), bits_);
  if (L_.contains_zero()) throw std::domain_error("mu recursion: 1 + gamma b_0 may vanish");
  C_.assign(static_cast<size_t>(k_) + 1, Interval(bits_));
  B_.assign(static_cast<size_t>(k_) + 1, Interval(bits_));
  for (int j = 1; j <= k_; ++j)
    C_[static_cast<size_t>(j)] = Interval(m.a_at(j), bits_) - g * Interval(m.b_at(j), bits_);
  for (int j = 0; j <= k_; ++j) B_[static_cast<size_t>(j)] = Interval(m.b_at(j), bits_);
}

const Interval& IntervalMuStream::next() {
  const size_t w = window_.size();
  Interval v(bits_);
  if (integer_path_) {
    if (n_ <= k_) v = Interval(Bi_[static_cast<size_t>(n_)], bits_);
    for (size_t j = 1; j <= w; ++j) {
      if (Ci_[j] == 0) continue;
      v += window_[w - j] * Ci_[j];
    }
    v = v / Li_;
  } else {
    if (n_ <= k_) v = B_[static_cast<size_t>(n_)];
    for (size_t j = 1; j <= w; ++j) v += C_[j] * window_[w - j];
    v = v / L_;
  }
  if (static_cast<int>(w) == k_) window_.erase(window_.begin());
  window_.push_back(std::move(v));
  ++n_;
  return window_.back();
}

namespace {
template <class G>
IntervalScan scan_impl(const Method& m, const G& gamma, long n_max, long digits) {
  IntervalScan out;
  out.n_max = n_max;
  out.digits = digits;
  IntervalMuStream s(m, gamma, digits);
  s.next();  // mu_0
  for (long n = 1; n <= n_max; ++n) {
    switch (certified_sign(s.next())) {
      case Sign::Negative: out.negatives.push_back(n); break;
      case Sign::Unknown: out.unknown.push_back(n); break;
      case Sign::Positive: ++out.positives; break;
    }
  }
  return out;
}
}  // namespace

IntervalScan interval_sign_scan(const Method& m, const Rational& gamma, long n_max, long digits) {
  return scan_impl(m, gamma, n_max, digits);
}

IntervalScan interval_sign_scan(const Method& m, const Interval& gamma, long n_max, long digits) {
  return scan_impl(m, gamma, n_max, digits);
}

std::vector<Interval> mu_enclosures(const Method& m, const GammaValue& gamma, long n_max, long digits) {
  std::vector<Interval> out;
  if (const auto* q = std::get_if<Rational>(&gamma)) {
    IntervalMuStream s(m, *q, digits);
    for (long n = 0; n <= n_max; ++n) out.push_back(s.next());
  } else {
    IntervalMuStream s(m, gamma_interval(gamma, bits_for_digits(digits) + 32), digits);
    for (long n = 0; n <= n_max; ++n) out.push_back(s.next());
  }
  return out;
}

// ---------------------------------------------------------------- export

std::string sequence_csv(const Method& m, SeqKind kind, const Rational& gamma, long n_max) {
  std::ostringstream os;
  os << "n,value,sign\n";
  const auto values = mu_prefix(m, kind == SeqKind::Tau ? Rational(0) : gamma, n_max);
  for (size_t n = 0; n < values.size(); ++n) {
    const int s = sgn(values[n]);
    os << n << "," << to_string(values[n]) << "," << (s > 0 ? "+" : s < 0 ? "-" : "0") << "\n";
  }
  return os.str();
}

}  // namespace scb
