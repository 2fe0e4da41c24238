#include "scb/poly.hpp"

#include <cctype>
#include <sstream>

namespace scb {

RationalPoly to_rational(const IntegerPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.ascending().size());
  for (const auto& v : p.ascending()) c.emplace_back(v);
  return RationalPoly(std::move(c));
}

IntegerPoly primitive_part(const IntegerPoly& p) {
  Integer g = 0;
  for (const auto& v : p.ascending()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g == 0 || g == 1) return p;
  std::vector<Integer> c;
  for (const auto& v : p.ascending()) c.emplace_back(v / g);
  return IntegerPoly(std::move(c));
}

IntegerPoly primitive_integer(const RationalPoly& p) {
  const Integer d = lcm_of_denominators(p.ascending());
  std::vector<Integer> c;
  for (const auto& v : p.ascending()) c.emplace_back(v.get_num() * (d / v.get_den()));
  return primitive_part(IntegerPoly(std::move(c)));
}

IntegerPoly integer_poly_from_strings(const std::vector<std::string>& descending) {
  std::vector<Integer> c;
  for (const auto& s : descending) {
    const Rational q = parse_rational(s);
    if (q.get_den() != 1) throw std::invalid_argument("polynomial coefficient is not an integer: '" + s + "'");
    c.push_back(q.get_num());
  }
  return IntegerPoly::from_descending(std::move(c));
}

std::vector<std::string> to_strings(const IntegerPoly& p) {
  std::vector<std::string> out;
  for (const auto& v : p.descending()) out.push_back(v.get_str());
  if (out.empty()) out.push_back("0");
  return out;
}

std::string to_string(const RationalPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    const bool unit = c == 1 && i > 0;
    if (!unit) {
      const bool paren = c.get_den() != 1 && i > 0;
      os << (paren ? "(" : "") << to_string(c) << (paren ? ")" : "");
    }
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.ascending();
  const int db = b.degree();
  if (a.degree() < db) return {RationalPoly(), a};
  std::vector<Rational> q(static_cast<size_t>(a.degree() - db + 1), Rational(0));
  const Rational lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const Rational c = r[static_cast<size_t>(i)] / lb;
    q[static_cast<size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= c * b[static_cast<size_t>(j)];
  }
  r.resize(static_cast<size_t>(db));
  return {RationalPoly(std::move(q)), RationalPoly(std::move(r))};
}

namespace {
RationalPoly monic(const RationalPoly& p) {
  if (p.is_zero()) return p;
  return Rational(1 / p.leading()) * p;
}
}  // namespace

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = monic(a), y = monic(b);
  while (!y.is_zero()) {
    RationalPoly r = divmod(x, y).second;
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

IntegerPoly gcd(const IntegerPoly& a, const IntegerPoly& b) {
  IntegerPoly g = primitive_integer(gcd(to_rational(a), to_rational(b)));
  if (g.leading() < 0) g = -g;
  return g;
}

IntegerPoly exact_quotient(const IntegerPoly& a, const IntegerPoly& b) {
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  if (!r.is_zero()) throw std::logic_error("exact_quotient: nonzero remainder");
  std::vector<Integer> c;
  for (const auto& v : q.ascending()) {
    if (v.get_den() != 1) throw std::logic_error("exact_quotient: non-integral quotient");
    c.push_back(v.get_num());
  }
  return IntegerPoly(std::move(c));
}

RationalPoly taylor_shift(const RationalPoly& p, const Rational& s) {
  std::vector<Rational> c = p.ascending();
  const size_t n = c.size();
  if (s == 0 || n <= 1) return p;
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = n - 1; j-- > i;) c[j] += s * c[j + 1];
  return RationalPoly(std::move(c));
}

RationalPoly scale_argument(const RationalPoly& p, const Rational& s) {
  std::vector<Rational> c = p.ascending();
  Rational f = 1;
  for (auto& v : c) {
    v *= f;
    f *= s;
  }
  return RationalPoly(std::move(c));
}

std::vector<std::pair<IntegerPoly, int>> square_free_decomposition(const IntegerPoly& p) {
  if (p.is_constant()) throw std::invalid_argument("square_free_decomposition: constant polynomial");
  std::vector<std::pair<IntegerPoly, int>> out;
  const RationalPoly f = to_rational(p);
  const RationalPoly fp = f.derivative();
  const RationalPoly a0 = gcd(f, fp);
  RationalPoly b = divmod(f, a0).first;
  RationalPoly c = divmod(fp, a0).first;
  RationalPoly d = c - b.derivative();
  int i = 1;
  while (!b.is_constant()) {
    const RationalPoly a = gcd(b, d);
    if (!a.is_constant()) {
      IntegerPoly fi = primitive_integer(a);
      if (fi.leading() < 0) fi = -fi;
      out.emplace_back(std::move(fi), i);
    }
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

IntegerPoly square_free_part(const IntegerPoly& p) {
  if (p.is_constant()) return p;
  IntegerPoly r = IntegerPoly::constant(1);
  for (const auto& [f, m] : square_free_decomposition(p)) r = r * f;
  return primitive_part(r);
}

namespace {
Rational rpow(const Rational& b, long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}
}  // namespace

Rational resultant(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const long na = a.degree(), nb = b.degree();
  if (nb == 0) return rpow(b.leading(), na);
  if (na == 0) return rpow(a.leading(), nb);
  if (na < nb) {
    const Rational r = resultant(b, a);
    return (na * nb) % 2 ? Rational(-r) : r;
  }
  const RationalPoly r = divmod(a, b).second;
  if (r.is_zero()) return 0;
  Rational res = rpow(b.leading(), na - r.degree()) * resultant(b, r);
  if ((na * nb) % 2) res = -res;
  return res;
}

Rational discriminant(const RationalPoly& p) {
  const long n = p.degree();
  if (n < 1) throw std::invalid_argument("discriminant: degree must be at least 1");
  if (n == 1) return 1;
  Rational d = resultant(p, p.derivative()) / p.leading();
  if ((n * (n - 1) / 2) % 2) d = -d;
  return d;
}

RationalPoly discriminant_in_parameter(const RationalPoly& p0, const RationalPoly& p1) {
  const int n = std::max(p0.degree(), p1.degree());
  if (n < 1) throw std::invalid_argument("discriminant_in_parameter: constant pencil");
  const Rational lead0 = p0[static_cast<size_t>(n)], lead1 = p1[static_cast<size_t>(n)];
  const int needed = 2 * n - 1;
  std::vector<Rational> ts, vs;
  for (long t = 0; static_cast<int>(ts.size()) < needed; ++t) {
    const Rational tq(t);
    if (lead0 + tq * lead1 == 0) continue;
    ts.push_back(tq);
    vs.push_back(discriminant(p0 + tq * p1));
  }
  // Lagrange interpolation.
  RationalPoly result;
  for (size_t i = 0; i < ts.size(); ++i) {
    RationalPoly basis = RationalPoly::constant(1);
    Rational denom = 1;
    for (size_t j = 0; j < ts.size(); ++j) {
      if (j == i) continue;
      basis = basis * RationalPoly({Rational(1), Rational(-ts[j])});
      denom *= ts[i] - ts[j];
    }
    result = result + Rational(vs[i] / denom) * basis;
  }
  return result;
}

std::vector<RationalPoly> sturm_sequence(const RationalPoly& p) {
  std::vector<RationalPoly> seq{p};
  if (p.is_constant()) return seq;
  seq.push_back(p.derivative());
  while (!seq.back().is_constant()) {
    RationalPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    const Rational scale = Rational(-1) / abs(r.leading());
    seq.push_back(scale * r);
  }
  return seq;
}

namespace {
int variations_of_signs(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<RationalPoly>& seq, const Rational& x) {
  std::vector<int> s;
  for (const auto& q : seq) s.push_back(sgn(q(x)));
  return variations_of_signs(s);
}
}  // namespace

int sturm_count(const std::vector<RationalPoly>& seq, const Rational& a, const Rational& b) {
  return variations_at(seq, a) - variations_at(seq, b);
}

int sturm_count_all(const std::vector<RationalPoly>& seq) {
  std::vector<int> minus, plus;
  for (const auto& q : seq) {
    const int s = sgn(q.leading());
    plus.push_back(s);
    minus.push_back(q.degree() % 2 ? -s : s);
  }
  return variations_of_signs(minus) - variations_of_signs(plus);
}

int sign_variations(const std::vector<Rational>& coeffs) {
  std::vector<int> s;
  for (const auto& c : coeffs) s.push_back(sgn(c));
  return variations_of_signs(s);
}

Rational root_bound(const RationalPoly& p) {
  if (p.degree() < 1) return 1;
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p[static_cast<size_t>(i)] / p.leading())));
  Rational b = 1;
  while (b <= m + 1) b *= 2;
  return b;
}

}  // namespace scb
