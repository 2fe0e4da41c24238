#include "scb/methods.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace scb {

std::string to_string(Family f) {
  switch (f) {
    case Family::AB: return "AB";
    case Family::BDF: return "BDF";
    case Family::EBDF: return "EBDF";
    case Family::Custom: return "Custom";
  }
  return "Custom";
}

Rational Method::a_at(int j) const {
  return (j >= 1 && j <= k) ? a[static_cast<size_t>(j - 1)] : Rational(0);
}

Rational Method::b_at(int j) const {
  return (j >= 0 && j <= k) ? b[static_cast<size_t>(j)] : Rational(0);
}

int Method::last_nonzero_b() const {
  for (int j = k; j >= 0; --j)
    if (b_at(j) != 0) return j;
  return -1;
}

Integer Method::denominator() const {
  std::vector<Rational> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return lcm_of_denominators(all);
}

namespace {

Integer binomial(long n, long r) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

// tau_1..tau_k of the printed extrapolated BDF starting values.
std::vector<Rational> ebdf_tau(int k) {
  switch (k) {
    case 3: return {rational_of(18, 11), rational_of(126, 121), rational_of(1212, 1331)};
    case 4: return {rational_of(48, 25), rational_of(504, 625), rational_of(10992, 15625), rational_of(366516, 390625)};
    case 5:
      return {rational_of(300, 137), rational_of(7800, 18769), rational_of(1271400, 2571353), rational_of(415574100, 352275361),
              rational_of(Integer("64978409160"), Integer("48261724457"))};
    default: throw std::invalid_argument("extrapolated BDF is available for k = 3, 4, 5");
  }
}

}  // namespace

Method make_bdf(int k) {
  if (k < 1 || k > 6) throw std::invalid_argument("BDF is available for k = 1..6");
  // alpha_i = sum_{j=max(1,i)}^k (1/j) (-1)^i C(j, i)
  std::vector<Rational> alpha(static_cast<size_t>(k) + 1, Rational(0));
  for (int i = 0; i <= k; ++i) {
    for (int j = std::max(1, i); j <= k; ++j) {
      const Rational t = rational_of(binomial(j, i), j);
      alpha[static_cast<size_t>(i)] += (i % 2 ? -t : t);
    }
  }
  Method m;
  m.name = "bdf" + std::to_string(k);
  m.family = Family::BDF;
  m.k = k;
  for (int i = 1; i <= k; ++i) m.a.push_back(-alpha[static_cast<size_t>(i)] / alpha[0]);
  m.b.assign(static_cast<size_t>(k) + 1, Rational(0));
  m.b[0] = 1 / alpha[0];
  return m;
}

Method make_ab(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("Adams-Bashforth is available for k = 1..4");
  // gamma_i of the backward-difference form, then expansion to ordinates.
  std::vector<Rational> g(static_cast<size_t>(k), Rational(0));
  for (int i = 0; i < k; ++i) {
    Rational s = 0;
    for (int m = 0; m < i; ++m) s += g[static_cast<size_t>(m)] / (i + 1 - m);
    g[static_cast<size_t>(i)] = 1 - s;
  }
  Method m;
  m.name = "ab" + std::to_string(k);
  m.family = Family::AB;
  m.k = k;
  m.a.assign(static_cast<size_t>(k), Rational(0));
  m.a[0] = 1;
  m.b.assign(static_cast<size_t>(k) + 1, Rational(0));
  for (int j = 1; j <= k; ++j) {
    Rational s = 0;
    for (int i = j - 1; i <= k - 1; ++i) s += g[static_cast<size_t>(i)] * Rational(binomial(i, j - 1));
    m.b[static_cast<size_t>(j)] = (j % 2 ? s : Rational(-s));
  }
  return m;
}

Method make_ebdf(int k) {
  const std::vector<Rational> tau = ebdf_tau(k);
  Method m;
  m.name = "ebdf" + std::to_string(k);
  m.family = Family::EBDF;
  m.k = k;
  m.a = make_bdf(k).a;
  m.b.assign(static_cast<size_t>(k) + 1, Rational(0));
  // tau_n = b_n + sum_{j=1}^n a_j tau_{n-j}, tau_0 = b_0 = 0.
  auto tau_at = [&](int n) { return n >= 1 ? tau[static_cast<size_t>(n - 1)] : Rational(0); };
  for (int n = 1; n <= k; ++n) {
    Rational s = 0;
    for (int j = 1; j <= n; ++j) s += m.a_at(j) * tau_at(n - j);
    m.b[static_cast<size_t>(n)] = tau_at(n) - s;
  }
  return m;
}

std::vector<std::string> catalog_names() {
  return {"ab1", "ab2", "ab3", "ab4", "bdf1", "bdf2", "bdf3", "bdf4", "bdf5", "bdf6", "ebdf3", "ebdf4", "ebdf5"};
}

Method catalog(const std::string& name) {
  auto unknown = [&]() {
    std::string list;
    for (const auto& n : catalog_names()) list += (list.empty() ? "" : ", ") + n;
    return std::invalid_argument("unknown method '" + name + "'; available: " + list);
  };
  auto parse_k = [&](size_t prefix) {
    const std::string rest = name.substr(prefix);
    if (rest.size() != 1 || !std::isdigit(static_cast<unsigned char>(rest[0]))) throw unknown();
    return rest[0] - '0';
  };
  try {
    if (name.rfind("ebdf", 0) == 0) return make_ebdf(parse_k(4));
    if (name.rfind("bdf", 0) == 0) return make_bdf(parse_k(3));
    if (name.rfind("ab", 0) == 0) return make_ab(parse_k(2));
  } catch (const std::invalid_argument&) {
    throw unknown();
  }
  throw unknown();
}

GeneratingPolys generating_polys(const Method& m) {
  std::vector<Rational> rho(static_cast<size_t>(m.k) + 1), sigma(static_cast<size_t>(m.k) + 1);
  rho[static_cast<size_t>(m.k)] = 1;
  for (int j = 1; j <= m.k; ++j) rho[static_cast<size_t>(m.k - j)] = -m.a_at(j);
  for (int j = 0; j <= m.k; ++j) sigma[static_cast<size_t>(m.k - j)] = m.b_at(j);
  return {RationalPoly(std::move(rho)), RationalPoly(std::move(sigma))};
}

Pencil char_pencil(const Method& m) {
  const auto gp = generating_polys(m);
  const Integer d = m.denominator();
  auto scaled = [&](const RationalPoly& p) {
    std::vector<Integer> c;
    for (const auto& v : p.ascending()) {
      const Rational s = v * d;
      c.push_back(s.get_num());
    }
    return IntegerPoly(std::move(c));
  };
  return {scaled(gp.rho), scaled(gp.sigma), d};
}

RationalPoly char_poly_mu(const Method& m, const Rational& gamma) {
  if (gamma < 0) throw std::invalid_argument("char_poly_mu: gamma must be non-negative");
  const Pencil p = char_pencil(m);
  RationalPoly r = to_rational(p.p0) + gamma * to_rational(p.p1);
  if (r.degree() != m.k) throw std::domain_error("char_poly_mu: leading coefficient vanishes");
  return r;
}

std::vector<AssumptionCheck> validate(const Method& m) {
  if (m.k < 1) throw std::invalid_argument("method: k must be positive");
  if (static_cast<int>(m.a.size()) != m.k || static_cast<int>(m.b.size()) != m.k + 1)
    throw std::invalid_argument("method: expected " + std::to_string(m.k) + " a-coefficients and " +
                                std::to_string(m.k + 1) + " b-coefficients");
  std::vector<AssumptionCheck> out;

  Rational sa = 0, sja = 0, sb = 0;
  for (int j = 1; j <= m.k; ++j) {
    sa += m.a_at(j);
    sja += j * m.a_at(j);
  }
  for (int j = 0; j <= m.k; ++j) sb += m.b_at(j);
  {
    AssumptionCheck c{"consistency", sa == 1 && sja == sb, ""};
    if (!c.passed)
      c.detail = "sum a_j = " + to_string(sa) + ", sum j a_j = " + to_string(sja) + ", sum b_j = " + to_string(sb);
    out.push_back(c);
  }

  const auto gp = generating_polys(m);
  {
    const RootCondition rc = root_condition(gp.rho);
    AssumptionCheck c{"zero-stability", rc != RootCondition::Violated, ""};
    if (!c.passed) {
      const auto cnt = unit_circle_count(gp.rho);
      c.detail = "rho violates the root condition (" + std::to_string(cnt.outside) + " roots outside the unit disc" +
                 (cnt.multiple_on_circle ? ", multiple root on the unit circle" : "") + ")";
    }
    out.push_back(c);
  }
  {
    AssumptionCheck c{"irreducibility", true, ""};
    if (gp.sigma.is_zero()) {
      c.passed = false;
      c.detail = "sigma is identically zero";
    } else {
      const RationalPoly g = gcd(gp.rho, gp.sigma);
      if (!g.is_constant()) {
        c.passed = false;
        c.detail = "rho and sigma share the factor " + to_string(g, "z");
      }
    }
    out.push_back(c);
  }
  {
    AssumptionCheck c{"b0-nonnegative", m.b_at(0) >= 0, ""};
    if (!c.passed) c.detail = "b_0 = " + to_string(m.b_at(0));
    out.push_back(c);
  }
  return out;
}

bool is_valid(const Method& m) {
  for (const auto& c : validate(m))
    if (!c.passed) return false;
  return true;
}

void require_valid(const Method& m) {
  std::string failed;
  for (const auto& c : validate(m)) {
    if (!c.passed) failed += (failed.empty() ? "" : "; ") + c.name + ": " + c.detail;
  }
  if (!failed.empty()) throw std::invalid_argument("method '" + m.name + "' is not admissible: " + failed);
}

int n0(const Method& m) {
  std::vector<Rational> tau(static_cast<size_t>(m.k) + 1, Rational(0));
  for (int n = 0; n <= m.k; ++n) {
    Rational t = m.b_at(n);
    for (int j = 1; j <= n; ++j) t += m.a_at(j) * tau[static_cast<size_t>(n - j)];
    tau[static_cast<size_t>(n)] = t;
    if (n >= 1 && t != 0) return n;
  }
  throw std::invalid_argument("n0: tau_1..tau_k all vanish for '" + m.name + "'");
}

Method method_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("method file: ") + e.what());
  }
  auto rationals = [&](const char* key) {
    std::vector<Rational> out;
    if (!j.contains(key) || !j[key].is_array()) throw std::invalid_argument(std::string("method file: missing '") + key + "'");
    for (const auto& v : j[key]) {
      if (v.is_string()) out.push_back(parse_rational(v.get<std::string>()));
      else if (v.is_number_integer()) out.emplace_back(Integer(std::to_string(v.get<long long>())));
      else throw std::invalid_argument(std::string("method file: '") + key + "' entries must be rational strings");
    }
    return out;
  };
  Method m;
  if (!j.contains("k") || !j["k"].is_number_integer()) throw std::invalid_argument("method file: missing integer 'k'");
  m.k = j["k"].get<int>();
  m.a = rationals("a");
  m.b = rationals("b");
  m.name = j.value("name", std::string("custom"));
  m.family = Family::Custom;
  if (m.k < 1 || static_cast<int>(m.a.size()) != m.k || static_cast<int>(m.b.size()) != m.k + 1)
    throw std::invalid_argument("method file: need k >= 1, k a-coefficients and k+1 b-coefficients");
  return m;
}

Method load_method_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open method file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return method_from_json(ss.str());
}

std::string method_to_json(const Method& m) {
  nlohmann::json j;
  j["name"] = m.name;
  j["k"] = m.k;
  j["a"] = nlohmann::json::array();
  j["b"] = nlohmann::json::array();
  for (const auto& v : m.a) j["a"].push_back(to_string(v));
  for (const auto& v : m.b) j["b"].push_back(to_string(v));
  return j.dump();
}

Method resolve_method(const std::string& name_or_path) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return catalog(name_or_path);
  if (std::filesystem::exists(name_or_path)) return load_method_file(name_or_path);
  return catalog(name_or_path);  // throws with the list of names
}

}  // namespace scb
