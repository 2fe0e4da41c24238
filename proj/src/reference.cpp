#include "scb/reference.hpp"

namespace scb {

std::vector<ReferenceValue> reference_values() {
  std::vector<ReferenceValue> v;
  auto exact = [&](std::string m, std::string approx, Rational q, Mechanism mech, int n) {
    ReferenceValue r;
    r.method = std::move(m);
    r.approx = std::move(approx);
    r.exact = q;
    r.mechanism = mech;
    r.simple_root_n = n;
    v.push_back(std::move(r));
  };
  auto algebraic = [&](std::string m, std::string approx, std::vector<std::string> coeffs, RootSelector sel,
                       Mechanism mech, int n) {
    ReferenceValue r;
    r.method = std::move(m);
    r.approx = std::move(approx);
    r.poly = integer_poly_from_strings(coeffs);
    r.selector = sel;
    r.mechanism = mech;
    r.simple_root_n = n;
    v.push_back(std::move(r));
  };

  ReferenceValue bdf1;
  bdf1.method = "bdf1";
  bdf1.approx = "inf";
  bdf1.mechanism = Mechanism::Unbounded;
  v.push_back(bdf1);
  exact("bdf2", "0.5", rational_of(1, 2), Mechanism::Crossover, 0);
  algebraic("bdf3", "0.831264155297", {"5184", "-539352", "4277340", "-7093698", "3248425"}, RootSelector::Smallest,
            Mechanism::SimpleRoot, 6);
  algebraic("bdf4", "0.486220284043", {"147456", "-4065024", "97751296", "-178921248", "146499984", "-39945535"},
            RootSelector::Unique, Mechanism::Crossover, 0);
  algebraic("bdf5", "0.304213712525",
            {
        "9183300480000000000",
        "85812841152000000000",
        "11922800956027200000000",
        "-158236459797931200000000",
        "1300372831455671124000000",
        "-3469598208824475416400000",
        "5222219230639370911710000",
        "-4938342912266137089480000",
        "2829602902356809601352800",
        "-897140360120473365541380",
        "113406532200497326720157"},
            RootSelector::SmallerOfTwo, Mechanism::Crossover, 0);
  algebraic("bdf6", "0.131359487166",
            {
        "301499153838045275528311603200000000",
        "122639585534504839818945201438720000000",
        "384963168041618344234237602954215424000000",
        "27549570033081885223128023207444584857600000",
        "688321830171904949334479202088109368934400000",
        "-3841469418723966761157769983211793789485056000",
        "114843588487750902323103668249803599786305126400",
        "-1006269459507863531788997342497299304467812843520",
        "5587246198359348966734174906666273788289332150272",
        "-17429944795858965010882996868073155329514839408640",
        "35959114141443095864886240750517884787497897431040",
        "-53357827225132542443145327442029250536098863687680",
        "58779078470720235677143648519968524504336318905600",
        "-48117131040654192740877887801688549303578668712064",
        "28809153195856173726312967696976168633917662024240",
        "-12158530101520566099221248226347019432756062262240",
        "3383327891741061214240426918034255832010259451480",
        "-541370800878125712591610585145194659522378896880",
        "33328092641186254550760247661168148768262937067"},
            RootSelector::SmallerOfTwo, Mechanism::Crossover, 0);

  exact("ab1", "1", Rational(1), Mechanism::SimpleRoot, 2);
  exact("ab2", "0.444444444444", rational_of(4, 9), Mechanism::SimpleRoot, 2);
  exact("ab3", "0.158790170132", rational_of(84, 529), Mechanism::SimpleRoot, 2);
  ReferenceValue ab4;
  ab4.method = "ab4";
  ab4.approx = "none";
  ab4.mechanism = Mechanism::NonePositive;
  v.push_back(ab4);
  return v;
}

std::optional<ReferenceValue> reference_value(const std::string& method) {
  for (auto& r : reference_values())
    if (r.method == method) return r;
  return std::nullopt;
}

ReferenceCheck compare_with_reference(const GammaSupResult& r, const ReferenceValue& ref) {
  ReferenceCheck c;
  if (r.mechanism != ref.mechanism) {
    c.detail = "mechanism " + to_string(r.mechanism) + ", expected " + to_string(ref.mechanism);
    return c;
  }
  if (ref.mechanism == Mechanism::SimpleRoot && r.simple_root_n != ref.simple_root_n) {
    c.detail = "simple root at n = " + std::to_string(r.simple_root_n) + ", expected " +
               std::to_string(ref.simple_root_n);
    return c;
  }
  if (ref.mechanism == Mechanism::Unbounded || ref.mechanism == Mechanism::NonePositive) {
    c.passed = r.certified;
    c.detail = to_string(r.mechanism);
    return c;
  }
  if (!r.certified) {
    c.detail = "enclosure not certified";
    return c;
  }
  if (ref.exact) {
    c.passed = r.lo <= *ref.exact && *ref.exact <= r.hi;
    c.detail = c.passed ? "contains " + to_string(*ref.exact) : "does not contain " + to_string(*ref.exact);
    return c;
  }
  c.poly_check = verify_against_poly(r, *ref.poly, ref.selector);
  c.passed = *c.poly_check == PolyCheck::Confirmed;
  c.detail = to_string(*c.poly_check) + " (" + to_string(ref.selector) + ")";
  return c;
}

}  // namespace scb
