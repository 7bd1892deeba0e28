#include "heis/pharm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "heis/errors.hpp"
#include "heis/report.hpp"
#include "heis/sublap.hpp"

namespace heis {
namespace {

template <class T>
T ipow(const T& x, int n) {
  T r = x * 0.0 + 1.0;
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, const std::string& context) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw SpecError("field spec: bad number '" + s + "' in " + context);
  }
  return v;
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    const bool exponent_sign = sep == '+' && cur.size() >= 2 &&
                               (cur.back() == 'e' || cur.back() == 'E') &&
                               std::isdigit(static_cast<unsigned char>(cur[cur.size() - 2]));
    if (ch == sep && depth == 0 && !exponent_sign) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string num(double v) { return fmt::format("{}", v); }

std::vector<PolyTerm> parse_poly(const std::string& body) {
  std::vector<PolyTerm> terms;
  for (const auto& raw : split_top(body, '+')) {
    const std::string term = trim(raw);
    if (term.empty()) throw SpecError("field spec: empty polynomial term in '" + body + "'");
    PolyTerm m;
    bool any = false;
    for (const auto& fraw : split_top(term, '*')) {
      std::string f = trim(fraw);
      if (f.empty()) throw SpecError("field spec: empty factor in '" + term + "'");
      std::string var = f;
      int power = 1;
      if (const auto caret = f.find('^'); caret != std::string::npos) {
        var = trim(f.substr(0, caret));
        const double pw = parse_number(f.substr(caret + 1), term);
        if (pw < 0 || pw != std::floor(pw) || pw > 3) {
          throw SpecError("field spec: exponent must be an integer in [0, 3] in '" + term + "'");
        }
        power = static_cast<int>(pw);
      }
      if (var == "x1") {
        m.e1 += power;
      } else if (var == "x2") {
        m.e2 += power;
      } else if (var == "t") {
        m.et += power;
      } else if (var == "-x1" || var == "-x2" || var == "-t") {
        m.coeff = -m.coeff;
        (var == "-x1" ? m.e1 : var == "-x2" ? m.e2 : m.et) += power;
      } else {
        if (f.find('^') != std::string::npos) {
          throw SpecError("field spec: unknown variable '" + var + "'");
        }
        m.coeff *= parse_number(f, term);
      }
      any = true;
    }
    if (!any) throw SpecError("field spec: empty polynomial term");
    terms.push_back(m);
  }
  return terms;
}

std::string poly_to_string(const std::vector<PolyTerm>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& m = terms[i];
    if (i) out += "+";
    out += num(m.coeff);
    auto var = [&](const char* name, int e) {
      if (e == 0) return;
      out += std::string("*") + name;
      if (e > 1) out += "^" + std::to_string(e);
    };
    var("x1", m.e1);
    var("x2", m.e2);
    var("t", m.et);
  }
  return out;
}

// "name(a,b,c;BASE)" → ({a,b,c}, BASE)
std::pair<std::vector<double>, std::string> parse_call(const std::string& text,
                                                       const std::string& name,
                                                       std::size_t arity) {
  const std::string body = text.substr(name.size() + 1, text.size() - name.size() - 2);
  const auto semi = split_top(body, ';');
  if (semi.size() != 2) throw SpecError("field spec: expected '" + name + "(args;base)'");
  const auto args = split_top(semi[0], ',');
  if (args.size() != arity) {
    throw SpecError(fmt::format("field spec: {} takes {} numeric arguments", name, arity));
  }
  std::vector<double> vals;
  for (const auto& a : args) vals.push_back(parse_number(a, text));
  return {vals, trim(semi[1])};
}

void validate(const FieldSpec& s) {
  switch (s.kind) {
    case FieldSpec::Kind::AffinePositive:
      if (!(s.c > 0.0)) throw SpecError("field spec: affine-positive needs c > 0");
      break;
    case FieldSpec::Kind::GaugePower:
      if (!(s.alpha > 0.0)) throw SpecError("field spec: gauge-power needs alpha > 0");
      break;
    case FieldSpec::Kind::BumpModulated:
      if (!(s.width > 0.0)) throw SpecError("field spec: bump needs width > 0");
      [[fallthrough]];
    case FieldSpec::Kind::Translated:
      if (!s.base) throw SpecError("field spec: missing base field");
      if (!s.point.finite()) throw SpecError("field spec: non-finite point");
      break;
    case FieldSpec::Kind::Polynomial:
      if (s.terms.empty()) throw SpecError("field spec: empty polynomial");
      for (const auto& m : s.terms) {
        if (!std::isfinite(m.coeff) || m.e1 < 0 || m.e2 < 0 || m.et < 0) {
          throw SpecError("field spec: invalid polynomial term");
        }
      }
      break;
    default:
      break;
  }
}

}  // namespace

FieldSpec FieldSpec::x1() { return FieldSpec{}; }

FieldSpec FieldSpec::x2() {
  FieldSpec s;
  s.kind = Kind::CoordinateX2;
  return s;
}

FieldSpec FieldSpec::t() {
  FieldSpec s;
  s.kind = Kind::CoordinateT;
  return s;
}

FieldSpec FieldSpec::affine_positive(double c) {
  FieldSpec s;
  s.kind = Kind::AffinePositive;
  s.c = c;
  validate(s);
  return s;
}

FieldSpec FieldSpec::gauge_power(double alpha) {
  FieldSpec s;
  s.kind = Kind::GaugePower;
  s.alpha = alpha;
  validate(s);
  return s;
}

FieldSpec FieldSpec::polynomial(std::vector<PolyTerm> terms) {
  FieldSpec s;
  s.kind = Kind::Polynomial;
  s.terms = std::move(terms);
  validate(s);
  return s;
}

FieldSpec FieldSpec::translated(FieldSpec base, const Point& p) {
  FieldSpec s;
  s.kind = Kind::Translated;
  s.point = p;
  s.base = std::make_shared<const FieldSpec>(std::move(base));
  validate(s);
  return s;
}

FieldSpec FieldSpec::bump_modulated(FieldSpec base, const Point& center, double width) {
  FieldSpec s;
  s.kind = Kind::BumpModulated;
  s.point = center;
  s.width = width;
  s.base = std::make_shared<const FieldSpec>(std::move(base));
  validate(s);
  return s;
}

FieldSpec FieldSpec::parse(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "x1" || text == "coordinate-x1") return x1();
  if (text == "x2" || text == "coordinate-x2") return x2();
  if (text == "t" || text == "coordinate-t") return t();
  auto starts = [&](const std::string& prefix) { return text.rfind(prefix, 0) == 0; };
  if (starts("affine-positive:")) {
    return affine_positive(parse_number(text.substr(16), text));
  }
  if (starts("gauge-power:")) return gauge_power(parse_number(text.substr(12), text));
  if (starts("poly:")) return polynomial(parse_poly(text.substr(5)));
  if (starts("translated(") && text.back() == ')') {
    auto [v, base] = parse_call(text, "translated", 3);
    return translated(parse(base), {v[0], v[1], v[2]});
  }
  if (starts("bump(") && text.back() == ')') {
    auto [v, base] = parse_call(text, "bump", 4);
    return bump_modulated(parse(base), {v[0], v[1], v[2]}, v[3]);
  }
  throw SpecError("field spec: unrecognized '" + text + "'");
}

std::string FieldSpec::to_string() const {
  switch (kind) {
    case Kind::CoordinateX1: return "x1";
    case Kind::CoordinateX2: return "x2";
    case Kind::CoordinateT: return "t";
    case Kind::AffinePositive: return "affine-positive:" + num(c);
    case Kind::GaugePower: return "gauge-power:" + num(alpha);
    case Kind::Polynomial: return "poly:" + poly_to_string(terms);
    case Kind::Translated:
      return fmt::format("translated({},{},{};{})", num(point.x1), num(point.x2), num(point.t),
                         base->to_string());
    case Kind::BumpModulated:
      return fmt::format("bump({},{},{},{};{})", num(point.x1), num(point.x2), num(point.t),
                         num(width), base->to_string());
  }
  return "unknown";
}

ScalarField make_field(const FieldSpec& spec) {
  validate(spec);
  const std::string label = spec.to_string();
  switch (spec.kind) {
    case FieldSpec::Kind::CoordinateX1:
      return ScalarField::analytic(label, Provenance::Polynomial,
                                   [](auto x1, auto, auto) { return x1; });
    case FieldSpec::Kind::CoordinateX2:
      return ScalarField::analytic(label, Provenance::Polynomial,
                                   [](auto, auto x2, auto) { return x2; });
    case FieldSpec::Kind::CoordinateT:
      return ScalarField::analytic(label, Provenance::Polynomial,
                                   [](auto, auto, auto t) { return t; });
    case FieldSpec::Kind::AffinePositive: {
      const double c = spec.c;
      return ScalarField::analytic(label, Provenance::Polynomial,
                                   [c](auto x1, auto, auto) { return x1 + c; });
    }
    case FieldSpec::Kind::GaugePower: {
      const double alpha = spec.alpha;
      return ScalarField::analytic(label, Provenance::ClosedForm, [alpha](auto x1, auto x2, auto t) {
        using std::pow;
        const auto q = x1 * x1 + x2 * x2;
        return pow(q * q + t * t, -alpha);
      });
    }
    case FieldSpec::Kind::Polynomial: {
      const auto terms = spec.terms;
      return ScalarField::analytic(label, Provenance::Polynomial, [terms](auto x1, auto x2, auto t) {
        auto acc = x1 * 0.0;
        for (const auto& m : terms) {
          acc = acc + ipow(x1, m.e1) * ipow(x2, m.e2) * ipow(t, m.et) * m.coeff;
        }
        return acc;
      });
    }
    case FieldSpec::Kind::Translated: {
      const ScalarField base = make_field(*spec.base);
      ScalarField moved = base.left_translated(spec.point);
      return ScalarField(label, Provenance::ClosedForm,
                         [moved](const Point& p) { return moved(p); },
                         [moved](const Point& p) { return moved.jet(p); });
    }
    case FieldSpec::Kind::BumpModulated: {
      const ScalarField base = make_field(*spec.base);
      const Point c = spec.point;
      const double w2 = spec.width * spec.width;
      auto modulation = [c, w2](auto x1, auto x2, auto t) {
        using std::exp;
        const auto d1 = x1 - c.x1;
        const auto d2 = x2 - c.x2;
        const auto dt = t - c.t;
        return 1.0 + 0.5 * exp(-(d1 * d1 + d2 * d2 + dt * dt) / w2);
      };
      return ScalarField(
          label, Provenance::ClosedForm,
          [base, modulation](const Point& p) { return base(p) * modulation(p.x1, p.x2, p.t); },
          [base, modulation](const Point& p) {
            return base.jet(p) * modulation(Jet::variable(0, p.x1), Jet::variable(1, p.x2),
                                            Jet::variable(2, p.t));
          });
    }
  }
  throw SpecError("field spec: unknown kind");
}

std::vector<Point> singularities(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldSpec::Kind::GaugePower:
      return {Point{}};
    case FieldSpec::Kind::Translated: {
      std::vector<Point> out;
      for (const Point& q : singularities(*spec.base)) out.push_back(group_mul(group_inv(spec.point), q));
      return out;
    }
    case FieldSpec::Kind::BumpModulated:
      return singularities(*spec.base);
    default:
      return {};
  }
}

double gauge_residual(double alpha, const std::vector<Point>& grid) {
  const ScalarField u = make_field(FieldSpec::gauge_power(alpha));
  double sup_lap = 0.0;
  double sup_u = 0.0;
  for (const auto& p : grid) {
    sup_lap = std::max(sup_lap, std::abs(sublap(u, p)));
    sup_u = std::max(sup_u, std::abs(u(p)));
  }
  return sup_u > 0.0 ? sup_lap / sup_u : sup_lap;
}

SamplingSpec default_gauge_grid() {
  SamplingSpec g = SamplingSpec::cc_ball(5.0, 400, 0x5EED0001ULL);
  g.r_min = 0.5;
  return g;
}

GaugeCalibration calibrate_gauge_exponent(std::pair<double, double> search,
                                          const SamplingSpec& grid, double floor,
                                          int curve_points) {
  auto [a, b] = search;
  if (!(a > 0.0 && b > a)) throw DomainError("calibrate_gauge_exponent: need 0 < lo < hi");
  const std::vector<Point> pts = sample(grid);
  for (const auto& p : pts) {
    if (p.s() == 0.0 && p.t == 0.0) {
      throw PreconditionError("calibrate_gauge_exponent: grid contains the origin");
    }
  }
  GaugeCalibration cal;
  cal.floor = floor;
  auto f = [&](double alpha) {
    ++cal.evaluations;
    return gauge_residual(alpha, pts);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 <= f2) {
    cal.alpha = x1;
    cal.residual = f1;
  } else {
    cal.alpha = x2;
    cal.residual = f2;
  }
  cal.admitted = cal.residual <= floor;
  for (int i = 0; i < curve_points; ++i) {
    const double alpha =
        search.first + (search.second - search.first) * i / std::max(1, curve_points - 1);
    cal.curve.emplace_back(alpha, gauge_residual(alpha, pts));
  }
  return cal;
}

SamplingSpec catalog_check_grid() {
  SamplingSpec g = SamplingSpec::cc_ball(5.0, 300, 0x5EED0002ULL);
  g.r_min = 0.5;
  return g;
}

const Catalog& catalog() {
  static const Catalog cat = [] {
    Catalog c;
    c.version = kCatalogVersion;
    c.gauge = calibrate_gauge_exponent({0.1, 1.5}, default_gauge_grid());
    auto add = [&c](FieldSpec s, bool ph) { c.entries.push_back({std::move(s), ph}); };
    add(FieldSpec::x1(), true);
    add(FieldSpec::x2(), true);
    add(FieldSpec::t(), true);
    for (double k : {1.0, 2.0, 8.0}) add(FieldSpec::affine_positive(k), true);
    if (c.gauge.admitted) {
      const FieldSpec gauge = FieldSpec::gauge_power(c.gauge.alpha);
      add(gauge, true);
      add(FieldSpec::translated(gauge, {10.0, 0.0, 0.0}), true);
      add(FieldSpec::translated(gauge, {0.0, 0.0, 40.0}), true);
      add(FieldSpec::translated(gauge, {6.0, -8.0, 60.0}), true);
    }
    add(FieldSpec::bump_modulated(FieldSpec::affine_positive(20.0), {0.3, -0.2, 0.1}, 0.8), false);
    add(FieldSpec::bump_modulated(FieldSpec::translated(FieldSpec::gauge_power(c.gauge.alpha),
                                                        {10.0, 0.0, 0.0}),
                                  {1.0, 1.0, 0.5}, 1.5),
        false);
    add(FieldSpec::polynomial({{1.0, 1, 1, 0}}), true);
    add(FieldSpec::polynomial({{1.0, 3, 0, 0}, {-3.0, 1, 2, 0}}), true);
    add(FieldSpec::polynomial({{1.0, 2, 0, 0}, {1.0, 0, 2, 0}}), false);
    return c;
  }();
  return cat;
}

}  // namespace heis
