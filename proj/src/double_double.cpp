#include "hypasym/double_double.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace hypasym {

namespace {

constexpr double kHalfPiTail = -1.4973849048591698e-33;  // third word of pi/2

// exp(r) - 1 for |r| <= ln2/2.
DoubleDouble expm1_reduced(const DoubleDouble& x) {
  DoubleDouble r = ldexp(x, -9);
  DoubleDouble s = r;
  DoubleDouble t = r;
  for (int i = 2; i < 30; ++i) {
    t = t * r / static_cast<double>(i);
    s += t;
    if (std::abs(t.hi()) <= 1e-35 * std::abs(s.hi())) break;
  }
  for (int i = 0; i < 9; ++i) s = s * (s + 2.0);
  return s;
}

void sincos_taylor(const DoubleDouble& r, DoubleDouble& s, DoubleDouble& c) {
  DoubleDouble r2 = r * r;
  s = r;
  DoubleDouble t = r;
  for (int i = 1; i < 40; ++i) {
    t = -t * r2 / static_cast<double>((2 * i) * (2 * i + 1));
    s += t;
    if (std::abs(t.hi()) <= 1e-35 * std::abs(r.hi())) break;
  }
  c = 1.0;
  t = 1.0;
  for (int i = 1; i < 40; ++i) {
    t = -t * r2 / static_cast<double>((2 * i - 1) * (2 * i));
    c += t;
    if (std::abs(t.hi()) <= 1e-35) break;
  }
}

DoubleDouble pow10(int n) {
  DoubleDouble r = pow(DoubleDouble(10.0), n < 0 ? -n : n);
  return n < 0 ? 1.0 / r : r;
}

}  // namespace

DoubleDouble DoubleDouble::parse(std::string_view text) {
  std::size_t i = 0;
  auto bad = [&]() { return std::invalid_argument("not a number: '" + std::string(text) + "'"); };
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  DoubleDouble mant = 0.0;
  int digits = 0;
  int exp10 = 0;
  bool any = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.') {
      if (dot) throw bad();
      dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) break;
    any = true;
    if (digits < 34) {
      mant = mant * 10.0 + static_cast<double>(ch - '0');
      if (mant.hi() != 0.0) ++digits;
      if (dot) --exp10;
    } else if (!dot) {
      ++exp10;
    }
  }
  if (!any) throw bad();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
    int e = 0;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      if (e < 100000) e = e * 10 + (text[i] - '0');
    }
    exp10 += eneg ? -e : e;
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw bad();
  DoubleDouble v = exp10 == 0 ? mant : (exp10 > 0 ? mant * pow10(exp10) : mant / pow10(-exp10));
  return neg ? -v : v;
}

DoubleDouble floor(const DoubleDouble& x) {
  double h = std::floor(x.hi());
  if (h == x.hi()) return DoubleDouble::from_sum(h, std::floor(x.lo()));
  return DoubleDouble(h);
}

DoubleDouble round(const DoubleDouble& x) { return floor(x + 0.5); }

DoubleDouble sqrt(const DoubleDouble& x) {
  if (x.hi() == 0.0) return 0.0;
  if (x.hi() < 0.0) return std::numeric_limits<double>::quiet_NaN();
  double a = std::sqrt(x.hi());
  double e;
  double a2 = detail::two_prod(a, a, e);
  DoubleDouble diff = x - DoubleDouble::raw(a2, e);
  return DoubleDouble::from_sum(a, diff.hi() / (2.0 * a));
}

DoubleDouble exp(const DoubleDouble& x) {
  if (x.hi() > 709.78) return std::numeric_limits<double>::infinity();
  if (x.hi() < -745.2) return 0.0;
  double k = std::nearbyint(x.hi() / dd_const::ln2.hi());
  DoubleDouble r = x - dd_const::ln2 * k;
  DoubleDouble s = expm1_reduced(r) + 1.0;
  return ldexp(s, static_cast<int>(k));
}

DoubleDouble expm1(const DoubleDouble& x) {
  if (std::abs(x.hi()) <= 0.5 * dd_const::ln2.hi()) return expm1_reduced(x);
  return exp(x) - 1.0;
}

DoubleDouble log(const DoubleDouble& x) {
  if (x.hi() == 0.0) return -std::numeric_limits<double>::infinity();
  if (x.hi() < 0.0 || std::isnan(x.hi())) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(x.hi())) return x;
  DoubleDouble y = std::log(x.hi());
  y = y + x * exp(-y) - 1.0;
  return y;
}

DoubleDouble log1p(const DoubleDouble& x) {
  if (std::abs(x.hi()) < 0.3) {
    DoubleDouble w = x / (2.0 + x);
    DoubleDouble w2 = w * w;
    DoubleDouble s = w;
    DoubleDouble p = w;
    for (int k = 1; k < 60; ++k) {
      p *= w2;
      DoubleDouble t = p / static_cast<double>(2 * k + 1);
      s += t;
      if (std::abs(t.hi()) <= 1e-35 * std::abs(s.hi())) break;
    }
    return ldexp(s, 1);
  }
  return log(1.0 + x);
}

void sincos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c) {
  if (!isfinite(x)) {
    s = c = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double k = std::nearbyint(x.hi() / dd_const::half_pi.hi());
  double e1, e2;
  double p1 = detail::two_prod(k, dd_const::half_pi.hi(), e1);
  double p2 = detail::two_prod(k, dd_const::half_pi.lo(), e2);
  DoubleDouble r = x - DoubleDouble::from_sum(p1, e1);
  r -= DoubleDouble::from_sum(p2, e2);
  r -= k * kHalfPiTail;
  DoubleDouble sr, cr;
  sincos_taylor(r, sr, cr);
  long q = static_cast<long>(std::fmod(k, 4.0));
  if (q < 0) q += 4;
  switch (q) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

DoubleDouble sin(const DoubleDouble& x) {
  DoubleDouble s, c;
  sincos(x, s, c);
  return s;
}

DoubleDouble cos(const DoubleDouble& x) {
  DoubleDouble s, c;
  sincos(x, s, c);
  return c;
}

DoubleDouble atan2(const DoubleDouble& y, const DoubleDouble& x) {
  if (x.hi() == 0.0) {
    if (y.hi() == 0.0) return 0.0;
    return y.hi() > 0.0 ? dd_const::half_pi : -dd_const::half_pi;
  }
  if (y.hi() == 0.0) return x.hi() > 0.0 ? DoubleDouble(0.0) : dd_const::pi;
  DoubleDouble rad = sqrt(x * x + y * y);
  DoubleDouble xx = x / rad;
  DoubleDouble yy = y / rad;
  DoubleDouble z = std::atan2(y.hi(), x.hi());
  DoubleDouble s, c;
  sincos(z, s, c);
  if (std::abs(xx.hi()) > std::abs(yy.hi())) {
    z += (yy - s) / c;
  } else {
    z -= (xx - c) / s;
  }
  return z;
}

DoubleDouble atan(const DoubleDouble& x) { return atan2(x, DoubleDouble(1.0)); }

DoubleDouble acosh(const DoubleDouble& x) {
  if (x < 1.0) return std::numeric_limits<double>::quiet_NaN();
  return log(x + sqrt((x - 1.0) * (x + 1.0)));
}

DoubleDouble pow(const DoubleDouble& x, const DoubleDouble& y) { return exp(y * log(x)); }

DoubleDouble pow(const DoubleDouble& x, int n) {
  if (n == 0) return 1.0;
  unsigned m = static_cast<unsigned>(n < 0 ? -n : n);
  DoubleDouble base = x;
  DoubleDouble r = 1.0;
  while (m) {
    if (m & 1u) r *= base;
    m >>= 1;
    if (m) base = base * base;
  }
  return n < 0 ? 1.0 / r : r;
}

std::string to_string(const DoubleDouble& x, int digits) {
  if (!isfinite(x)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x.hi());
    return buf;
  }
  if (x.hi() == 0.0) return "0";
  if (digits < 1) digits = 1;
  if (digits > 32) digits = 32;
  std::string out;
  DoubleDouble v = abs(x);
  if (x.hi() < 0.0) out += '-';
  int e = static_cast<int>(std::floor(std::log10(v.hi())));
  DoubleDouble y = e >= 0 ? v / pow10(e) : v * pow10(-e);
  if (y >= 10.0) {
    y /= 10.0;
    ++e;
  } else if (y < 1.0) {
    y *= 10.0;
    --e;
  }
  std::string ds;
  for (int i = 0; i <= digits; ++i) {
    int d = static_cast<int>(std::floor(y.hi()));
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    ds += static_cast<char>('0' + d);
    y = (y - static_cast<double>(d)) * 10.0;
  }
  // Round on the extra digit.
  bool up = ds.back() >= '5';
  ds.pop_back();
  for (int i = digits - 1; up && i >= 0; --i) {
    if (ds[i] == '9') {
      ds[i] = '0';
    } else {
      ++ds[i];
      up = false;
    }
  }
  if (up) {
    ds.insert(ds.begin(), '1');
    ds.pop_back();
    ++e;
  }
  out += ds[0];
  if (digits > 1) {
    out += '.';
    out += ds.substr(1);
  }
  out += 'e';
  out += std::to_string(e);
  return out;
}

}  // namespace hypasym
