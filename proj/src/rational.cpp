#include "lpdec/rational.hpp"

#include <cctype>

namespace lpdec {

std::string to_fraction_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto check_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("empty integer in rational literal");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("sign without digits in rational literal");
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw std::invalid_argument("bad rational literal: " + t);
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rational(BigInt(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rational(BigInt(num), d);
}

std::string to_decimal_string(const Rational& x, int digits) {
  if (digits < 0) throw std::invalid_argument("negative digit count");
  const bool neg = x < 0;
  Rational a = neg ? Rational(-x) : x;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = numerator(a) * scale / denominator(a);  // truncates
  BigInt ip = scaled / scale;
  BigInt fp = scaled % scale;
  std::string out = (neg && scaled != 0 ? "-" : "") + ip.str();
  if (digits > 0) {
    std::string frac = fp.str();
    out += "." + std::string(digits - frac.size(), '0') + frac;
  }
  return out;
}

}  // namespace lpdec
