#include "tpath/rational.hpp"

#include <cassert>
#include <stdexcept>

namespace tpath {

static bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

static void bad(const std::string& text) {
  throw std::invalid_argument("not a rational: '" + text + "'");
}

Rat parse_rat(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) bad(text);

  Rat value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    if (dot != std::string::npos) bad(text);
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    value = Rat(BigInt(num), d);
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) bad(text);
    if (!ip.empty() && !all_digits(ip)) bad(text);
    if (!fp.empty() && !all_digits(fp)) bad(text);
    BigInt num = ip.empty() ? BigInt(0) : BigInt(ip);
    BigInt den = 1;
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    value = Rat(num, den);
  } else {
    if (!all_digits(s)) bad(text);
    value = Rat(BigInt(s));
  }
  return neg ? Rat(-value) : value;
}

std::string rat_str(const Rat& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  assert(den > 0);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double rat_double(const Rat& r) { return r.convert_to<double>(); }

int rat_sign(const Rat& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

}
