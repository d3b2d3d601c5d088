#include "srw/rational.hpp"

#include <charconv>
#include <cctype>

#include "srw/error.hpp"

namespace srw {

namespace {

Rational parse_decimal(std::string_view text) {
  std::string s(text);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false, seen_point = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    long e = 0;
    const char* first = s.data() + pos + 1;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), e);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw Error(ErrorCode::ParseError, "bad exponent in '" + s + "'");
    exponent += e;
    pos = s.size();
  }
  if (pos != s.size()) throw Error(ErrorCode::ParseError, "trailing characters in '" + s + "'");

  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale, 1);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto p = text.substr(0, slash), q = text.substr(slash + 1);
  if (!is_int(p) || !is_int(q))
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  if (p[0] == '+') p.remove_prefix(1);
  if (q[0] == '+') q.remove_prefix(1);
  mpz_class num{std::string(p), 10}, den{std::string(q), 10};
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rational_from_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error(ErrorCode::ParseError, "cannot format number");
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace srw
