#include "calat/scalar.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <system_error>

namespace calat::detail {

std::string double_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string double_decimal(double v, int digits) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string rational_decimal(const Rational& v, int digits) {
  // Enough binary precision for the requested decimal digits plus guard bits.
  mpf_class f(v, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  char* out = nullptr;
  gmp_asprintf(&out, "%.*Fg", digits, f.get_mpf_t());
  std::string s(out);
  std::free(out);
  return s;
}

Rational rational_parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty scalar text");
  // mpq_class accepts "p" and "p/q" directly.
  const bool fraction_or_int =
      text.find_first_not_of("+-0123456789/") == std::string::npos;
  if (fraction_or_int) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
      throw ParseError("bad rational literal: '" + text + "'");
    if (sgn(r.get_den()) == 0)
      throw ParseError("zero denominator in rational literal: '" + text + "'");
    r.canonicalize();
    return r;
  }
  // Decimal text: parse as double, convert exactly.
  double d = double_parse(text);
  Rational r;
  mpq_set_d(r.get_mpq_t(), d);
  return r;
}

double double_parse(const std::string& text) {
  // Allow "p/q" on the float backend as well.
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r = rational_parse(text);
    return r.get_d();
  }
  double value = 0.0;
  const char* first = text.c_str();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError("bad number literal: '" + text + "'");
  if (!std::isfinite(value))
    throw InvalidInput("non-finite number: '" + text + "'");
  return value;
}

} // namespace calat::detail
