#include "bratteli/number.hpp"

#include "bratteli/error.hpp"

#include <cctype>
#include <limits>

namespace bratteli {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::coordinate_dimension: return "coordinate-dimension";
    case ErrorKind::precondition: return "precondition-violation";
    case ErrorKind::unsupported_spectrum: return "unsupported-spectrum";
    case ErrorKind::unsupported_field: return "unsupported-field";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::enumeration_too_large: return "enumeration-too-large";
    case ErrorKind::density_violation: return "density-violation";
    case ErrorKind::certificate_failure: return "certificate-failure";
    case ErrorKind::not_applicable: return "not-applicable";
    case ErrorKind::input: return "input";
  }
  return "error";
}

Integer floor(const Rational& q) {
  Integer n = num(q), d = den(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

Integer ceil(const Rational& q) { return -floor(-q); }

Integer pow(const Integer& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw Error(ErrorKind::precondition, "zero to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational r = 1, b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1U) r *= b;
    b *= b;
    e >>= 1U;
  }
  return r;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

namespace {
bool parse_integer(std::string_view s, Integer& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = Integer(std::string(s.substr(i)));
  if (neg) out = -out;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}
}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  Integer p, q = 1;
  bool ok = slash == std::string_view::npos ? parse_integer(s, p)
                                            : parse_integer(trim(s.substr(0, slash)), p) &&
                                                  parse_integer(trim(s.substr(slash + 1)), q);
  if (!ok || q == 0) throw Error(ErrorKind::input, "malformed rational '" + std::string(text) + "'");
  return Rational(p, q);
}

IncidenceMatrix to_incidence(const Matrix<Integer>& m) {
  IncidenceMatrix out(m.rows(), m.cols());
  const Integer hi = std::numeric_limits<std::int64_t>::max();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) > hi || m(i, j) < -hi) throw Error(ErrorKind::unsupported, "edge multiplicity exceeds 64 bits");
      out(i, j) = m(i, j).convert_to<std::int64_t>();
    }
  return out;
}

}  // namespace bratteli
