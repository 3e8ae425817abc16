#include "epsnet/rational.hpp"

#include <limits>
#include <stdexcept>

namespace epsnet {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  if (!valid(num) || !valid(den)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow2_inverse(unsigned k) { return inverse_power(2, k); }

Rational inverse_power(std::int64_t base, unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(base), k);
  Rational q(mpz_class(1), den);
  q.canonicalize();
  return q;
}

std::int64_t ipow(std::int64_t base, unsigned exp) {
  std::int64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::int64_t>::max() / base) {
      throw std::overflow_error("ipow overflow");
    }
    out *= base;
  }
  return out;
}

std::int64_t to_int64_exact(const Rational& q) {
  if (q.get_den() != 1) throw std::invalid_argument("rational " + q.get_str() + " is not an integer");
  const mpz_class& n = q.get_num();
  if (!n.fits_slong_p()) throw std::overflow_error("rational " + q.get_str() + " overflows int64");
  return n.get_si();
}

}  // namespace epsnet
