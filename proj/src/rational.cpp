#include "voak/rational.hpp"

namespace voak {

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational: empty string");
  std::size_t slash = s.find('/');
  auto check_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  if (!check_int(num)) throw std::invalid_argument("Rational: bad numerator in '" + s + "'");
  mpq_class q;
  if (slash == std::string::npos) {
    q = mpq_class(mpz_class(num));
  } else {
    std::string den = s.substr(slash + 1);
    if (!check_int(den) || den[0] == '-')
      throw std::invalid_argument("Rational: bad denominator in '" + s + "'");
    mpz_class d(den);
    if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q = mpq_class(mpz_class(num), d);
    q.canonicalize();
  }
  return Rational(q);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

long Rational::to_long() const {
  if (!is_integer() || !q_.get_num().fits_slong_p())
    throw std::domain_error("Rational::to_long on " + str());
  return q_.get_num().get_si();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1) / q_);
}

Rational binomial(long n, long k) {
  if (k < 0) return Rational(0);
  mpz_class num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= mpz_class(n - i);
    den *= mpz_class(i + 1);
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(q);
}

Rational factorial(long k) {
  mpz_class f = 1;
  for (long i = 2; i <= k; ++i) f *= i;
  return Rational(mpq_class(f));
}

}  // namespace voak
