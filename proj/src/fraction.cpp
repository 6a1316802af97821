#include "lppt/fraction.hpp"

#include <cmath>
#include <stdexcept>

namespace lppt {

Fraction frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("frac: zero denominator");
  Fraction f(num, den);
  f.canonicalize();
  return f;
}

std::string to_string(const Fraction& f) {
  if (f.get_den() == 1) return f.get_num().get_str();
  return f.get_num().get_str() + "/" + f.get_den().get_str();
}

Fraction parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      Fraction f(mpz_class(text), 1);
      f.canonicalize();
      return f;
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Fraction f(num, den);
    f.canonicalize();
    return f;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("parse_fraction: malformed fraction '" + text + "'");
  }
}

Fraction rationalize(double x, std::uint64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
  const bool neg = x < 0;
  double v = neg ? -x : x;

  // Continued-fraction convergents p_k/q_k until the denominator cap.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  const mpz_class cap(static_cast<unsigned long>(max_den));
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(v);
    mpz_class a(fl);
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > cap) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rem = v - fl;
    if (rem < 1e-15) break;
    v = 1.0 / rem;
    if (!std::isfinite(v)) break;
  }
  if (q1 == 0) return Fraction(0);
  Fraction f(neg ? mpz_class(-p1) : p1, q1);
  f.canonicalize();
  return f;
}

}  // namespace lppt
