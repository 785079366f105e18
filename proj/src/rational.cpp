#include "nlum/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace nlum {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::invalid_argument("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  std::string body = s;
  bool negative = false;
  if (body[0] == '+' || body[0] == '-') {
    negative = body[0] == '-';
    body.erase(0, 1);
  }

  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational literal: " + s);
    mpz_class num_z(num, 10), den_z(den, 10);
    if (den_z == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    mpq_class q(num_z, den_z);
    q.canonicalize();
    if (negative) q = -q;
    return Rational(std::move(q));
  }

  // Finite decimal: digits with an optional fractional part.
  std::string digits = body;
  std::size_t frac_len = 0;
  if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw std::invalid_argument("malformed rational literal: " + s);
    if (!whole.empty() && !all_digits(whole))
      throw std::invalid_argument("malformed rational literal: " + s);
    if (!frac.empty() && !all_digits(frac))
      throw std::invalid_argument("malformed rational literal: " + s);
    digits = whole + frac;
    frac_len = frac.size();
    if (digits.empty()) throw std::invalid_argument("malformed rational literal: " + s);
  } else if (!all_digits(body)) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }

  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class den(1);
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  if (negative) q = -q;
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace nlum
