#include "ccm/rational.hpp"

#include <cmath>

#include "ccm/errors.hpp"

namespace ccm {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParameterError("malformed rational: " + std::string(whole));
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParameterError("zero denominator: " + std::string(text));
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) {
      negative = int_part[0] == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParameterError("malformed rational: " + std::string(text));
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = int_part.empty() ? BigInt(0) : BigInt(std::string(int_part));
    num = num * scale + (frac.empty() ? BigInt(0) : BigInt(std::string(frac)));
    Rational r(num, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw ParameterError("non-finite value has no rational form");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(scaled);
  if (exponent >= 0) {
    r *= Rational(BigInt(1) << exponent);
  } else {
    r /= Rational(BigInt(1) << -exponent);
  }
  return r;
}

Rational power(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent) b *= b;
  }
  return result;
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t j) const {
  return j < coeffs_.size() ? coeffs_[j] : Rational(0);
}

Rational Polynomial::operator()(const Rational& p) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + *it;
  return acc;
}

double Polynomial::operator()(double p) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + to_double(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> out;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) out.push_back(coeffs_[j] * static_cast<int>(j));
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

}  // namespace ccm
