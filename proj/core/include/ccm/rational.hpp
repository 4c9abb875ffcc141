#pragma once

// Exact rational scalars and polynomials in p with rational coefficients.

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ccm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den", "num", or a finite decimal such as "0.125" (parsed exactly).
// Throws ParameterError on malformed input.
Rational parse_rational(std::string_view text);

// Serialized as "num/den" with den > 0 (den = 1 included).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Exact value of a finite double.
Rational from_double(double x);

Rational power(const Rational& base, unsigned exponent);

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  // Coefficient of p^j; zero past the stored degree.
  Rational coefficient(std::size_t j) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Rational operator()(const Rational& p) const;
  double operator()(double p) const;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

}  // namespace ccm
