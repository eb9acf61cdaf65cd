#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mixedspec {

// Exact rational arithmetic on 64-bit integers, always stored reduced with a
// positive denominator. Every operation checks for overflow and throws
// std::overflow_error; coefficients in this project are desk-scale so an
// overflow indicates misuse, not a value to round.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "p" and "p/q" with an optional leading minus, nothing else.
  static std::optional<Rational> parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator<(const Rational& o) const;

  // This value reduced into [0, m), exact.
  Rational floor_mod(std::int64_t m) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

}
