#include "mixedspec/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace mixedspec {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  if (den_ < 0) {
    num_ = narrow(-static_cast<__int128>(num_));
    den_ = narrow(-static_cast<__int128>(den_));
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::optional<Rational> Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    const auto p = parse_int(text);
    if (!p) return std::nullopt;
    return Rational(*p, 1);
  }
  const auto p = parse_int(text.substr(0, slash));
  const auto q = parse_int(text.substr(slash + 1));
  if (!p || !q || *q == 0) return std::nullopt;
  return Rational(*p, *q);
}

std::string Rational::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

Rational Rational::operator-() const { return Rational(narrow(-static_cast<__int128>(num_)), den_); }

Rational Rational::operator+(const Rational& o) const {
  // Reduce in 128 bits before narrowing so intermediate growth is harmless.
  __int128 nn = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 dd = static_cast<__int128>(den_) * o.den_;
  if (nn != 0) {
    __int128 a = nn < 0 ? -nn : nn, b = dd;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    nn /= a;
    dd /= a;
  }
  return Rational(narrow(nn), narrow(dd));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  const __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
  const __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
  return Rational(narrow(n), narrow(d));
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

Rational Rational::floor_mod(std::int64_t m) const {
  if (m <= 0) throw std::invalid_argument("floor_mod needs a positive modulus");
  const __int128 md = static_cast<__int128>(m) * den_;
  __int128 r = static_cast<__int128>(num_) % md;
  if (r < 0) r += md;
  return Rational(narrow(r), den_);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm of zero");
  const std::int64_t g = std::gcd(a, b);
  return narrow(static_cast<__int128>(a / g) * b);
}

}
