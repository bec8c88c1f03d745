#include "kronlab/rational.hpp"

#include <cctype>
#include <ostream>
#include <utility>

#include "kronlab/errors.hpp"

namespace kronlab {
namespace {

Integer pow10(unsigned exponent) {
  Integer result = 1;
  Integer base = 10;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    base *= base;
    exponent >>= 1u;
  }
  return result;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Decimal exponents beyond this are rejected rather than materialised.
constexpr long kMaxDecimalExponent = 4096;

// cpp_int reads a leading 0 as an octal prefix, so strip it first.
Integer decimal_digits(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Integer(0);
  return Integer{std::string(digits.substr(first))};
}

}  // namespace

Rational::Rational(Integer num, Integer den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Integer g = boost::multiprecision::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Integer parse_integer(std::string_view text) {
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) throw InvalidInput("malformed integer: '" + std::string(text) + "'");
  Integer value = decimal_digits(text);
  return negative ? Integer(-value) : value;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view original = text;
  text = trim(text);
  if (text.empty()) throw InvalidInput("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    return Rational(std::move(num), std::move(den));
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw InvalidInput("malformed rational: '" + std::string(original) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    throw InvalidInput("malformed rational: '" + std::string(original) + "'");
  }

  exponent -= static_cast<long>(frac_part.size());
  if (exponent > kMaxDecimalExponent || exponent < -kMaxDecimalExponent) {
    throw InvalidInput("decimal exponent out of range: '" + std::string(original) + "'");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer mantissa = decimal_digits(digits);
  if (negative) mantissa = -mantissa;
  if (exponent >= 0) return Rational(mantissa * pow10(static_cast<unsigned>(exponent)), 1);
  return Rational(std::move(mantissa), pow10(static_cast<unsigned>(-exponent)));
}

Rational Rational::operator-() const { return Rational(-num_, den_, Canonical{}); }

Rational operator+(const Rational& x, const Rational& y) {
  if (x.den_ == y.den_) return Rational(x.num_ + y.num_, x.den_);
  return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) {
  if (x.den_ == y.den_) return Rational(x.num_ - y.num_, x.den_);
  return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator*(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.num_, x.den_ * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.num_ == 0) throw InvalidInput("division by zero");
  return Rational(x.num_ * y.den_, x.den_ * y.num_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  if (x.den_ == y.den_) {
    if (x.num_ < y.num_) return std::strong_ordering::less;
    if (x.num_ > y.num_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  const Integer lhs = x.num_ * y.den_;
  const Integer rhs = y.num_ * x.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::string Rational::fraction_str() const { return num_.str() + "/" + den_.str(); }

std::string Rational::decimal(int significant_digits) const {
  if (significant_digits < 1) throw InvalidInput("precision must be at least 1");
  if (num_ == 0) return "0";

  const Integer p = boost::multiprecision::abs(num_);
  const Integer& q = den_;
  const auto digits = static_cast<long>(significant_digits);

  // Decimal exponent e with 10^e <= p/q < 10^(e+1).
  long e = static_cast<long>(p.str().size()) - static_cast<long>(q.str().size());
  const auto below = [&](long exp) {
    return exp >= 0 ? p < q * pow10(static_cast<unsigned>(exp))
                    : p * pow10(static_cast<unsigned>(-exp)) < q;
  };
  if (below(e)) --e;

  const auto scaled_quotient = [&](long shift, Integer& remainder, Integer& divisor) {
    Integer numer = p;
    divisor = q;
    if (shift >= 0) {
      numer *= pow10(static_cast<unsigned>(shift));
    } else {
      divisor *= pow10(static_cast<unsigned>(-shift));
    }
    Integer quotient;
    boost::multiprecision::divide_qr(numer, divisor, quotient, remainder);
    return quotient;
  };

  Integer remainder, divisor;
  Integer mantissa = scaled_quotient(digits - 1 - e, remainder, divisor);
  const Integer twice = 2 * remainder;
  if (twice > divisor || (twice == divisor && (mantissa & 1) != 0)) ++mantissa;
  if (mantissa == pow10(static_cast<unsigned>(digits))) {
    mantissa /= 10;
    ++e;
  }

  const std::string body = mantissa.str();
  std::string out;
  if (e >= digits - 1) {
    out = body + std::string(static_cast<std::size_t>(e - (digits - 1)), '0');
  } else if (e >= 0) {
    out = body.substr(0, static_cast<std::size_t>(e + 1)) + "." +
          body.substr(static_cast<std::size_t>(e + 1));
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + body;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return num_ < 0 ? "-" + out : out;
}

std::size_t Rational::hash() const {
  std::size_t seed = static_cast<std::size_t>(num_.sign() + 1);
  const auto mix = [&seed](std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  };
  for (const Integer* part : {&num_, &den_}) {
    const auto& backend = part->backend();
    for (unsigned i = 0; i < backend.size(); ++i) mix(static_cast<std::size_t>(backend.limbs()[i]));
    mix(0x51ed270b27ULL);
  }
  return seed;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

const Rational& min(const Rational& x, const Rational& y) { return y < x ? y : x; }

const Rational& max(const Rational& x, const Rational& y) { return x < y ? y : x; }

}  // namespace kronlab
