#include "krawlp/numeric.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "krawlp/error.hpp"

namespace krawlp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::NotAConfig: return "not-a-configuration";
    case ErrorCode::NotLinear: return "not-linear";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

const BigInt& factorial(int n) {
  if (n < 0) fail(ErrorCode::Domain, "factorial of a negative number");
  // Deque-like storage: references handed out must stay valid while the memo grows.
  static std::vector<std::unique_ptr<BigInt>> memo;
  static std::mutex lock;
  std::lock_guard guard(lock);
  if (memo.empty()) memo.push_back(std::make_unique<BigInt>(1));
  while (static_cast<int>(memo.size()) <= n) {
    const auto k = static_cast<long>(memo.size());
    memo.push_back(std::make_unique<BigInt>(*memo.back() * k));
  }
  return *memo[static_cast<std::size_t>(n)];
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

BigInt multinomial(int n, const int* parts, std::size_t count) {
  BigInt denom = 1;
  int total = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (parts[i] < 0) fail(ErrorCode::Domain, "multinomial with a negative part");
    denom *= factorial(parts[i]);
    total += parts[i];
  }
  if (total != n) fail(ErrorCode::Domain, "multinomial parts do not sum to n");
  return factorial(n) / denom;
}

BigInt pow2(unsigned exponent) {
  BigInt r = 1;
  r <<= exponent;
  return r;
}

std::string to_fraction_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_fraction_string(const BigInt& value) { return value.str(); }

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer(text)) fail(ErrorCode::InvalidInput, "not a fraction: '" + std::string(text) + "'");
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-')
    fail(ErrorCode::InvalidInput, "not a fraction: '" + std::string(text) + "'");
  const BigInt d = parse_integer(den);
  if (d == 0) fail(ErrorCode::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) fail(ErrorCode::Domain, "non-finite double");
  int exp = 0;
  const double mant = std::frexp(value, &exp);
  // 53 bits of mantissa scaled to an integer.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r{BigInt(scaled)};
  exp -= 53;
  if (exp >= 0) {
    r *= Rational(pow2(static_cast<unsigned>(exp)));
  } else {
    r /= Rational(pow2(static_cast<unsigned>(-exp)));
  }
  return r;
}

}  // namespace krawlp
