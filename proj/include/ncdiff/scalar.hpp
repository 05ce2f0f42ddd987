#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncdiff {

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. Every computation in the library is exact; there is
/// no floating point anywhere.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull})
    if (n % d == 0) return n == d;
  for (std::uint64_t d = 11; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Element of a prime field F_p. The modulus is a thread-local context
/// (install one with FpContext before doing arithmetic); elements store only
/// their residue, so values stay plain and cheap to copy.
class Fp {
 public:
  Fp() = default;
  Fp(long long x) {  // NOLINT: implicit by design, mirrors Rational(int)
    const std::uint64_t p = require_modulus();
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    v_ = static_cast<std::uint64_t>(r);
  }

  static std::uint64_t modulus() { return modulus_; }

  std::uint64_t residue() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return from_raw((a.v_ + b.v_) % require_modulus()); }
  friend Fp operator-(Fp a, Fp b) {
    const std::uint64_t p = require_modulus();
    return from_raw((a.v_ + p - b.v_) % p);
  }
  friend Fp operator*(Fp a, Fp b) { return from_raw((a.v_ * b.v_) % require_modulus()); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const {
    const std::uint64_t p = require_modulus();
    return from_raw(v_ == 0 ? 0 : p - v_);
  }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp inverse() const {
    const std::uint64_t p = require_modulus();
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    // extended Euclid on (v, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(v_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return from_raw(static_cast<std::uint64_t>(t));
  }

 private:
  friend class FpContext;
  static Fp from_raw(std::uint64_t v) {
    Fp x;
    x.v_ = v;
    return x;
  }
  static std::uint64_t require_modulus() {
    if (modulus_ == 0) throw std::logic_error("Fp: no modulus installed (use FpContext)");
    return modulus_;
  }
  static thread_local std::uint64_t modulus_;
  std::uint64_t v_ = 0;
};

inline thread_local std::uint64_t Fp::modulus_ = 0;

/// RAII installer for the F_p modulus of the current thread.
class FpContext {
 public:
  explicit FpContext(std::uint64_t p) : saved_(Fp::modulus_) {
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("Fp modulus must be prime");
    if (p >= (1ull << 31)) throw std::invalid_argument("Fp modulus too large (need p < 2^31)");
    Fp::modulus_ = p;
  }
  ~FpContext() { Fp::modulus_ = saved_; }
  FpContext(const FpContext&) = delete;
  FpContext& operator=(const FpContext&) = delete;

 private:
  std::uint64_t saved_;
};

template <class K>
concept Field = std::regular<K> && requires(K a, K b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  K(0);
  K(1);
};

template <Field K>
bool is_zero(const K& x) {
  return x == K(0);
}
inline bool is_zero(const Fp& x) { return x.residue() == 0; }

// ---- string conversions ("p/q" with q > 0 in lowest terms) ----

namespace detail {

inline bool valid_integer_token(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace detail

inline Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  if (!detail::valid_integer_token(num))
    throw std::invalid_argument("invalid rational '" + s + "'");
  BigInt p(num);
  BigInt q(1);
  if (slash != std::string::npos) {
    const std::string den = s.substr(slash + 1);
    if (!detail::valid_integer_token(den) || den[0] == '-')
      throw std::invalid_argument("invalid rational '" + s + "'");
    q = BigInt(den);
    if (q == 0) throw std::invalid_argument("invalid rational '" + s + "' (zero denominator)");
  }
  return Rational(p, q);
}

inline std::string to_string(const Rational& x) {
  const BigInt num = numerator(x);
  const BigInt den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string to_string(const Fp& x) { return std::to_string(x.residue()); }

template <Field K>
K scalar_from_string(const std::string& s);

template <>
inline Rational scalar_from_string<Rational>(const std::string& s) {
  return rational_from_string(s);
}

template <>
inline Fp scalar_from_string<Fp>(const std::string& s) {
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  if (!detail::valid_integer_token(num))
    throw std::invalid_argument("invalid F_p scalar '" + s + "'");
  Fp value(std::stoll(num));
  if (slash != std::string::npos) {
    const std::string den = s.substr(slash + 1);
    if (!detail::valid_integer_token(den))
      throw std::invalid_argument("invalid F_p scalar '" + s + "'");
    Fp d(std::stoll(den));
    if (is_zero(d)) throw std::invalid_argument("invalid F_p scalar '" + s + "' (zero denominator)");
    value = value / d;
  }
  return value;
}

}  // namespace ncdiff
