#pragma once

// Exact scalar fields: arbitrary-precision rationals (GMP) and integers
// modulo a prime chosen at run time.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bihom {

class FieldMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : q_(static_cast<long>(n)) {}  // NOLINT(implicit)
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& raw() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  std::string str() const { return q_.get_str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

/// Element of Z/pZ. Carries its modulus so that mixing fields is detected.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  ModP operator-() const { return ModP(v_ == 0 ? 0 : p_ - v_, p_); }
  ModP& operator+=(const ModP& o) {
    same(o);
    v_ = (v_ + o.v_) % p_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    same(o);
    v_ = (v_ + p_ - o.v_) % p_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    same(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) {
    same(o);
    if (o.v_ == 0) throw std::domain_error("division by zero");
    return *this *= o.inverse();
  }
  ModP inverse() const {
    // Fermat: p is prime.
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = static_cast<std::uint64_t>((static_cast<unsigned __int128>(result) * base) % p_);
      base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % p_);
      e >>= 1;
    }
    return ModP(result, p_);
  }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) {
    a.same(b);
    return a.v_ == b.v_;
  }

  std::string str() const { return std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.str(); }

 private:
  void same(const ModP& o) const {
    if (p_ != o.p_)
      throw FieldMismatch("mixed moduli " + std::to_string(p_) + " and " + std::to_string(o.p_));
  }
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

// Splits "a/b" or "a" into numerator/denominator decimal strings.
inline std::pair<std::string, std::string> split_fraction(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den)) throw ParseError("non-rational literal '" + std::string(text) + "'");
  std::string n(num), d(den);
  if (n[0] == '+') n.erase(0, 1);
  if (d[0] == '+') d.erase(0, 1);
  return {n, d};
}

}  // namespace detail

struct RationalField {
  using Scalar = Rational;

  Scalar zero() const { return Rational(0); }
  Scalar one() const { return Rational(1); }
  Scalar from_int(long long n) const { return Rational(n); }
  Scalar parse(std::string_view text) const {
    auto [n, d] = detail::split_fraction(text);
    mpz_class den(d);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(mpz_class(n), den));
  }
  bool contains(const Scalar&) const { return true; }
  std::string name() const { return "Q"; }
  std::uint64_t characteristic() const { return 0; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

struct PrimeField {
  std::uint64_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (!is_prime(prime) || prime > (1ull << 32))
      throw std::invalid_argument("modulus " + std::to_string(prime) + " is not a supported prime");
  }

  using Scalar = ModP;

  Scalar zero() const { return ModP(0, p); }
  Scalar one() const { return ModP(1, p); }
  Scalar from_int(long long n) const {
    long long r = n % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return ModP(static_cast<std::uint64_t>(r), p);
  }
  Scalar parse(std::string_view text) const {
    auto [n, d] = detail::split_fraction(text);
    auto reduce = [&](const std::string& s) {
      mpz_class z(s);
      mpz_class r = z % static_cast<unsigned long>(p);
      if (r < 0) r += static_cast<unsigned long>(p);
      return ModP(r.get_ui(), p);
    };
    ModP den = reduce(d);
    if (den.is_zero()) throw ParseError("denominator of '" + std::string(text) + "' vanishes mod " + std::to_string(p));
    return reduce(n) / den;
  }
  bool contains(const Scalar& s) const { return s.modulus() == p; }
  std::string name() const { return "Fp"; }
  std::uint64_t characteristic() const { return p; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

template <class K>
concept Field = requires(const K& k, const typename K::Scalar& a, std::string_view s) {
  { k.zero() } -> std::same_as<typename K::Scalar>;
  { k.one() } -> std::same_as<typename K::Scalar>;
  { k.from_int(1LL) } -> std::same_as<typename K::Scalar>;
  { k.parse(s) } -> std::same_as<typename K::Scalar>;
  { k.contains(a) } -> std::convertible_to<bool>;
  { a + a } -> std::same_as<typename K::Scalar>;
  { a * a } -> std::same_as<typename K::Scalar>;
  { a / a } -> std::same_as<typename K::Scalar>;
  { a == a } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.str() } -> std::convertible_to<std::string>;
};

static_assert(Field<RationalField>);
static_assert(Field<PrimeField>);

/// (-1)^(a*b) for parities a, b.
inline int koszul_sign(int a, int b) { return ((a & b) & 1) ? -1 : 1; }

}  // namespace bihom
