#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qfodc/poly.hpp"

namespace qfodc {

// Element of Q(p) in canonical form num/den: gcd(num, den) = 1, den has a
// positive leading coefficient, zero is 0/1.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpz_class& c) : num_(c), den_(1) {}
  Scalar(Poly num, Poly den);

  static Scalar p_pow(int k);
  static Scalar rational(long n, long d);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  // True when the denominator is a monomial c*p^k.
  bool is_laurent() const { return den_.is_monomial(); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inv() const;
  Scalar pow(int e) const;

  // Value at p = t modulo a prime; nullopt when the denominator vanishes.
  std::optional<std::uint64_t> eval_mod(std::uint64_t t, std::uint64_t prime) const;

  std::string to_string() const;
  static Scalar parse(std::string_view text);

  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  Poly num_;
  Poly den_;

  struct Raw {};
  Scalar(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
  static Scalar normalized(Poly num, Poly den);
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar inv(const Scalar& a);
Scalar neg(const Scalar& a);

// q-number [m] = (b^m - b^-m)/(b - b^-1).
Scalar q_int(int m, const Scalar& base);
Scalar q_factorial(int m, const Scalar& base);
Scalar q_binomial(int m, int k, const Scalar& base);

enum class Series { A, C };

// Series A: SL_q(N), q = p^N, z = p^-1. Series C: Sp_q(N), N = 2n, q = p,
// z = z_choice in {+1, -1}.
struct FieldConfig {
  Series series = Series::A;
  int N = 2;
  int root_exponent = 2;
  int z_choice = 1;

  static FieldConfig sl(int N);
  static FieldConfig sp(int N, int z_choice = 1);

  void validate() const;
  int rank() const { return series == Series::A ? N - 1 : N / 2; }
  // Order of the group of admissible characters zeta.
  int zeta_order() const { return series == Series::A ? N : 2; }
  Scalar q() const { return Scalar::p_pow(root_exponent); }
  Scalar z() const;
  std::string name() const;
};

}  // namespace qfodc
