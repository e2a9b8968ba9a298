#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfodc/scalar.hpp"

namespace qfodc {

// Element of Q(p)[w]/Phi_n(w) where w = exp(2 pi i / n). Stored as phi(n)
// Scalar coordinates in the power basis; elements lying in Q(p) are kept in a
// canonical rational form with order() == 1 so equality is structural.
class Cyclo {
 public:
  Cyclo() : c_{Scalar()} {}
  Cyclo(const Scalar& s) : c_{s} {}  // NOLINT(google-explicit-constructor)
  Cyclo(long v) : c_{Scalar(v)} {}   // NOLINT(google-explicit-constructor)

  // w_n^e for the primitive n-th root w_n.
  static Cyclo root_power(int order, long e);
  static Cyclo from_components(int order, std::vector<Scalar> c);

  int order() const { return order_; }
  bool is_rational() const { return order_ == 1; }
  const Scalar& rational() const { return c_[0]; }
  const std::vector<Scalar>& components() const { return c_; }

  bool is_zero() const { return order_ == 1 && c_[0].is_zero(); }
  bool is_one() const { return order_ == 1 && c_[0].is_one(); }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b);
  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.order_ == b.order_ && a.c_ == b.c_; }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Galois conjugate w -> w^k, gcd(k, n) = 1.
  Cyclo galois(int k) const;
  // Product of all Galois conjugates; lies in Q(p).
  Scalar norm() const;
  Cyclo inv() const;

  // Value under p -> t, w -> omega (a primitive order()-th root mod prime).
  std::optional<std::uint64_t> eval_mod(std::uint64_t t, std::uint64_t prime, std::uint64_t omega) const;

  std::string to_string() const;

 private:
  std::vector<Scalar> c_;
  int order_ = 1;

  void canonicalize();
  static Cyclo lift(const Cyclo& a, int order);
};

int euler_phi(int n);

}  // namespace qfodc
