#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfodc {

namespace detail {

struct Overflow {};

// int64 whose arithmetic throws Overflow instead of wrapping. Polynomial
// kernels run on CInt first and are redone on mpz_class when it throws.
struct CInt {
  std::int64_t v = 0;
  CInt() = default;
  CInt(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend CInt operator+(CInt a, CInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CInt operator-(CInt a, CInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CInt operator*(CInt a, CInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  CInt operator-() const {
    if (v == INT64_MIN) throw Overflow{};
    return -v;
  }
  CInt& operator+=(CInt b) { return *this = *this + b; }
  CInt& operator-=(CInt b) { return *this = *this - b; }
  friend bool operator==(CInt a, CInt b) { return a.v == b.v; }
  friend bool operator!=(CInt a, CInt b) { return a.v != b.v; }
};

}  // namespace detail

// Dense univariate polynomial in p with integer coefficients, lowest degree
// first, no trailing zeros. Small coefficients are kept as int64 and promoted
// to GMP on overflow.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  explicit Poly(const mpz_class& c);

  static Poly monomial(const mpz_class& c, int k);
  static Poly from_coeffs(std::vector<mpz_class> c);
  static Poly from_small(std::vector<std::int64_t> c);

  bool is_zero() const { return big_ ? b_.empty() : s_.empty(); }
  int degree() const { return static_cast<int>(size()) - 1; }
  int valuation() const;
  std::size_t size() const { return big_ ? b_.size() : s_.size(); }
  mpz_class coeff(int i) const;
  int coeff_sign(int i) const;
  int lead_sign() const;
  bool is_monomial() const;
  bool is_constant() const { return size() <= 1; }
  bool is_one() const;
  bool is_big() const { return big_; }
  std::size_t term_count() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Multiply by p^k; negative k requires valuation() >= -k.
  Poly shifted(int k) const;
  Poly scaled(const mpz_class& c) const;
  // Nonnegative gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const;
  Poly divexact_int(const mpz_class& c) const;

  // Quotient if b divides a in Z[p], otherwise nullopt.
  static std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
  // Greatest common divisor in Z[p], positive leading coefficient.
  static Poly gcd(const Poly& a, const Poly& b);

  std::uint64_t eval_mod(std::uint64_t t, std::uint64_t prime) const;
  std::string to_string(char var = 'p') const;
  std::size_t hash() const;

 private:
  bool big_ = false;
  std::vector<detail::CInt> s_;
  std::vector<mpz_class> b_;

  std::vector<mpz_class> as_big() const;
  void set_big(std::vector<mpz_class> v);
  void set_small(std::vector<detail::CInt> v);

  template <class F>
  static Poly dispatch(const Poly& a, const Poly& b, F&& f);
};

}  // namespace qfodc
