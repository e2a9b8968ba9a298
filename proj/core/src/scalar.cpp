#include "qfodc/scalar.hpp"

#include <cctype>

#include "qfodc/error.hpp"

namespace qfodc {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::InvalidBase: return "invalid-base";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::UnsupportedConfig: return "unsupported-config";
    case ErrorKind::SpectralFailure: return "spectral-failure";
    case ErrorKind::InvalidDegree: return "invalid-degree";
    case ErrorKind::NotInvariant: return "not-invariant";
    case ErrorKind::AntipodeFailure: return "antipode-failure";
    case ErrorKind::InvalidCharacter: return "invalid-character";
    case ErrorKind::UnsupportedFunctional: return "unsupported-functional";
    case ErrorKind::RankUnstable: return "rank-unstable";
    case ErrorKind::NotCentral: return "not-central";
    case ErrorKind::NotDirect: return "not-direct";
  }
  return "error";
}

namespace {

// For a monomial m = c*p^k return (|c|, k).
std::pair<mpz_class, int> split_monomial(const Poly& m) {
  int k = m.valuation();
  return {abs(m.coeff(k)), k};
}

Poly gcd_with_monomial(const Poly& a, const Poly& mono) {
  auto [c, k] = split_monomial(mono);
  if (a.is_zero()) return Poly::monomial(c, k);
  mpz_class g = gcd(a.content(), c);
  return Poly::monomial(g, std::min(a.valuation(), k));
}

Poly fast_gcd(const Poly& a, const Poly& b) {
  if (b.is_monomial()) return gcd_with_monomial(a, b);
  if (a.is_monomial()) return gcd_with_monomial(b, a);
  return Poly::gcd(a, b);
}

Poly divide_by(const Poly& a, const Poly& g) {
  if (g.is_one()) return a;
  if (g.is_monomial()) {
    auto [c, k] = split_monomial(g);
    Poly r = a.shifted(-k);
    if (g.lead_sign() < 0) r = -r;
    return c == 1 ? r : r.divexact_int(c);
  }
  auto q = Poly::divide_exact(a, g);
  if (!q) throw Error(ErrorKind::InvalidArgument, "inexact polynomial division");
  return *q;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

Scalar::Scalar(Poly num, Poly den) { *this = normalized(std::move(num), std::move(den)); }

Scalar Scalar::normalized(Poly num, Poly den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (num.is_zero()) return Scalar();
  if (!den.is_one()) {
    Poly g = fast_gcd(num, den);
    if (!g.is_one()) {
      num = divide_by(num, g);
      den = divide_by(den, g);
    }
    if (den.lead_sign() < 0) {
      num = -num;
      den = -den;
    }
  }
  return Scalar(std::move(num), std::move(den), Raw{});
}

Scalar Scalar::p_pow(int k) {
  if (k >= 0) return Scalar(Poly::monomial(1, k), Poly(1), Raw{});
  return Scalar(Poly(1), Poly::monomial(1, -k), Raw{});
}

Scalar Scalar::rational(long n, long d) { return Scalar(Poly(n), Poly(d)); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return Scalar::normalized(a.num_ + b.num_, a.den_);
  if (a.den_.is_monomial() && b.den_.is_monomial()) {
    auto [ca, ka] = split_monomial(a.den_);
    auto [cb, kb] = split_monomial(b.den_);
    mpz_class l = lcm(ca, cb);
    int k = std::max(ka, kb);
    Poly num = (a.num_ * Poly(mpz_class(l / ca))).shifted(k - ka) + (b.num_ * Poly(mpz_class(l / cb))).shifted(k - kb);
    return Scalar::normalized(std::move(num), Poly::monomial(l, k));
  }
  Poly g = fast_gcd(a.den_, b.den_);
  Poly bd = divide_by(b.den_, g);
  Poly num = a.num_ * bd + b.num_ * divide_by(a.den_, g);
  return Scalar::normalized(std::move(num), a.den_ * bd);
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, Raw{}); }

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ * b.num_, Poly(1), Scalar::Raw{});
  if (a.den_.is_monomial() && b.den_.is_monomial()) return Scalar::normalized(a.num_ * b.num_, a.den_ * b.den_);
  Poly g1 = fast_gcd(a.num_, b.den_);
  Poly g2 = fast_gcd(b.num_, a.den_);
  Poly num = divide_by(a.num_, g1) * divide_by(b.num_, g2);
  Poly den = divide_by(a.den_, g2) * divide_by(b.den_, g1);
  if (den.lead_sign() < 0) {
    num = -num;
    den = -den;
  }
  return Scalar(std::move(num), std::move(den), Scalar::Raw{});
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (num_.lead_sign() < 0) return Scalar(-den_, -num_, Raw{});
  return Scalar(den_, num_, Raw{});
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (a.is_zero()) return Scalar();
  if (a.is_laurent() && b.is_laurent()) {
    int va = a.num_.valuation(), vb = b.num_.valuation();
    auto q = Poly::divide_exact(a.num_.shifted(-va), b.num_.shifted(-vb));
    if (q) return Scalar::normalized(q->shifted(va) * b.den_, a.den_.shifted(vb));
  }
  return a * b.inv();
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r(1), base = *this;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

std::optional<std::uint64_t> Scalar::eval_mod(std::uint64_t t, std::uint64_t prime) const {
  std::uint64_t d = den_.eval_mod(t, prime);
  if (d == 0) return std::nullopt;
  std::uint64_t n = num_.eval_mod(t, prime);
  return mulmod(n, powmod(d, prime - 2, prime), prime);
}

std::string Scalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.term_count() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool bare = den_.is_constant() || (den_.is_monomial() && den_.coeff(den_.degree()) == 1);
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar run() {
    Scalar r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected token");
    return r;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    std::string tok = pos_ < s_.size() ? std::string(1, s_[pos_]) : std::string("<end>");
    throw Error(ErrorKind::Parse, why + " '" + tok + "' at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar r = term();
    while (true) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  Scalar term() {
    Scalar r = unary();
    while (true) {
      if (eat('*'))
        r *= unary();
      else if (eat('/'))
        r /= unary();
      else
        return r;
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Scalar power() {
    Scalar base = atom();
    if (!eat('^')) return base;
    bool paren = eat('(');
    bool negative = eat('-');
    if (!negative) eat('+');
    skip();
    mpz_class e = integer();
    if (paren && !eat(')')) fail("expected ')'");
    if (!e.fits_sint_p()) fail("exponent too large");
    int k = static_cast<int>(e.get_si());
    return base.pow(negative ? -k : k);
  }
  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }
  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'p') {
      ++pos_;
      return Scalar::p_pow(1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(integer());
    fail("unexpected token");
  }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).run(); }

Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar inv(const Scalar& a) { return a.inv(); }
Scalar neg(const Scalar& a) { return -a; }

Scalar q_int(int m, const Scalar& base) {
  if (base.is_zero() || base == Scalar(1) || base == Scalar(-1))
    throw Error(ErrorKind::InvalidBase, "q-number base must not be 0, 1 or -1");
  return (base.pow(m) - base.pow(-m)) / (base - base.inv());
}

Scalar q_factorial(int m, const Scalar& base) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "negative q-factorial argument");
  Scalar r(1);
  for (int k = 1; k <= m; ++k) r *= q_int(k, base);
  return r;
}

Scalar q_binomial(int m, int k, const Scalar& base) {
  if (m < 0 || k < 0 || k > m) throw Error(ErrorKind::InvalidArgument, "q-binomial needs 0 <= k <= m");
  return q_factorial(m, base) / (q_factorial(k, base) * q_factorial(m - k, base));
}

FieldConfig FieldConfig::sl(int N) {
  FieldConfig c;
  c.series = Series::A;
  c.N = N;
  c.root_exponent = N;
  c.z_choice = 1;
  c.validate();
  return c;
}

FieldConfig FieldConfig::sp(int N, int z_choice) {
  FieldConfig c;
  c.series = Series::C;
  c.N = N;
  c.root_exponent = 1;
  c.z_choice = z_choice;
  c.validate();
  return c;
}

void FieldConfig::validate() const {
  if (N > 12) throw Error(ErrorKind::UnsupportedConfig, "matrix size above 12 is not supported");
  if (series == Series::A) {
    if (N < 2) throw Error(ErrorKind::UnsupportedConfig, "SL_q(N) needs N >= 2");
    if (root_exponent != N) throw Error(ErrorKind::UnsupportedConfig, "series A needs q = p^N");
  } else {
    if (N < 2 || N % 2 != 0) throw Error(ErrorKind::UnsupportedConfig, "Sp_q(N) needs even N >= 2");
    if (root_exponent != 1) throw Error(ErrorKind::UnsupportedConfig, "series C needs q = p");
    if (z_choice != 1 && z_choice != -1) throw Error(ErrorKind::UnsupportedConfig, "series C needs z in {1, -1}");
  }
}

Scalar FieldConfig::z() const {
  if (series == Series::A) return Scalar::p_pow(-1);
  return Scalar(z_choice);
}

std::string FieldConfig::name() const {
  return std::string(series == Series::A ? "SL_q(" : "Sp_q(") + std::to_string(N) + ")";
}

}  // namespace qfodc
