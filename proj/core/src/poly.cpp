#include "qfodc/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qfodc/error.hpp"

namespace qfodc {

using detail::CInt;
using detail::Overflow;

namespace {

// Coefficient-type shims shared by the CInt and mpz_class kernels.

bool zero(CInt a) { return a.v == 0; }
bool zero(const mpz_class& a) { return sgn(a) == 0; }
int sign_of(CInt a) { return (a.v > 0) - (a.v < 0); }
int sign_of(const mpz_class& a) { return sgn(a); }

CInt abs_of(CInt a) { return a.v < 0 ? -a : a; }

CInt gcd_of(CInt a, CInt b) {
  std::int64_t x = abs_of(a).v, y = abs_of(b).v;
  return std::gcd(x, y);
}
mpz_class gcd_of(const mpz_class& a, const mpz_class& b) { return gcd(a, b); }

// q = a / b when exact.
bool div_exact(CInt a, CInt b, CInt& q) {
  if (b.v == -1) {
    q = -a;
    return true;
  }
  if (a.v % b.v != 0) return false;
  q = a.v / b.v;
  return true;
}
bool div_exact(const mpz_class& a, const mpz_class& b, mpz_class& q) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return true;
}

void addmul(CInt& acc, CInt a, CInt b) { acc += a * b; }
void addmul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
void submul(CInt& acc, CInt a, CInt b) { acc -= a * b; }
void submul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

template <class T>
void trim(std::vector<T>& v) {
  while (!v.empty() && zero(v.back())) v.pop_back();
}

template <class T>
std::vector<T> k_add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = a[i] + b[i];
    else if (i < a.size())
      r[i] = a[i];
    else
      r[i] = b[i];
  }
  trim(r);
  return r;
}

template <class T>
std::vector<T> k_sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = a[i] - b[i];
    else if (i < a.size())
      r[i] = a[i];
    else
      r[i] = -b[i];
  }
  trim(r);
  return r;
}

template <class T>
std::vector<T> k_mul(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (zero(b[j])) continue;
      addmul(r[i + j], a[i], b[j]);
    }
  }
  trim(r);
  return r;
}

template <class T>
T k_content(const std::vector<T>& a) {
  T g = 0;
  for (const auto& c : a) {
    if (zero(c)) continue;
    g = gcd_of(g, c);
    if (g == T(1)) break;
  }
  return g;
}

template <class T>
std::vector<T> k_divexact_scalar(const std::vector<T>& a, const T& c) {
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!div_exact(a[i], c, r[i])) throw Error(ErrorKind::InvalidArgument, "inexact integer division");
  }
  return r;
}

// Long division in Z[p]; false when b does not divide a.
template <class T>
bool k_divide_exact(const std::vector<T>& a, const std::vector<T>& b, std::vector<T>& q) {
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.empty()) {
    q.clear();
    return true;
  }
  if (a.size() < b.size()) return false;
  std::vector<T> r = a;
  q.assign(a.size() - b.size() + 1, T(0));
  const T& lb = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    T& top = r[k + b.size() - 1];
    if (zero(top)) continue;
    T c;
    if (!div_exact(top, lb, c)) return false;
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) submul(r[k + j], c, b[j]);
  }
  for (std::size_t i = 0; i + 1 < b.size() && i < r.size(); ++i)
    if (!zero(r[i])) return false;
  trim(q);
  return true;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
template <class T>
std::vector<T> k_prem(std::vector<T> a, const std::vector<T>& b) {
  const std::size_t db = b.size();
  const T& lb = b.back();
  while (a.size() >= db) {
    T lead = a.back();
    std::size_t shift = a.size() - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t j = 0; j < db; ++j) submul(a[shift + j], lead, b[j]);
    trim(a);
  }
  return a;
}

template <class T>
std::vector<T> k_primitive(std::vector<T> a) {
  if (a.empty()) return a;
  T c = k_content(a);
  if (sign_of(a.back()) < 0) c = -c;
  if (c == T(1)) return a;
  return k_divexact_scalar(a, c);
}

template <class T>
std::vector<T> k_gcd(std::vector<T> a, std::vector<T> b) {
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    if (a.empty()) return a;
    if (sign_of(a.back()) < 0)
      for (auto& c : a) c = -c;
    return a;
  }
  T ca = k_content(a), cb = k_content(b);
  T g = gcd_of(ca, cb);
  auto val = [](const std::vector<T>& v) {
    std::size_t i = 0;
    while (zero(v[i])) ++i;
    return i;
  };
  std::size_t va = val(a), vb = val(b), v = std::min(va, vb);
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(va));
  b.erase(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(vb));
  a = k_primitive(std::move(a));
  b = k_primitive(std::move(b));
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<T> res;
  while (true) {
    if (b.size() == 1) {
      res = {T(1)};
      break;
    }
    auto r = k_prem(a, b);
    if (r.empty()) {
      res = b;
      break;
    }
    a = std::move(b);
    b = k_primitive(std::move(r));
  }
  res = k_primitive(std::move(res));
  for (auto& c : res) c = c * g;
  res.insert(res.begin(), v, T(0));
  return res;
}

std::vector<CInt> to_small_checked(const std::vector<mpz_class>& v, bool& ok) {
  std::vector<CInt> r;
  r.reserve(v.size());
  for (const auto& c : v) {
    if (!c.fits_slong_p()) {
      ok = false;
      return {};
    }
    r.emplace_back(c.get_si());
  }
  ok = true;
  return r;
}

}  // namespace

Poly::Poly(long c) {
  if (c != 0) s_.emplace_back(c);
}

Poly::Poly(const mpz_class& c) { set_big({c}); }

Poly Poly::monomial(const mpz_class& c, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative monomial exponent");
  std::vector<mpz_class> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return from_coeffs(std::move(v));
}

Poly Poly::from_coeffs(std::vector<mpz_class> c) {
  Poly r;
  r.set_big(std::move(c));
  return r;
}

Poly Poly::from_small(std::vector<std::int64_t> c) {
  std::vector<CInt> v(c.begin(), c.end());
  Poly r;
  r.set_small(std::move(v));
  return r;
}

std::vector<mpz_class> Poly::as_big() const {
  if (big_) return b_;
  std::vector<mpz_class> r;
  r.reserve(s_.size());
  for (auto c : s_) r.emplace_back(static_cast<long>(c.v));
  return r;
}

void Poly::set_big(std::vector<mpz_class> v) {
  trim(v);
  bool ok = false;
  auto s = to_small_checked(v, ok);
  if (ok) {
    big_ = false;
    s_ = std::move(s);
    b_.clear();
  } else {
    big_ = true;
    b_ = std::move(v);
    s_.clear();
  }
}

void Poly::set_small(std::vector<CInt> v) {
  trim(v);
  big_ = false;
  s_ = std::move(v);
  b_.clear();
}

template <class F>
Poly Poly::dispatch(const Poly& a, const Poly& b, F&& f) {
  Poly r;
  if (!a.big_ && !b.big_) {
    try {
      r.set_small(f(a.s_, b.s_));
      return r;
    } catch (const Overflow&) {
    }
  }
  r.set_big(f(a.as_big(), b.as_big()));
  return r;
}

int Poly::valuation() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (coeff_sign(static_cast<int>(i)) != 0) return static_cast<int>(i);
  return 0;
}

mpz_class Poly::coeff(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= size()) return 0;
  if (big_) return b_[static_cast<std::size_t>(i)];
  return mpz_class(static_cast<long>(s_[static_cast<std::size_t>(i)].v));
}

int Poly::coeff_sign(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= size()) return 0;
  return big_ ? sgn(b_[static_cast<std::size_t>(i)]) : sign_of(s_[static_cast<std::size_t>(i)]);
}

int Poly::lead_sign() const { return is_zero() ? 0 : coeff_sign(degree()); }

std::size_t Poly::term_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) n += coeff_sign(static_cast<int>(i)) != 0;
  return n;
}

bool Poly::is_monomial() const { return term_count() == 1; }

bool Poly::is_one() const { return !big_ && s_.size() == 1 && s_[0].v == 1; }

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Poly::dispatch(a, b, [](const auto& x, const auto& y) { return k_add(x, y); });
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.is_zero()) return a;
  return Poly::dispatch(a, b, [](const auto& x, const auto& y) { return k_sub(x, y); });
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return Poly::dispatch(a, b, [](const auto& x, const auto& y) { return k_mul(x, y); });
}

Poly Poly::operator-() const {
  Poly z;
  return z - *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  if (!a.big_ && !b.big_) return a.s_ == b.s_;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.coeff(static_cast<int>(i)) != b.coeff(static_cast<int>(i))) return false;
  return true;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly r = *this;
  if (k > 0) {
    if (big_)
      r.b_.insert(r.b_.begin(), static_cast<std::size_t>(k), mpz_class(0));
    else
      r.s_.insert(r.s_.begin(), static_cast<std::size_t>(k), CInt(0));
    return r;
  }
  if (valuation() < -k) throw Error(ErrorKind::InvalidArgument, "shift below valuation");
  if (big_)
    r.b_.erase(r.b_.begin(), r.b_.begin() - k);
  else
    r.s_.erase(r.s_.begin(), r.s_.begin() - k);
  return r;
}

Poly Poly::scaled(const mpz_class& c) const { return *this * Poly(c); }

mpz_class Poly::content() const {
  if (big_) return k_content(b_);
  return mpz_class(static_cast<long>(k_content(s_).v));
}

Poly Poly::divexact_int(const mpz_class& c) const {
  if (sgn(c) == 0) throw Error(ErrorKind::DivisionByZero, "integer division by zero");
  Poly r;
  if (!big_ && c.fits_slong_p()) {
    try {
      r.set_small(k_divexact_scalar(s_, CInt(c.get_si())));
      return r;
    } catch (const Overflow&) {
    }
  }
  r.set_big(k_divexact_scalar(as_big(), c));
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& a, const Poly& b) {
  Poly r;
  if (!a.big_ && !b.big_) {
    try {
      std::vector<CInt> q;
      if (!k_divide_exact(a.s_, b.s_, q)) return std::nullopt;
      r.set_small(std::move(q));
      return r;
    } catch (const Overflow&) {
    }
  }
  std::vector<mpz_class> q;
  if (!k_divide_exact(a.as_big(), b.as_big(), q)) return std::nullopt;
  r.set_big(std::move(q));
  return r;
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  return dispatch(a, b, [](const auto& x, const auto& y) { return k_gcd(x, y); });
}

std::uint64_t Poly::eval_mod(std::uint64_t t, std::uint64_t prime) const {
  unsigned __int128 acc = 0;
  for (std::size_t i = size(); i-- > 0;) {
    std::uint64_t c;
    if (big_) {
      mpz_class m;
      mpz_fdiv_r_ui(m.get_mpz_t(), b_[i].get_mpz_t(), prime);
      c = m.get_ui();
    } else {
      std::int64_t v = s_[i].v % static_cast<std::int64_t>(prime);
      c = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(prime) : v);
    }
    acc = (acc * t + c) % prime;
  }
  return static_cast<std::uint64_t>(acc);
}

std::string Poly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    int s = coeff_sign(i);
    if (s == 0) continue;
    mpz_class c = coeff(i);
    mpz_class a = abs(c);
    if (s < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::size_t Poly::hash() const {
  std::size_t h = size();
  for (std::size_t i = 0; i < size(); ++i) {
    std::size_t c = big_ ? std::hash<std::string>{}(b_[i].get_str(16)) : std::hash<std::int64_t>{}(s_[i].v);
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace qfodc
