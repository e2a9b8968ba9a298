#include "qfodc/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "qfodc/error.hpp"

namespace qfodc {

namespace {

struct CycloData {
  int order = 1;
  int phi = 1;
  // zpow[e] = coordinates of w^e in the power basis, e in [0, 2*order).
  std::vector<std::vector<long>> zpow;
};

std::vector<long> poly_div_exact(std::vector<long> a, const std::vector<long>& b) {
  std::vector<long> q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    long c = a[k + b.size() - 1];
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  return q;
}

std::vector<long> cyclotomic(int n) {
  std::vector<long> f(static_cast<std::size_t>(n) + 1, 0);
  f[0] = -1;
  f[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) f = poly_div_exact(f, cyclotomic(d));
  return f;
}

const CycloData& data(int order) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloData>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = table[order];
  if (!slot) {
    auto d = std::make_unique<CycloData>();
    d->order = order;
    d->phi = euler_phi(order);
    auto phi_poly = cyclotomic(order);
    const auto phi = static_cast<std::size_t>(d->phi);
    std::vector<long> cur(phi, 0);
    cur[0] = 1;
    for (int e = 0; e < 2 * order; ++e) {
      d->zpow.push_back(cur);
      std::vector<long> nxt(phi + 1, 0);
      for (std::size_t j = 0; j < phi; ++j) nxt[j + 1] = cur[j];
      long top = nxt[phi];
      for (std::size_t j = 0; j < phi; ++j) nxt[j] -= top * phi_poly[j];
      nxt.resize(phi);
      cur = nxt;
    }
    slot = std::move(d);
  }
  return *slot;
}

}  // namespace

int euler_phi(int n) {
  int r = 0;
  for (int k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
  return r;
}

void Cyclo::canonicalize() {
  if (order_ == 1) return;
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (!c_[j].is_zero()) return;
  c_.resize(1);
  order_ = 1;
}

Cyclo Cyclo::from_components(int order, std::vector<Scalar> c) {
  Cyclo r;
  if (euler_phi(order) == 1) {
    if (c.size() != 1) throw Error(ErrorKind::InvalidArgument, "rational Cyclo needs one component");
    r.c_ = std::move(c);
    return r;
  }
  if (static_cast<int>(c.size()) != euler_phi(order)) throw Error(ErrorKind::InvalidArgument, "wrong Cyclo component count");
  r.order_ = order;
  r.c_ = std::move(c);
  r.canonicalize();
  return r;
}

Cyclo Cyclo::root_power(int order, long e) {
  long m = ((e % order) + order) % order;
  if (order <= 2) return Cyclo((order == 2 && m == 1) ? -1L : 1L);
  const auto& d = data(order);
  std::vector<Scalar> c;
  for (long v : d.zpow[static_cast<std::size_t>(m)]) c.emplace_back(v);
  return from_components(order, std::move(c));
}

Cyclo Cyclo::lift(const Cyclo& a, int order) {
  if (a.order_ == order) return a;
  Cyclo r;
  r.order_ = order;
  r.c_.assign(static_cast<std::size_t>(euler_phi(order)), Scalar());
  r.c_[0] = a.c_[0];
  return r;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == 1 && b.order_ == 1) return Cyclo(a.c_[0] + b.c_[0]);
  if (a.order_ != 1 && b.order_ != 1 && a.order_ != b.order_)
    throw Error(ErrorKind::InvalidArgument, "mixing cyclotomic fields of different order");
  int order = std::max(a.order_, b.order_);
  Cyclo x = Cyclo::lift(a, order);
  const Cyclo y = Cyclo::lift(b, order);
  for (std::size_t j = 0; j < x.c_.size(); ++j) x.c_[j] += y.c_[j];
  x.canonicalize();
  return x;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& s : r.c_) s = -s;
  return r;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == 1 && b.order_ == 1) return Cyclo(a.c_[0] * b.c_[0]);
  if (a.order_ == 1 || b.order_ == 1) {
    const Cyclo& r = a.order_ == 1 ? a : b;
    Cyclo x = a.order_ == 1 ? b : a;
    if (r.c_[0].is_zero()) return Cyclo();
    for (auto& s : x.c_) s *= r.c_[0];
    return x;
  }
  if (a.order_ != b.order_) throw Error(ErrorKind::InvalidArgument, "mixing cyclotomic fields of different order");
  const auto& d = data(a.order_);
  const auto phi = static_cast<std::size_t>(d.phi);
  std::vector<Scalar> prod(2 * phi - 1);
  for (std::size_t i = 0; i < phi; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (b.c_[j].is_zero()) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  std::vector<Scalar> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(phi));
  for (std::size_t k = phi; k < prod.size(); ++k) {
    if (prod[k].is_zero()) continue;
    const auto& row = d.zpow[k];
    for (std::size_t j = 0; j < phi; ++j)
      if (row[j] != 0) out[j] += prod[k] * Scalar(row[j]);
  }
  return Cyclo::from_components(a.order_, std::move(out));
}

Cyclo Cyclo::galois(int k) const {
  if (order_ == 1) return *this;
  const auto& d = data(order_);
  if (std::gcd(k, order_) != 1) throw Error(ErrorKind::InvalidArgument, "Galois exponent not coprime to order");
  std::vector<Scalar> out(c_.size());
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    long e = (static_cast<long>(j) * k % order_ + order_) % order_;
    const auto& row = d.zpow[static_cast<std::size_t>(e)];
    for (std::size_t i = 0; i < out.size(); ++i)
      if (row[i] != 0) out[i] += c_[j] * Scalar(row[i]);
  }
  return from_components(order_, std::move(out));
}

namespace {

Cyclo conjugate_product(const Cyclo& a) {
  Cyclo r(1);
  for (int k = 2; k < a.order(); ++k)
    if (std::gcd(k, a.order()) == 1) r *= a.galois(k);
  return r;
}

}  // namespace

Scalar Cyclo::norm() const {
  if (order_ == 1) return c_[0];
  Cyclo n = *this * conjugate_product(*this);
  if (!n.is_rational()) throw Error(ErrorKind::InvalidArgument, "norm did not land in Q(p)");
  return n.c_[0];
}

Cyclo Cyclo::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (order_ == 1) return Cyclo(c_[0].inv());
  Cyclo conj = conjugate_product(*this);
  Cyclo n = *this * conj;
  if (!n.is_rational()) throw Error(ErrorKind::InvalidArgument, "norm did not land in Q(p)");
  Scalar ni = n.c_[0].inv();
  for (auto& s : conj.c_) s *= ni;
  return conj;
}

Cyclo operator/(const Cyclo& a, const Cyclo& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (b.order_ == 1) {
    Cyclo r = a;
    for (auto& s : r.c_) s /= b.c_[0];
    return r;
  }
  Cyclo conj = conjugate_product(b);
  Cyclo n = b * conj;
  Cyclo num = a * conj;
  if (!n.is_rational()) throw Error(ErrorKind::InvalidArgument, "norm did not land in Q(p)");
  for (auto& s : num.c_) s /= n.c_[0];
  return num;
}

std::optional<std::uint64_t> Cyclo::eval_mod(std::uint64_t t, std::uint64_t prime, std::uint64_t omega) const {
  unsigned __int128 acc = 0, w = 1;
  for (const auto& s : c_) {
    if (!s.is_zero()) {
      auto v = s.eval_mod(t, prime);
      if (!v) return std::nullopt;
      acc = (acc + static_cast<unsigned __int128>(*v) * w) % prime;
    }
    w = w * omega % prime;
  }
  return static_cast<std::uint64_t>(acc);
}

std::string Cyclo::to_string() const {
  if (order_ == 1) return c_[0].to_string();
  std::string out;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    if (!out.empty()) out += "+";
    out += "(" + c_[j].to_string() + ")";
    if (j > 0) out += "*w" + std::to_string(order_) + (j > 1 ? "^" + std::to_string(j) : "");
  }
  return out;
}

}  // namespace qfodc
