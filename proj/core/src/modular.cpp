#include "qfodc/modular.hpp"

#include <random>

#include "qfodc/error.hpp"

namespace qfodc {

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mod_mul(r, a, m);
    a = mod_mul(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m) {
  if (a % m == 0) throw Error(ErrorKind::DivisionByZero, "modular inverse of zero");
  return mod_pow(a, m - 2, m);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

constexpr std::uint64_t kLcm12 = 27720;

std::uint64_t find_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist((1ULL << 60) / kLcm12, (1ULL << 61) / kLcm12);
  while (true) {
    std::uint64_t cand = dist(rng) * kLcm12 + 1;
    if (is_prime_u64(cand)) return cand;
  }
}

std::uint64_t primitive_root_of_unity(std::uint64_t prime, int order, std::mt19937_64& rng) {
  if (order == 1) return 1;
  std::vector<int> factors;
  for (int f = 2, m = order; m > 1; ++f) {
    if (m % f == 0) {
      factors.push_back(f);
      while (m % f == 0) m /= f;
    }
  }
  std::uniform_int_distribution<std::uint64_t> dist(2, prime - 2);
  while (true) {
    std::uint64_t w = mod_pow(dist(rng), (prime - 1) / static_cast<std::uint64_t>(order), prime);
    bool primitive = w != 1;
    for (int f : factors)
      if (mod_pow(w, static_cast<std::uint64_t>(order / f), prime) == 1) primitive = false;
    if (primitive) return w;
  }
}

}  // namespace

ModularPoint::ModularPoint(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  prime_ = find_prime(rng);
  std::uniform_int_distribution<std::uint64_t> dist(2, prime_ - 2);
  t_ = dist(rng);
  for (int n = 1; n <= 12; ++n) omega_[n] = primitive_root_of_unity(prime_, n, rng);
}

std::uint64_t ModularPoint::omega(int order) const {
  auto it = omega_.find(order);
  if (it == omega_.end()) throw Error(ErrorKind::InvalidArgument, "character order above 12");
  return it->second;
}

ModRankProfile mod_rank_profile(const std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t prime) {
  ModRankProfile out;
  // Reduced basis rows, each normalized to 1 at its pivot column.
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::uint64_t> v = rows[r];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::size_t pc = out.pivot_cols[b];
      std::uint64_t c = v[pc];
      if (c == 0) continue;
      const auto& br = basis[b];
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (br[j] == 0) continue;
        v[j] = (v[j] + prime - mod_mul(c, br[j], prime)) % prime;
      }
    }
    std::size_t pc = v.size();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        pc = j;
        break;
      }
    if (pc == v.size()) continue;
    std::uint64_t inv = mod_inv(v[pc], prime);
    for (auto& x : v) x = mod_mul(x, inv, prime);
    // Keep the basis fully reduced on pivot columns.
    for (auto& br : basis) {
      std::uint64_t c = br[pc];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        br[j] = (br[j] + prime - mod_mul(c, v[j], prime)) % prime;
      }
    }
    basis.push_back(std::move(v));
    out.pivot_rows.push_back(r);
    out.pivot_cols.push_back(pc);
  }
  out.rank = basis.size();
  return out;
}

}  // namespace qfodc
