#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qfodc/cyclo.hpp"

namespace qfodc {

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m);
bool is_prime_u64(std::uint64_t n);

// A specialization p -> t, w_n -> omega_n into F_P used to pre-screen rank
// computations. P = 1 mod lcm(1..12) so every admissible character order has a
// primitive root in F_P.
class ModularPoint {
 public:
  explicit ModularPoint(std::uint64_t seed);

  std::uint64_t prime() const { return prime_; }
  std::uint64_t point() const { return t_; }
  std::uint64_t omega(int order) const;

  std::optional<std::uint64_t> reduce(const Scalar& s) const { return s.eval_mod(t_, prime_); }
  std::optional<std::uint64_t> reduce(const Cyclo& c) const { return c.eval_mod(t_, prime_, omega(c.order())); }

 private:
  std::uint64_t prime_ = 0;
  std::uint64_t t_ = 0;
  std::map<int, std::uint64_t> omega_;
};

struct ModRankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

// Greedy row basis: rows are scanned in order and kept when independent of
// the rows kept so far.
ModRankProfile mod_rank_profile(const std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t prime);

}  // namespace qfodc
