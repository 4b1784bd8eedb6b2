#pragma once

// Rabin-Karp fingerprints over Z_p with splitting and zeroing.
//
// phi(S) = sum_k S[k] * r^k mod p. All arithmetic is single-word with a
// 128-bit intermediate, so any p < 2^63 is supported.

#include <cstdint>
#include <span>
#include <vector>

namespace pmatch {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}
inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 pow_mod(u64 base, u64 exp, u64 p);
bool is_prime_u64(u64 n);

// Largest prime strictly below 2^bits.
u64 largest_prime_below_pow2(unsigned bits);

struct Fingerprint {
  u64 value = 0;
  u64 len = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct ZeroEntry {
  u64 position;
  u64 symbol_value;
  u64 r_pow;  // r^position mod p
};

class FieldContext {
 public:
  static constexpr unsigned kMinPrimeBits = 16;
  static constexpr unsigned kMaxPrimeBits = 62;

  // Fixed prime of the requested width, r drawn from a PRNG seeded with
  // `seed`. Same (prime_bits, seed) always yields the same context.
  static FieldContext create(unsigned prime_bits, u64 seed);

  // Explicit modulus and base; p must be prime, r in [1, p-1].
  static FieldContext with_params(u64 p, u64 r);

  u64 prime() const { return p_; }
  u64 base() const { return r_; }
  u64 base_inv() const { return r_inv_; }

  u64 mul(u64 a, u64 b) const { return mul_mod(a, b, p_); }
  u64 add(u64 a, u64 b) const { return add_mod(a, b, p_); }
  u64 sub(u64 a, u64 b) const { return sub_mod(a, b, p_); }
  u64 reduce(u64 v) const { return v % p_; }
  u64 pow_r(u64 e) const { return pow_mod(r_, e, p_); }
  u64 pow_r_inv(u64 e) const { return pow_mod(r_inv_, e, p_); }

  // Monotone power state: r^clock and r^-clock.
  u64 clock() const { return clock_; }
  u64 r_pow() const { return r_pow_; }
  u64 r_neg_pow() const { return r_neg_pow_; }
  void advance() {
    r_pow_ = mul(r_pow_, r_);
    r_neg_pow_ = mul(r_neg_pow_, r_inv_);
    ++clock_;
  }
  void reset_clock() {
    clock_ = 0;
    r_pow_ = 1;
    r_neg_pow_ = 1;
  }

 private:
  FieldContext(u64 p, u64 r);

  u64 p_;
  u64 r_;
  u64 r_inv_;
  u64 clock_ = 0;
  u64 r_pow_ = 1;
  u64 r_neg_pow_ = 1;
};

Fingerprint fp_of_sequence(const FieldContext& ctx, std::span<const u64> s);

// Fingerprint of S[0..i] from that of S[0..i-1]; the context's power state
// must sit at i.
Fingerprint fp_append(const FieldContext& ctx, Fingerprint fp, u64 v, u64 i);

// phi(S[a+1..b]) from phi(S[0..b]), phi(S[0..a]) and r^-(a+1).
Fingerprint fp_split(const FieldContext& ctx, Fingerprint fp_b, Fingerprint fp_a,
                     u64 r_neg_pow);

// phi of the sequence with the listed positions set to zero. `base` is the
// absolute index of the fingerprint's first position.
Fingerprint fp_zero(const FieldContext& ctx, Fingerprint fp, std::span<const ZeroEntry> zeros,
                    u64 base);

}  // namespace pmatch
