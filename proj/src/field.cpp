#include "field.hpp"

#include <random>
#include <string>

#include "errors.hpp"

namespace pmatch {

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned k = 1; k < s; ++k) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 largest_prime_below_pow2(unsigned bits) {
  u64 n = (u64{1} << bits) - 1;
  while (!is_prime_u64(n)) --n;
  return n;
}

FieldContext::FieldContext(u64 p, u64 r) : p_(p), r_(r), r_inv_(pow_mod(r, p - 2, p)) {}

FieldContext FieldContext::create(unsigned prime_bits, u64 seed) {
  if (prime_bits < kMinPrimeBits || prime_bits > kMaxPrimeBits) {
    throw ConfigError("prime width must be in [" + std::to_string(kMinPrimeBits) + ", " +
                      std::to_string(kMaxPrimeBits) + "] bits, got " +
                      std::to_string(prime_bits));
  }
  u64 p = largest_prime_below_pow2(prime_bits);
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<u64> dist(1, p - 1);
  return FieldContext(p, dist(gen));
}

FieldContext FieldContext::with_params(u64 p, u64 r) {
  if (p >= (u64{1} << 63) || !is_prime_u64(p)) throw ConfigError("modulus must be a prime below 2^63");
  if (r == 0 || r >= p) throw ConfigError("base must lie in [1, p-1]");
  return FieldContext(p, r);
}

Fingerprint fp_of_sequence(const FieldContext& ctx, std::span<const u64> s) {
  u64 value = 0;
  u64 pw = 1;
  for (u64 v : s) {
    value = ctx.add(value, ctx.mul(ctx.reduce(v), pw));
    pw = ctx.mul(pw, ctx.base());
  }
  return {value, s.size()};
}

Fingerprint fp_append(const FieldContext& ctx, Fingerprint fp, u64 v, u64 i) {
  if (ctx.clock() != i || fp.len != i) {
    throw UsageError("fp_append: power state at " + std::to_string(ctx.clock()) +
                     ", fingerprint length " + std::to_string(fp.len) + ", index " +
                     std::to_string(i));
  }
  return {ctx.add(fp.value, ctx.mul(ctx.reduce(v), ctx.r_pow())), fp.len + 1};
}

Fingerprint fp_split(const FieldContext& ctx, Fingerprint fp_b, Fingerprint fp_a,
                     u64 r_neg_pow) {
  if (fp_a.len >= fp_b.len) throw UsageError("fp_split: split must leave a non-empty suffix");
  return {ctx.mul(ctx.sub(fp_b.value, fp_a.value), r_neg_pow), fp_b.len - fp_a.len};
}

Fingerprint fp_zero(const FieldContext& ctx, Fingerprint fp, std::span<const ZeroEntry> zeros,
                    u64 base) {
  if (zeros.empty()) return fp;
  const u64 shift = ctx.pow_r_inv(base);
  u64 value = fp.value;
  for (const ZeroEntry& z : zeros) {
    if (z.position < base || z.position - base >= fp.len) {
      throw UsageError("fp_zero: position " + std::to_string(z.position) + " outside span");
    }
    value = ctx.sub(value, ctx.mul(ctx.mul(ctx.reduce(z.symbol_value), z.r_pow), shift));
  }
  return {value, fp.len};
}

}  // namespace pmatch
