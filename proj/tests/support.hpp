#pragma once

// Instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace testsupport {

using u64 = std::uint64_t;
using Rng = std::mt19937_64;

inline u64 uniform(Rng& rng, u64 lo, u64 hi) {
  return std::uniform_int_distribution<u64>(lo, hi)(rng);
}

inline std::vector<u64> random_string(Rng& rng, u64 len, u64 sigma) {
  std::vector<u64> out(len);
  for (auto& v : out) v = uniform(rng, 0, sigma - 1);
  return out;
}

// s under a random permutation of {0..sigma-1}.
inline std::vector<u64> relabel(Rng& rng, std::span<const u64> s, u64 sigma) {
  std::vector<u64> perm(sigma);
  std::iota(perm.begin(), perm.end(), u64{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<u64> out;
  out.reserve(s.size());
  for (u64 v : s) out.push_back(perm[v]);
  return out;
}

// Overwrites `count` random windows of text with relabelled copies of pattern.
inline void plant(Rng& rng, std::vector<u64>& text, std::span<const u64> pattern, u64 sigma,
                  u64 count) {
  if (pattern.size() > text.size()) return;
  for (u64 c = 0; c < count; ++c) {
    const u64 at = uniform(rng, 0, text.size() - pattern.size());
    const auto copy = relabel(rng, pattern, sigma);
    std::copy(copy.begin(), copy.end(), text.begin() + static_cast<std::ptrdiff_t>(at));
  }
}

// A random block of length q repeated to length len.
inline std::vector<u64> periodic(Rng& rng, u64 len, u64 q, u64 sigma) {
  const auto block = random_string(rng, q, sigma);
  std::vector<u64> out(len);
  for (u64 i = 0; i < len; ++i) out[i] = block[i % q];
  return out;
}

// Feeds text through anything with `bool step(u64)`; returns window starts.
template <typename Matcher>
std::vector<u64> run_starts(Matcher& matcher, std::span<const u64> text, u64 m) {
  std::vector<u64> out;
  for (u64 i = 0; i < text.size(); ++i) {
    if (matcher.step(text[i])) out.push_back(i + 1 - m);
  }
  return out;
}

}  // namespace testsupport

namespace testsupport {

// Mostly symbols 0 and 1; symbols 2..sigma-1 appear with total rate `rare`,
// so their predecessor distances are long and cross prefix boundaries.
inline std::vector<u64> skewed_string(Rng& rng, u64 len, u64 sigma, double rare) {
  std::bernoulli_distribution pick_rare(sigma > 2 ? rare : 0.0);
  std::vector<u64> out(len);
  for (auto& v : out) {
    v = pick_rare(rng) ? uniform(rng, 2, sigma - 1) : uniform(rng, 0, std::min<u64>(sigma, 2) - 1);
  }
  return out;
}

}  // namespace testsupport
