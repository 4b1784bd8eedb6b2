#pragma once

// Predecessor strings: pred(S)[j] is the distance back to the previous
// occurrence of S[j], or 0 if there is none. Two equal-length strings
// parameterize-match iff their predecessor strings are equal.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace pmatch {

using u64 = std::uint64_t;

// Global predecessor distance of a text position. "Never seen" is an
// infinite distance internally and renders as 0.
struct PredValue {
  static constexpr u64 kNever = std::numeric_limits<u64>::max();

  u64 distance = kNever;

  static constexpr PredValue never() { return {}; }
  static constexpr PredValue of(u64 d) { return {d}; }
  constexpr bool is_never() const { return distance == kNever; }
  // 0 for never-seen, the distance otherwise.
  constexpr u64 rendered() const { return is_never() ? 0 : distance; }

  friend constexpr bool operator==(PredValue, PredValue) = default;
};

std::vector<u64> pred_string(std::span<const u64> s);

// Array-indexed last occurrence table over a dense alphabet {0..sigma-1}.
class LastOccurrence {
 public:
  explicit LastOccurrence(u64 sigma);

  // Global predecessor of symbol at absolute index i, then records i.
  // Throws AlphabetError when symbol >= sigma.
  PredValue step(u64 symbol, u64 i);

  u64 sigma() const { return table_.size(); }
  std::size_t live_words() const { return table_.size(); }

 private:
  static constexpr u64 kUnseen = std::numeric_limits<u64>::max();
  std::vector<u64> table_;
};

// Reinterprets a global predecessor for offset j of a window: kept when it
// points inside the window, else 0.
constexpr u64 window_relative(PredValue global, u64 j) {
  return (!global.is_never() && global.distance > 0 && global.distance <= j) ? global.distance : 0;
}

// Does the pattern position r (pred value pred_p) accept a text symbol with
// global predecessor `global` when r symbols are already matched?
constexpr bool pmatch_compare(u64 pred_p, PredValue global, u64 r) {
  return pred_p == window_relative(global, r);
}

}  // namespace pmatch
