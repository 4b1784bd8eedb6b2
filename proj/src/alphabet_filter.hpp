#pragma once

// Online reduction from an arbitrary symbol alphabet to the dense codes
// {0 .. k}, k = number of distinct pattern symbols. A recency list keeps
// the at most k+1 most recent distinct symbols seen in the last m
// arrivals; each live symbol owns one code. Whenever the raw last-m window
// has at most k distinct symbols its filtered image has the same
// predecessor string; with more, the image has k+1 distinct codes and
// cannot p-match a pattern over k symbols.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace pmatch {

using u64 = std::uint64_t;

// Pattern relabelled by first appearance; alphabet = distinct count.
struct DensePattern {
  std::vector<u64> symbols;
  u64 alphabet = 0;
};

DensePattern densify_pattern(std::span<const u64> raw);

class AlphabetFilter {
 public:
  // Throws ConfigError unless k >= 1 and m >= 1.
  AlphabetFilter(u64 k, u64 m);

  // Code in [0, k] for the next arrival.
  u64 step(u64 raw);

  u64 code_count() const { return slots_.size(); }
  u64 live() const { return live_; }
  u64 clock() const { return clock_; }
  std::size_t live_words() const { return 4 * slots_.size() + 2 * index_.size() + 6; }

 private:
  static constexpr u64 kNil = ~u64{0};

  struct Slot {
    u64 raw = 0;
    u64 time = 0;
    u64 prev = kNil;  // toward older
    u64 next = kNil;  // toward newer
  };

  void unlink(u64 code);
  void append(u64 code);
  void drop_head();

  u64 window_;
  u64 clock_ = 0;
  u64 live_ = 0;
  u64 head_ = kNil;  // oldest
  u64 tail_ = kNil;  // newest
  std::vector<Slot> slots_;
  std::vector<u64> free_;
  std::unordered_map<u64, u64> index_;  // raw symbol -> code
};

}  // namespace pmatch
