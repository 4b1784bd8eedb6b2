#pragma once

// FIFO of prefix-match positions with their prefix fingerprints, stored as
// explicit entries plus arithmetic progressions with common difference
// `diff`. Along a progression the appended predecessor block is the same
// every step, so consecutive fingerprints differ by a delta that is scaled
// by r^diff per element; a progression costs O(1) words however long it
// grows.

#include <cstdint>
#include <deque>
#include <optional>

#include "field.hpp"

namespace pmatch {

struct QueuedMatch {
  u64 pos;
  u64 fp;

  friend bool operator==(const QueuedMatch&, const QueuedMatch&) = default;
};

class MatchQueue {
 public:
  // r_pow_diff = r^diff mod p. Exceeding `segment_budget` segments throws
  // StructuralViolation.
  MatchQueue(u64 prime, u64 diff, u64 r_pow_diff, std::size_t segment_budget);

  // pos must exceed every stored position; fp is the prefix fingerprint
  // for pos. A push at last + diff joins the tail progression only if its
  // fingerprint agrees with the derived one.
  void push(u64 pos, u64 fp);
  std::optional<QueuedMatch> pop();

  bool empty() const { return segments_.empty(); }
  std::size_t segments() const { return segments_.size(); }
  std::size_t max_segments() const { return max_segments_; }
  u64 diff() const { return diff_; }
  std::size_t live_words() const { return kWordsPerSegment * segments_.size(); }

 private:
  struct Segment {
    u64 start;
    u64 count;
    u64 head_fp;
    u64 head_delta;
    u64 tail_fp;
    u64 tail_delta;
  };
  static constexpr std::size_t kWordsPerSegment = 6;

  u64 p_;
  u64 diff_;
  u64 r_pow_diff_;
  std::size_t budget_;
  std::size_t max_segments_ = 0;
  std::deque<Segment> segments_;
};

}  // namespace pmatch
