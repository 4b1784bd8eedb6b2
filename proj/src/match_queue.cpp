#include "match_queue.hpp"

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace pmatch {

MatchQueue::MatchQueue(u64 prime, u64 diff, u64 r_pow_diff, std::size_t segment_budget)
    : p_(prime), diff_(diff), r_pow_diff_(r_pow_diff), budget_(segment_budget) {
  if (diff == 0) throw UsageError("match queue difference must be positive");
}

void MatchQueue::push(u64 pos, u64 fp) {
  if (!segments_.empty()) {
    Segment& tail = segments_.back();
    const u64 last = tail.start + (tail.count - 1) * diff_;
    if (pos <= last) {
      throw UsageError("match queue positions must increase (" + std::to_string(pos) +
                       " after " + std::to_string(last) + ")");
    }
    if (pos == last + diff_) {
      if (tail.count == 1) {
        const u64 delta = sub_mod(fp, tail.head_fp, p_);
        tail.head_delta = delta;
        tail.tail_fp = fp;
        tail.tail_delta = mul_mod(delta, r_pow_diff_, p_);
        tail.count = 2;
        return;
      }
      if (add_mod(tail.tail_fp, tail.tail_delta, p_) == fp) {
        tail.tail_fp = fp;
        tail.tail_delta = mul_mod(tail.tail_delta, r_pow_diff_, p_);
        ++tail.count;
        return;
      }
    }
  }
  segments_.push_back({pos, 1, fp, 0, fp, 0});
  max_segments_ = std::max(max_segments_, segments_.size());
  if (segments_.size() > budget_) {
    throw StructuralViolation("match queue holds " + std::to_string(segments_.size()) +
                              " segments, budget " + std::to_string(budget_));
  }
}

std::optional<QueuedMatch> MatchQueue::pop() {
  if (segments_.empty()) return std::nullopt;
  Segment& head = segments_.front();
  QueuedMatch out{head.start, head.head_fp};
  if (head.count == 1) {
    segments_.pop_front();
  } else {
    head.start += diff_;
    head.head_fp = add_mod(head.head_fp, head.head_delta, p_);
    head.head_delta = mul_mod(head.head_delta, r_pow_diff_, p_);
    --head.count;
  }
  return out;
}

}  // namespace pmatch
