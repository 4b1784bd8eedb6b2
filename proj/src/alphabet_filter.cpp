#include "alphabet_filter.hpp"

#include "errors.hpp"

namespace pmatch {

DensePattern densify_pattern(std::span<const u64> raw) {
  DensePattern out;
  std::unordered_map<u64, u64> codes;
  out.symbols.reserve(raw.size());
  for (u64 v : raw) {
    auto [it, fresh] = codes.try_emplace(v, codes.size());
    out.symbols.push_back(it->second);
  }
  out.alphabet = codes.size();
  return out;
}

AlphabetFilter::AlphabetFilter(u64 k, u64 m) : window_(m), slots_(k + 1) {
  if (k == 0) throw ConfigError("filter needs at least one pattern symbol");
  if (m == 0) throw ConfigError("filter window must be positive");
  free_.reserve(k + 1);
  for (u64 c = k + 1; c-- > 0;) free_.push_back(c);
  index_.reserve(k + 1);
}

void AlphabetFilter::unlink(u64 code) {
  Slot& s = slots_[code];
  if (s.prev != kNil) slots_[s.prev].next = s.next; else head_ = s.next;
  if (s.next != kNil) slots_[s.next].prev = s.prev; else tail_ = s.prev;
  s.prev = s.next = kNil;
}

void AlphabetFilter::append(u64 code) {
  Slot& s = slots_[code];
  s.prev = tail_;
  s.next = kNil;
  if (tail_ != kNil) slots_[tail_].next = code; else head_ = code;
  tail_ = code;
}

void AlphabetFilter::drop_head() {
  const u64 code = head_;
  index_.erase(slots_[code].raw);
  unlink(code);
  free_.push_back(code);
  --live_;
}

u64 AlphabetFilter::step(u64 raw) {
  const u64 t = clock_++;
  // Times are distinct, so at most one entry leaves the window per arrival.
  if (head_ != kNil && slots_[head_].time + window_ <= t) drop_head();

  if (auto it = index_.find(raw); it != index_.end()) {
    const u64 code = it->second;
    slots_[code].time = t;
    unlink(code);
    append(code);
    return code;
  }
  if (free_.empty()) drop_head();
  const u64 code = free_.back();
  free_.pop_back();
  slots_[code].raw = raw;
  slots_[code].time = t;
  append(code);
  index_.emplace(raw, code);
  ++live_;
  return code;
}

}  // namespace pmatch
