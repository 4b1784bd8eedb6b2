#include "det_matcher.hpp"

#include <algorithm>

#include "errors.hpp"

namespace pmatch {

DetMatcher::DetMatcher(DetProfile profile, u64 sigma) : profile_(std::move(profile)) {
  if (profile_.m == 0) throw UsageError("empty pattern");
  if (sigma > 0) tracker_.emplace(sigma);
}

bool DetMatcher::step(u64 symbol) {
  if (!tracker_) throw UsageError("DetMatcher::step needs an alphabet size");
  return step_pred(tracker_->step(symbol, clock_));
}

std::size_t DetMatcher::live_words() const {
  return profile_.live_words() + (tracker_ ? tracker_->live_words() : 0) + pending_.size() + 6;
}

bool DetMatcher::step_pred(PredValue global) {
  ++clock_;
  pending_.push_back(global);
  const u64 m = profile_.m;
  const auto& runs = profile_.runs;
  unsigned steps = 0;
  unsigned shifts = 0;
  bool matched = false;

  while (!pending_.empty() && steps < kStepsPerArrival) {
    if (r_ >= 1 && runs[run_].lo > r_) {
      --run_;
      ++steps;
      continue;
    }
    if (r_ == m) {
      if (shifts == kShiftsPerArrival) break;
      shift_from(m, true, 0);
      ++shifts;
      ++steps;
      continue;
    }
    if (!failed_) {
      ++steps;
      if (r_ == 0 || pmatch_compare(profile_.pred.at(r_), pending_.front(), r_)) {
        ++r_;
        if (r_ == 1) {
          run_ = 0;
        } else if (r_ > runs[run_].hi) {
          ++run_;
        }
        entry_ = true;
        pending_.pop_front();
        if (r_ == m) {
          if (pending_.empty()) {
            matched = true;
          } else {
            ++stats_.late_matches;
          }
        }
        continue;
      }
      failed_ = true;
      continue;
    }
    if (shifts == kShiftsPerArrival) break;
    shift_after_failure(pending_.front());
    failed_ = false;
    ++shifts;
    ++steps;
  }

  ++stats_.arrivals;
  stats_.total_steps += steps;
  stats_.max_steps = std::max<u64>(stats_.max_steps, steps);
  stats_.max_shifts = std::max<u64>(stats_.max_shifts, shifts);
  stats_.max_pending = std::max<u64>(stats_.max_pending, pending_.size());
  if (track_words_) stats_.peak_words = std::max(stats_.peak_words, live_words());
  last_steps_ = steps;
  return matched;
}

// Chain elements inside one run with period q step down by q. Below an
// entry, the predecessor values along the chain are a constant v for
// positions >= v and 0 further down, so every element >= the threshold
// fails the same way and the next candidate is the first chain element
// below it.
void DetMatcher::shift_after_failure(PredValue global) {
  const u64 y = r_;
  if (entry_) {
    shift_from(y, true, 0);
    return;
  }
  const u64 v = profile_.pred.at(y);
  // v == 0 failing means the text predecessor g lies inside the window;
  // zero positions z then pass exactly when z < g.
  const u64 threshold = v != 0 ? v : global.distance;
  shift_from(y, false, threshold);
}

void DetMatcher::shift_from(u64 y, bool entry, u64 threshold) {
  const PeriodRun& run = profile_.runs[run_];
  const u64 q = run.period;
  u64 c;
  if (entry) {
    c = y - q;
  } else {
    const u64 t = std::max(threshold, run.lo);
    c = y - q * ((y - t + q) / q);
  }
  r_ = c;
  entry_ = c < run.lo;
}

}  // namespace pmatch
