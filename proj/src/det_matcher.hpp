#pragma once

// Deterministic streaming parameterized matcher.
//
// Parameterized KMP over the run-length prefix-period table and the
// compressed predecessor string, so the pattern side costs O(|Sigma| + rho)
// words. Mismatch chains skip whole runs at once, and the per-arrival work
// is capped (Galil's deamortization): unfinished text goes into a FIFO and
// the arrival reports "no match". The backlog always drains by the time a
// match completes, so the output sequence is exact.

#include <cstdint>
#include <deque>
#include <optional>

#include "pattern_analysis.hpp"
#include "predecessor.hpp"

namespace pmatch {

struct DetStats {
  u64 arrivals = 0;
  u64 max_steps = 0;      // comparisons + run-cursor moves + shifts in one arrival
  u64 max_shifts = 0;     // pattern shifts in one arrival
  u64 max_pending = 0;    // peak FIFO length
  u64 total_steps = 0;
  u64 late_matches = 0;   // matches completed on a deferred symbol (must stay 0)
  std::size_t peak_words = 0;
};

class DetMatcher {
 public:
  static constexpr unsigned kStepsPerArrival = 8;
  static constexpr unsigned kShiftsPerArrival = 2;

  // sigma > 0 gives the matcher its own last-occurrence table so step() can
  // be used; sigma == 0 means predecessors are supplied via step_pred().
  DetMatcher(DetProfile profile, u64 sigma);

  bool step(u64 symbol);
  bool step_pred(PredValue global);

  u64 pattern_length() const { return profile_.m; }
  u64 matched_length() const { return r_; }
  std::size_t pending() const { return pending_.size(); }
  const DetStats& stats() const { return stats_; }
  const DetProfile& profile() const { return profile_; }
  std::size_t live_words() const;

  // Peak-words tracking costs O(1) per arrival but is off unless asked for.
  void track_words(bool on) { track_words_ = on; }
  // Elementary steps spent by the last arrival.
  unsigned last_steps() const { return last_steps_; }

 private:
  void shift_after_failure(PredValue global);
  void shift_from(u64 y, bool entry, u64 threshold);

  DetProfile profile_;
  std::optional<LastOccurrence> tracker_;
  u64 clock_ = 0;

  u64 r_ = 0;            // matched length == next pattern position to compare
  std::size_t run_ = 0;  // run holding length r_ (may trail after a shift)
  bool entry_ = true;    // r_ is the first candidate of its run in this chain
  bool failed_ = false;  // comparison at r_ against pending_.front() failed
  std::deque<PredValue> pending_;

  DetStats stats_;
  bool track_words_ = false;
  unsigned last_steps_ = 0;
};

}  // namespace pmatch
