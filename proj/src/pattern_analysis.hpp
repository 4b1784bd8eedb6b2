#pragma once

// Pattern preprocessing: p-periods of every prefix, the compressed
// predecessor string, the run-length prefix-period table, and the prefix
// ladder P_0 ... P_s with its fingerprints.

#include <cstdint>
#include <span>
#include <vector>

#include "field.hpp"

namespace pmatch {

// rho_r for r in [1, m]: smallest shift under which P[0..r-1] p-matches
// itself.
class PrefixPeriods {
 public:
  explicit PrefixPeriods(std::vector<u64> periods) : periods_(std::move(periods)) {}

  u64 of(u64 len) const { return periods_.at(len - 1); }
  u64 size() const { return periods_.size(); }
  const std::vector<u64>& values() const { return periods_; }

 private:
  std::vector<u64> periods_;
};

PrefixPeriods compute_prefix_pperiods(std::span<const u64> pattern);

// pred(P)[j + k*rho] is 0 for k < k_j and c_j afterwards. O(rho) words.
class CompressedPred {
 public:
  CompressedPred() = default;
  CompressedPred(u64 m, u64 rho, std::vector<u64> first_k, std::vector<u64> value)
      : m_(m), rho_(rho), first_k_(std::move(first_k)), value_(std::move(value)) {}

  u64 size() const { return m_; }
  u64 period() const { return rho_; }
  u64 k(u64 residue) const { return first_k_[residue]; }
  u64 c(u64 residue) const { return value_[residue]; }

  u64 at(u64 i) const {
    const u64 j = i % rho_;
    return i / rho_ < first_k_[j] ? 0 : value_[j];
  }
  // Bounds-checked access; throws UsageError.
  u64 access(u64 i) const;

  std::size_t live_words() const { return 2 + first_k_.size() + value_.size(); }

 private:
  u64 m_ = 0;
  u64 rho_ = 1;
  std::vector<u64> first_k_;
  std::vector<u64> value_;
};

// Throws std::logic_error when some residue column is not zeros followed by
// one positive constant (which means rho is not a p-period of P).
CompressedPred build_compressed_pred(std::span<const u64> pattern, u64 rho);

inline u64 pred_access(const CompressedPred& cp, u64 i) { return cp.access(i); }

// Maximal interval [lo, hi] of prefix lengths sharing the p-period `period`.
struct PeriodRun {
  u64 period;
  u64 lo;
  u64 hi;
};

using RunLengthPeriodTable = std::vector<PeriodRun>;
RunLengthPeriodTable run_length_encode(const PrefixPeriods& periods);

// Ascending positions j with pred(P)[j] == 0.
using FirstOccurrenceList = std::vector<u64>;
FirstOccurrenceList first_occurrences(std::span<const u64> pattern);

// Everything the deterministic matcher keeps about its pattern; O(|Sigma| + rho)
// words.
struct DetProfile {
  u64 m = 0;
  RunLengthPeriodTable runs;
  CompressedPred pred;
  FirstOccurrenceList firsts;

  u64 period() const { return pred.period(); }
  std::size_t live_words() const { return 1 + 3 * runs.size() + pred.live_words() + firsts.size(); }
};

DetProfile make_det_profile(std::span<const u64> pattern);

enum class LadderMode { kRandomized, kDeterministic };

struct PrefixLadder {
  LadderMode mode = LadderMode::kDeterministic;
  u64 m = 0;
  u64 sigma = 0;
  u64 delta = 0;
  u64 rho = 0;  // p-period of the whole pattern
  // lengths[l] = m_l for l in [0, s]; empty in deterministic mode.
  std::vector<u64> lengths;

  u64 s() const { return lengths.empty() ? 0 : lengths.size() - 1; }
  u64 m0() const { return lengths.front(); }
};

struct PatternFingerprints {
  // targets[l-1] = phi(pred(P)[m_{l-1} .. m_l - 1]) for l in [1, s].
  std::vector<u64> targets;
  u64 last_pred_p0 = 0;      // pred(P)[m_0 - 1]
  std::vector<u64> tail;     // pred(P)[m - 4*delta .. m-1]
};

struct LadderBuild {
  PrefixLadder ladder;
  PatternFingerprints fingerprints;
  RunLengthPeriodTable runs;
  FirstOccurrenceList firsts;
};

u64 ceil_log2(u64 m);

LadderBuild build_ladder(std::span<const u64> pattern, u64 sigma, const FieldContext& ctx);

}  // namespace pmatch
