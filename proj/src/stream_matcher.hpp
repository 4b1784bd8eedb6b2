#pragma once

// Streaming parameterized matcher with sublinear working memory.
//
// Patterns with a large p-period are matched by the randomized engine:
// a deterministic sub-matcher finds P_0, fingerprint checks extend matches
// up a ladder of doubling prefixes P_1 .. P_s (each check spread over a few
// arrivals), and the final 4*delta symbols are compared explicitly. Every
// other pattern is handed to DetMatcher wholesale.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>

#include "det_matcher.hpp"
#include "field.hpp"
#include "pattern_analysis.hpp"

namespace pmatch {

enum class MatchMode { kAuto, kDeterministic, kRandomized };

struct StreamConfig {
  unsigned prime_bits = 61;
  u64 seed = 1;
  MatchMode mode = MatchMode::kAuto;
  // Track peak live words every arrival (O(s) extra per arrival).
  bool track_words = false;
  // Overrides prime_bits/seed when set; used by tests that need a tiny field.
  std::optional<std::pair<u64, u64>> explicit_field;
};

struct StreamStats {
  u64 arrivals = 0;
  u64 max_ops = 0;  // field multiplications + buffer touches in one arrival
  u64 total_ops = 0;
  std::size_t peak_words = 0;
  u64 max_b = 0;         // pending long-gap buffer, in-flight element included
  u64 max_d = 0;         // longest zeroing-candidate queue over all levels
  std::size_t max_segments = 0;  // most segments in any match queue
  u64 structural_violations = 0;
  DetStats det;  // the full-pattern matcher, or the P_0 sub-matcher
};

// Test hooks; all optional.
struct StreamHooks {
  std::function<void(u64 pos)> on_p0_match;
  // Level l finished checking candidate `pos`: phi_hat is the computed
  // window fingerprint of pred(T[pos .. pos+m_l-1])[m_{l-1} ..].
  std::function<void(unsigned level, u64 pos, u64 phi_hat, bool matched)> on_level_check;
  std::function<void(u64 pos)> on_tail_candidate;
};

class RandomizedEngine;

class StreamMatcher {
 public:
  // Throws ConfigError on an unusable configuration (prime too small for the
  // alphabet or pattern, forced randomized mode on an ineligible pattern,
  // pattern symbol outside the alphabet).
  StreamMatcher(std::span<const u64> pattern, u64 sigma, const StreamConfig& config = {});
  ~StreamMatcher();
  StreamMatcher(StreamMatcher&&) noexcept;
  StreamMatcher& operator=(StreamMatcher&&) noexcept;

  // True iff the last m arrivals p-match the pattern. Throws AlphabetError
  // or StructuralViolation.
  bool step(u64 symbol);

  bool randomized() const { return engine_ != nullptr; }
  u64 pattern_length() const { return ladder_.m; }
  u64 sigma() const { return ladder_.sigma; }
  const PrefixLadder& ladder() const { return ladder_; }
  const FieldContext& field() const;
  StreamStats stats() const;
  std::size_t live_words() const;
  void set_hooks(StreamHooks hooks);

  // Running prefix fingerprint phi(pred(T[0..i])) after the last arrival
  // (randomized engine only).
  u64 prefix_fingerprint() const;

 private:
  PrefixLadder ladder_;
  std::unique_ptr<DetMatcher> det_;
  std::unique_ptr<RandomizedEngine> engine_;
  FieldContext field_;
  bool track_words_ = false;
};

}  // namespace pmatch
