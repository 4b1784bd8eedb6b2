#include "stream_matcher.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "errors.hpp"
#include "match_queue.hpp"
#include "predecessor.hpp"

namespace pmatch {

namespace {

// Circular history of the most recent `capacity` per-position values.
template <typename T>
class History {
 public:
  explicit History(std::size_t capacity) : slots_(capacity) {}
  void put(u64 index, T value) { slots_[index % slots_.size()] = value; }
  T get(u64 index) const { return slots_[index % slots_.size()]; }
  std::size_t capacity() const { return slots_.size(); }

 private:
  std::vector<T> slots_;
};

struct LongGap {
  u64 pos;
  u64 pred;
  u64 r_pow;  // r^pos
};

struct ZeroCandidate {
  u64 seq;
  u64 pos;
  u64 pred;
  u64 r_pow;
};

constexpr std::size_t kScanBatch = 13;
constexpr unsigned kTailComparisonsPerArrival = 5;

}  // namespace

class RandomizedEngine {
 public:
  RandomizedEngine(std::span<const u64> pattern, u64 sigma, const LadderBuild& build,
                   const FieldContext& ctx, const PrefixPeriods& periods);

  bool step(u64 symbol);

  const FieldContext& field() const { return ctx_; }
  u64 prefix_fingerprint() const { return phi_; }
  StreamStats stats() const;
  std::size_t live_words() const;
  void set_hooks(StreamHooks hooks) { hooks_ = std::move(hooks); }
  void track_words(bool on) {
    track_words_ = on;
    sub_.track_words(on);
  }

 private:
  enum class Phase { kIdle, kWaiting, kScanning };

  struct Level {
    Phase phase = Phase::kIdle;
    u64 pos = 0;        // candidate i'
    u64 fp_prev = 0;    // Phi_{l-1}(i')
    u64 fp_cur = 0;     // Phi_l(i')
    u64 acc = 0;        // running phi_hat
    u64 scale = 0;      // r^-(i' + m_{l-1})
    u64 scan_seq = 0;
  };

  struct ZeroQueue {
    std::deque<ZeroCandidate> entries;
    u64 next_seq = 0;
    bool evicted_any = false;
    u64 last_evicted_pos = 0;
  };

  [[noreturn]] void violation(const std::string& what);
  void process_a(PredValue g);
  void process_bdelta(PredValue g);
  void process_bphi(unsigned level);
  bool process_c();
  bool delivered_through(u64 pos, unsigned level) const;

  FieldContext ctx_;
  u64 m_;
  u64 sigma_;
  u64 delta_;
  std::vector<u64> len_;       // m_0 .. m_s
  std::vector<u64> target_;    // target_[l] for l in [1, s]; target_[0] unused
  std::vector<u64> gap_pow_;   // r^(m_l - 1 - m_{l-1}) for l in [1, s]
  u64 last_pred_p0_;
  std::vector<u64> tail_;      // pred(P)[m-4delta .. m-1]
  unsigned s_;

  LastOccurrence tracker_;
  DetMatcher sub_;
  bool prev_sub_match_ = false;

  u64 clock_ = 0;
  u64 phi_ = 0;
  History<u64> phi_hist_;
  History<u64> rneg_hist_;
  History<PredValue> pred_hist_;

  std::deque<LongGap> buffer_;
  std::optional<LongGap> in_flight_;
  unsigned in_flight_level_ = 0;
  std::vector<ZeroQueue> zero_;  // index l in [1, s]
  std::vector<MatchQueue> queues_;  // M_0 .. M_s
  std::vector<Level> levels_;       // index l in [1, s]

  bool tail_active_ = false;
  u64 tail_pos_ = 0;
  u64 tail_k_ = 0;

  u64 ops_ = 0;
  StreamStats stats_;
  StreamHooks hooks_;
  bool track_words_ = false;
};

RandomizedEngine::RandomizedEngine(std::span<const u64> pattern, u64 sigma,
                                   const LadderBuild& build, const FieldContext& ctx,
                                   const PrefixPeriods& periods)
    : ctx_(ctx),
      m_(build.ladder.m),
      sigma_(sigma),
      delta_(build.ladder.delta),
      len_(build.ladder.lengths),
      last_pred_p0_(build.fingerprints.last_pred_p0),
      tail_(build.fingerprints.tail),
      s_(static_cast<unsigned>(build.ladder.s())),
      tracker_(sigma),
      sub_(make_det_profile(pattern.subspan(0, build.ladder.m0() - 1)), 0),
      phi_hist_(4 * build.ladder.delta),
      rneg_hist_(4 * build.ladder.delta),
      pred_hist_(4 * build.ladder.delta),
      zero_(s_ + 1),
      levels_(s_ + 1) {
  ctx_.reset_clock();
  target_.push_back(0);
  gap_pow_.push_back(0);
  for (unsigned l = 1; l <= s_; ++l) {
    target_.push_back(build.fingerprints.targets[l - 1]);
    gap_pow_.push_back(ctx_.pow_r(len_[l] - 1 - len_[l - 1]));
  }
  const std::size_t budget = 6 * sigma_ + 2;
  for (unsigned l = 0; l <= s_; ++l) {
    const u64 diff = periods.of(len_[l]);
    queues_.emplace_back(ctx_.prime(), diff, ctx_.pow_r(diff), budget);
  }
}

void RandomizedEngine::violation(const std::string& what) {
  ++stats_.structural_violations;
  throw StructuralViolation(what + " at arrival " + std::to_string(clock_));
}

bool RandomizedEngine::step(u64 symbol) {
  const u64 i = clock_;
  ops_ = 0;
  const PredValue g = tracker_.step(symbol, i);
  ops_ += 2;

  phi_ = ctx_.add(phi_, ctx_.mul(ctx_.reduce(g.rendered()), ctx_.r_pow()));
  phi_hist_.put(i, phi_);
  rneg_hist_.put(i, ctx_.r_neg_pow());
  pred_hist_.put(i, g);
  ops_ += 4;

  process_a(g);
  process_bdelta(g);
  process_bphi(1 + static_cast<unsigned>(i % s_));
  const bool matched = process_c();

  ctx_.advance();
  ops_ += 2;
  ++clock_;

  ++stats_.arrivals;
  stats_.total_ops += ops_;
  stats_.max_ops = std::max(stats_.max_ops, ops_);
  if (track_words_) stats_.peak_words = std::max(stats_.peak_words, live_words());
  return matched;
}

void RandomizedEngine::process_a(PredValue g) {
  const u64 i = clock_;
  const u64 m0 = len_[0];
  if (prev_sub_match_) {
    ++ops_;
    if (pmatch_compare(last_pred_p0_, g, m0 - 1)) {
      queues_[0].push(i - m0 + 1, phi_);
      ops_ += 2;
      if (hooks_.on_p0_match) hooks_.on_p0_match(i - m0 + 1);
    }
  }
  prev_sub_match_ = sub_.step_pred(g);
  ops_ += sub_.last_steps();
}

void RandomizedEngine::process_bdelta(PredValue g) {
  const u64 i = clock_;
  if (!g.is_never() && g.distance > len_[0]) {
    buffer_.push_back({i, g.distance, ctx_.r_pow()});
    ops_ += 3;
    const u64 held = buffer_.size() + (in_flight_ ? 1 : 0);
    stats_.max_b = std::max(stats_.max_b, held);
    if (held > sigma_) {
      violation("long-gap buffer holds " + std::to_string(held) + " > |Sigma| = " +
                std::to_string(sigma_));
    }
  }
  if (!in_flight_ && !buffer_.empty()) {
    in_flight_ = buffer_.front();
    buffer_.pop_front();
    in_flight_level_ = 1;
    ops_ += 3;
  }
  if (!in_flight_) return;

  const unsigned l = in_flight_level_;
  ++ops_;
  if (in_flight_->pred > len_[l - 1]) {
    ZeroQueue& zq = zero_[l];
    zq.entries.push_back({zq.next_seq++, in_flight_->pos, in_flight_->pred, in_flight_->r_pow});
    ops_ += 4;
    if (zq.entries.size() > 12 * sigma_) {
      zq.evicted_any = true;
      zq.last_evicted_pos = zq.entries.front().pos;
      zq.entries.pop_front();
      ++ops_;
    }
    stats_.max_d = std::max<u64>(stats_.max_d, zq.entries.size());
  }
  // Thresholds grow with l, so a miss here is a miss for every later level.
  if (in_flight_->pred <= len_[l - 1] || ++in_flight_level_ > s_) in_flight_.reset();
}

bool RandomizedEngine::delivered_through(u64 pos, unsigned level) const {
  if (in_flight_ && in_flight_->pos <= pos && in_flight_level_ <= level &&
      in_flight_->pred > len_[level - 1]) {
    return false;
  }
  return buffer_.empty() || buffer_.front().pos > pos;
}

void RandomizedEngine::process_bphi(unsigned l) {
  const u64 i = clock_;
  Level& lv = levels_[l];
  const u64 lo = len_[l - 1];
  const u64 hi = len_[l];

  if (lv.phase == Phase::kIdle) {
    auto next = queues_[l - 1].pop();
    ops_ += 2;
    if (!next) return;
    lv.phase = Phase::kWaiting;
    lv.pos = next->pos;
    lv.fp_prev = next->fp;
  }

  if (lv.phase == Phase::kWaiting) {
    if (i <= lv.pos + hi + delta_) return;
    const u64 end = lv.pos + hi - 1;
    if (i - end >= phi_hist_.capacity()) violation("level check started after history expired");
    if (!delivered_through(end, l)) violation("zeroing candidates not yet distributed");
    lv.fp_cur = phi_hist_.get(end);
    lv.scale = ctx_.mul(rneg_hist_.get(end), gap_pow_[l]);
    lv.acc = ctx_.mul(ctx_.sub(lv.fp_cur, lv.fp_prev), lv.scale);
    const ZeroQueue& zq = zero_[l];
    lv.scan_seq = zq.entries.empty() ? zq.next_seq : zq.entries.front().seq;
    lv.phase = Phase::kScanning;
    ops_ += 6;
    return;
  }

  // Scanning: zero the window-crossing positions, a batch per turn.
  ZeroQueue& zq = zero_[l];
  const u64 first = lv.pos + lo;
  const u64 last = lv.pos + hi - 1;
  if (zq.evicted_any && zq.last_evicted_pos >= first &&
      (zq.entries.empty() || zq.entries.front().seq > lv.scan_seq)) {
    violation("zeroing candidate evicted before use");
  }
  bool done = false;
  for (std::size_t batch = 0; batch < kScanBatch; ++batch) {
    const u64 front_seq = zq.entries.empty() ? zq.next_seq : zq.entries.front().seq;
    lv.scan_seq = std::max(lv.scan_seq, front_seq);
    if (lv.scan_seq >= zq.next_seq) {
      done = true;
      break;
    }
    const ZeroCandidate& e = zq.entries[lv.scan_seq - front_seq];
    ops_ += 2;
    if (e.pos > last) {
      done = true;
      break;
    }
    if (e.pos >= first && e.pred > e.pos - lv.pos) {
      lv.acc = ctx_.sub(lv.acc, ctx_.mul(ctx_.mul(ctx_.reduce(e.pred), e.r_pow), lv.scale));
      ops_ += 2;
    }
    ++lv.scan_seq;
  }
  if (!done && lv.scan_seq >= zq.next_seq) done = true;
  if (!done) return;

  const bool matched = lv.acc == target_[l];
  ++ops_;
  if (hooks_.on_level_check) hooks_.on_level_check(l, lv.pos, lv.acc, matched);
  if (matched) {
    if (i >= lv.pos + hi + 3 * delta_) violation("prefix match pushed after its deadline");
    queues_[l].push(lv.pos, lv.fp_cur);
    ops_ += 2;
    stats_.max_segments = std::max(stats_.max_segments, queues_[l].segments());
  }
  lv.phase = Phase::kIdle;
}

bool RandomizedEngine::process_c() {
  const u64 i = clock_;
  const u64 tail_start = m_ - 4 * delta_;
  if (!tail_active_) {
    auto next = queues_[s_].pop();
    ops_ += 2;
    if (!next) return false;
    tail_active_ = true;
    tail_pos_ = next->pos;
    tail_k_ = tail_start;
    if (hooks_.on_tail_candidate) hooks_.on_tail_candidate(tail_pos_);
  }
  for (unsigned budget = 0; budget < kTailComparisonsPerArrival && tail_k_ < m_; ++budget) {
    const u64 idx = tail_pos_ + tail_k_;
    if (idx > i) break;
    if (i - idx >= pred_hist_.capacity()) violation("tail check fell behind the history");
    ops_ += 2;
    if (!pmatch_compare(tail_[tail_k_ - tail_start], pred_hist_.get(idx), tail_k_)) {
      tail_active_ = false;
      return false;
    }
    ++tail_k_;
  }
  if (tail_k_ < m_) return false;
  tail_active_ = false;
  if (tail_pos_ + m_ - 1 != i) violation("full match confirmed late");
  return true;
}

StreamStats RandomizedEngine::stats() const {
  StreamStats out = stats_;
  out.det = sub_.stats();
  for (const auto& q : queues_) out.max_segments = std::max(out.max_segments, q.max_segments());
  return out;
}

std::size_t RandomizedEngine::live_words() const {
  // Pattern side and fixed scalars.
  std::size_t words = 12 + len_.size() + target_.size() + gap_pow_.size() + tail_.size();
  words += 2 * queues_.size();  // diff and r^diff per queue
  words += tracker_.live_words() + sub_.live_words();
  words += phi_hist_.capacity() + rneg_hist_.capacity() + pred_hist_.capacity();
  // Dynamic state.
  words += 3 * buffer_.size() + (in_flight_ ? 4 : 0);
  for (const auto& zq : zero_) words += 3 + 4 * zq.entries.size();
  for (const auto& q : queues_) words += q.live_words();
  words += 7 * levels_.size() + 3;
  return words;
}

// ---------------------------------------------------------------------------

StreamMatcher::StreamMatcher(std::span<const u64> pattern, u64 sigma, const StreamConfig& config)
    : field_(config.explicit_field
                 ? FieldContext::with_params(config.explicit_field->first,
                                             config.explicit_field->second)
                 : FieldContext::create(config.prime_bits, config.seed)),
      track_words_(config.track_words) {
  const u64 m = pattern.size();
  if (m == 0) throw ConfigError("pattern must be non-empty");
  if (sigma == 0) throw ConfigError("alphabet size must be positive");
  for (u64 j = 0; j < m; ++j) {
    if (pattern[j] >= sigma) {
      throw ConfigError("pattern symbol " + std::to_string(pattern[j]) + " at index " +
                        std::to_string(j) + " outside alphabet of size " + std::to_string(sigma));
    }
  }
  if (field_.prime() <= sigma) {
    throw ConfigError("prime " + std::to_string(field_.prime()) +
                      " must exceed the alphabet size " + std::to_string(sigma));
  }
  if (field_.prime() <= m) {
    throw ConfigError("prime " + std::to_string(field_.prime()) +
                      " must exceed the pattern length " + std::to_string(m));
  }

  const PrefixPeriods periods = compute_prefix_pperiods(pattern);
  LadderBuild build = build_ladder(pattern, sigma, field_);
  ladder_ = build.ladder;

  bool use_randomized = ladder_.mode == LadderMode::kRandomized;
  if (config.mode == MatchMode::kRandomized && !use_randomized) {
    throw ConfigError("pattern is not eligible for the randomized engine (m = " +
                      std::to_string(m) + ", p-period = " + std::to_string(ladder_.rho) +
                      ", delta = " + std::to_string(ladder_.delta) + ")");
  }
  if (config.mode == MatchMode::kDeterministic) use_randomized = false;

  if (use_randomized) {
    engine_ = std::make_unique<RandomizedEngine>(pattern, sigma, build, field_, periods);
    engine_->track_words(track_words_);
  } else {
    det_ = std::make_unique<DetMatcher>(make_det_profile(pattern), sigma);
    det_->track_words(track_words_);
  }
}

StreamMatcher::~StreamMatcher() = default;
StreamMatcher::StreamMatcher(StreamMatcher&&) noexcept = default;
StreamMatcher& StreamMatcher::operator=(StreamMatcher&&) noexcept = default;

bool StreamMatcher::step(u64 symbol) {
  return engine_ ? engine_->step(symbol) : det_->step(symbol);
}

const FieldContext& StreamMatcher::field() const { return engine_ ? engine_->field() : field_; }

StreamStats StreamMatcher::stats() const {
  if (engine_) return engine_->stats();
  StreamStats out;
  out.det = det_->stats();
  out.arrivals = out.det.arrivals;
  out.max_ops = out.det.max_steps;
  out.total_ops = out.det.total_steps;
  out.peak_words = out.det.peak_words;
  return out;
}

std::size_t StreamMatcher::live_words() const {
  return engine_ ? engine_->live_words() : det_->live_words();
}

void StreamMatcher::set_hooks(StreamHooks hooks) {
  if (engine_) engine_->set_hooks(std::move(hooks));
}

u64 StreamMatcher::prefix_fingerprint() const {
  if (!engine_) throw UsageError("prefix fingerprint exists only in randomized mode");
  return engine_->prefix_fingerprint();
}

}  // namespace pmatch
