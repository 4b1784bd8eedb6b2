#include "pattern_analysis.hpp"

#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "predecessor.hpp"

namespace pmatch {

namespace {

PredValue as_global(u64 pred) { return pred == 0 ? PredValue::never() : PredValue::of(pred); }

}  // namespace

PrefixPeriods compute_prefix_pperiods(std::span<const u64> pattern) {
  const u64 m = pattern.size();
  if (m == 0) throw UsageError("pattern must be non-empty");
  const std::vector<u64> pred = pred_string(pattern);

  // border[len] = longest proper p-border of P[0..len-1].
  std::vector<u64> border(m + 1, 0);
  u64 k = 0;
  for (u64 j = 1; j < m; ++j) {
    while (k > 0 && !pmatch_compare(pred[k], as_global(pred[j]), k)) k = border[k];
    if (pmatch_compare(pred[k], as_global(pred[j]), k)) ++k;
    border[j + 1] = k;
  }
  std::vector<u64> periods(m);
  for (u64 len = 1; len <= m; ++len) periods[len - 1] = len - border[len];
  return PrefixPeriods(std::move(periods));
}

u64 CompressedPred::access(u64 i) const {
  if (i >= m_) throw UsageError("pred_access: index " + std::to_string(i) + " out of range");
  return at(i);
}

CompressedPred build_compressed_pred(std::span<const u64> pattern, u64 rho) {
  const u64 m = pattern.size();
  if (rho == 0 || rho > m) throw UsageError("build_compressed_pred: bad period");
  const std::vector<u64> pred = pred_string(pattern);
  std::vector<u64> first_k(rho), value(rho, 0);
  for (u64 j = 0; j < rho; ++j) {
    u64 k = 0;
    while (j + k * rho < m && pred[j + k * rho] == 0) ++k;
    first_k[j] = k;
    if (j + k * rho < m) value[j] = pred[j + k * rho];
    for (u64 t = k; j + t * rho < m; ++t) {
      if (pred[j + t * rho] != value[j]) {
        throw std::logic_error("residue column " + std::to_string(j) +
                               " is not zeros-then-constant under period " +
                               std::to_string(rho));
      }
    }
  }
  return CompressedPred(m, rho, std::move(first_k), std::move(value));
}

RunLengthPeriodTable run_length_encode(const PrefixPeriods& periods) {
  RunLengthPeriodTable runs;
  for (u64 len = 1; len <= periods.size(); ++len) {
    const u64 q = periods.of(len);
    if (!runs.empty() && runs.back().period == q) {
      runs.back().hi = len;
    } else {
      runs.push_back({q, len, len});
    }
  }
  return runs;
}

FirstOccurrenceList first_occurrences(std::span<const u64> pattern) {
  const std::vector<u64> pred = pred_string(pattern);
  FirstOccurrenceList out;
  for (u64 j = 0; j < pred.size(); ++j) {
    if (pred[j] == 0) out.push_back(j);
  }
  return out;
}

DetProfile make_det_profile(std::span<const u64> pattern) {
  const PrefixPeriods periods = compute_prefix_pperiods(pattern);
  DetProfile profile;
  profile.m = pattern.size();
  profile.runs = run_length_encode(periods);
  profile.pred = build_compressed_pred(pattern, periods.of(pattern.size()));
  profile.firsts = first_occurrences(pattern);
  return profile;
}

u64 ceil_log2(u64 m) {
  u64 bits = 0;
  while ((u64{1} << bits) < m) ++bits;
  return bits;
}

LadderBuild build_ladder(std::span<const u64> pattern, u64 sigma, const FieldContext& ctx) {
  const u64 m = pattern.size();
  const PrefixPeriods periods = compute_prefix_pperiods(pattern);

  LadderBuild out;
  out.runs = run_length_encode(periods);
  out.firsts = first_occurrences(pattern);

  PrefixLadder& ladder = out.ladder;
  ladder.m = m;
  ladder.sigma = sigma;
  ladder.delta = sigma * ceil_log2(m);
  ladder.rho = periods.of(m);
  const u64 delta = ladder.delta;

  if (delta == 0 || m <= 14 * delta || ladder.rho <= 3 * delta) return out;

  u64 m0 = 1;
  while (periods.of(m0) <= 3 * delta) ++m0;
  const u64 ms = m - 4 * delta;
  // A P_0 that leaves less than 3*delta before P_s cannot be scheduled.
  if (m0 + 3 * delta > ms) return out;

  ladder.lengths.push_back(m0);
  while (2 * (2 * ladder.lengths.back()) <= m) ladder.lengths.push_back(2 * ladder.lengths.back());
  ladder.lengths.push_back(ms);
  ladder.mode = LadderMode::kRandomized;

  const std::vector<u64> pred = pred_string(pattern);
  PatternFingerprints& fps = out.fingerprints;
  const std::span<const u64> pred_span(pred);
  for (u64 l = 1; l < ladder.lengths.size(); ++l) {
    const u64 lo = ladder.lengths[l - 1];
    const u64 hi = ladder.lengths[l];
    fps.targets.push_back(fp_of_sequence(ctx, pred_span.subspan(lo, hi - lo)).value);
  }
  fps.last_pred_p0 = pred[m0 - 1];
  fps.tail.assign(pred.begin() + static_cast<std::ptrdiff_t>(ms), pred.end());
  return out;
}

}  // namespace pmatch
