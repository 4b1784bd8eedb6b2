#include <doctest.h>

#include <string>
#include <vector>

#include "errors.hpp"
#include "oracle.hpp"
#include "pattern_analysis.hpp"
#include "predecessor.hpp"
#include "support.hpp"

using namespace pmatch;

namespace {

std::vector<u64> letters(const std::string& s) {
  std::vector<u64> out;
  for (char c : s) out.push_back(static_cast<u64>(c - 'a'));
  return out;
}

}  // namespace

TEST_CASE("prefix p-periods") {
  CHECK(compute_prefix_pperiods(letters("aabb")).values() == std::vector<u64>{1, 1, 2, 2});
  CHECK(compute_prefix_pperiods(std::vector<u64>(9, 0)).values() == std::vector<u64>(9, 1));
  CHECK(compute_prefix_pperiods(letters("ababab")).of(6) == 1);
}

TEST_CASE("prefix p-periods agree with brute force") {
  testsupport::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const u64 sigma = testsupport::uniform(rng, 1, 6);
    const u64 m = testsupport::uniform(rng, 1, 60);
    auto p = trial % 3 == 0 ? testsupport::periodic(rng, m, testsupport::uniform(rng, 1, 8), sigma)
                            : testsupport::random_string(rng, m, sigma);
    const PrefixPeriods per = compute_prefix_pperiods(p);
    for (u64 len = 1; len <= m; ++len) {
      REQUIRE(per.of(len) == oracle::naive_pperiod(std::span(p).subspan(0, len)));
    }
  }
}

TEST_CASE("compressed predecessor access") {
  const auto p = letters("ababab");
  const CompressedPred cp = build_compressed_pred(p, 1);
  CHECK(pred_access(cp, 1) == 0);
  CHECK(pred_access(cp, 4) == 2);
  CHECK(pred_access(cp, 0) == 0);
  CHECK_THROWS_AS(pred_access(cp, 6), UsageError);
  // pred("abaab") = 0,0,2,1,3: shift 1 is not a p-period.
  CHECK_THROWS_AS(build_compressed_pred(letters("abaab"), 1), std::logic_error);
}

TEST_CASE("compressed predecessor shape on random patterns") {
  testsupport::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const u64 sigma = testsupport::uniform(rng, 1, 8);
    const u64 m = testsupport::uniform(rng, 1, 120);
    auto p = trial % 2 ? testsupport::periodic(rng, m, testsupport::uniform(rng, 1, 12), sigma)
                       : testsupport::random_string(rng, m, sigma);
    const u64 rho = oracle::naive_pperiod(p);
    const CompressedPred cp = build_compressed_pred(p, rho);
    const auto pred = oracle::naive_pred(p);
    for (u64 i = 0; i < m; ++i) REQUIRE(pred_access(cp, i) == pred[i]);
    CHECK(cp.live_words() <= 2 * rho + 2);
  }
}

TEST_CASE("run-length period table and first occurrences") {
  const DetProfile prof = make_det_profile(letters("aabb"));
  REQUIRE(prof.runs.size() == 2);
  CHECK(prof.runs[0].period == 1);
  CHECK(prof.runs[0].lo == 1);
  CHECK(prof.runs[0].hi == 2);
  CHECK(prof.runs[1].period == 2);
  CHECK(prof.runs[1].lo == 3);
  CHECK(prof.runs[1].hi == 4);
  CHECK(prof.firsts == std::vector<u64>{0, 2});
}

TEST_CASE("run table has at most rho runs with increasing periods") {
  testsupport::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const u64 sigma = testsupport::uniform(rng, 1, 8);
    const auto p = testsupport::random_string(rng, testsupport::uniform(rng, 1, 600), sigma);
    const auto runs = run_length_encode(compute_prefix_pperiods(p));
    CHECK(runs.size() <= oracle::naive_pperiod(p));
    CHECK(runs.back().period == oracle::naive_pperiod(p));
    for (std::size_t k = 1; k < runs.size(); ++k) {
      REQUIRE(runs[k].lo == runs[k - 1].hi + 1);
      REQUIRE(runs[k].period > runs[k - 1].period);
    }
  }
}

TEST_CASE("ladder construction") {
  const auto ctx = FieldContext::create(61, 1);
  CHECK(build_ladder(std::vector<u64>(1000, 0), 4, ctx).ladder.mode == LadderMode::kDeterministic);

  testsupport::Rng rng(2);
  const auto small = testsupport::random_string(rng, 100, 8);
  const LadderBuild sb = build_ladder(small, 8, ctx);
  CHECK(sb.ladder.delta == 56);
  CHECK(sb.ladder.mode == LadderMode::kDeterministic);

  const u64 m = u64{1} << 17;
  const auto big = testsupport::random_string(rng, m, 2);
  const LadderBuild lb = build_ladder(big, 2, ctx);
  const PrefixLadder& lad = lb.ladder;
  REQUIRE(lad.mode == LadderMode::kRandomized);
  CHECK(lad.delta == 2 * 17);
  const PrefixPeriods per = compute_prefix_pperiods(big);
  CHECK(per.of(lad.m0()) > 3 * lad.delta);
  CHECK(per.of(lad.m0() - 1) <= 3 * lad.delta);
  CHECK(lad.lengths.back() == m - 4 * lad.delta);
  for (u64 l = 1; l + 1 < lad.lengths.size(); ++l) CHECK(lad.lengths[l] == 2 * lad.lengths[l - 1]);
  CHECK(lad.lengths[lad.s() - 1] * 2 <= m);
  CHECK(lad.lengths[lad.s() - 1] < lad.lengths.back());

  const auto pred = oracle::naive_pred(big);
  REQUIRE(lb.fingerprints.targets.size() == lad.s());
  for (u64 l = 1; l <= lad.s(); ++l) {
    const u64 lo = lad.lengths[l - 1];
    const u64 hi = lad.lengths[l];
    CHECK(lb.fingerprints.targets[l - 1] ==
          fp_of_sequence(ctx, std::span(pred).subspan(lo, hi - lo)).value);
  }
  CHECK(lb.fingerprints.last_pred_p0 == pred[lad.m0() - 1]);
  CHECK(lb.fingerprints.tail.size() == 4 * lad.delta);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(1000) == 10);
  CHECK(ceil_log2(1024) == 10);
}
