#include <doctest.h>

#include <set>
#include <vector>

#include "alphabet_filter.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace pmatch;

TEST_CASE("codes are injective and reused") {
  AlphabetFilter f(2, 100);
  const u64 x = 1000, y = 77777;
  const u64 cx = f.step(x);
  const u64 cy = f.step(y);
  CHECK(cx != cy);
  CHECK(f.step(x) == cx);
  CHECK(f.code_count() == 3);
  CHECK_THROWS_AS(AlphabetFilter(0, 5), ConfigError);
  CHECK_THROWS_AS(AlphabetFilter(2, 0), ConfigError);
}

TEST_CASE("recency list of the worked example") {
  // Live symbols d, b, g, e last seen at 25, 33, 58, 102; capacity 4.
  const u64 d = 'd', b = 'b', g = 'g', e = 'e', x = 'x';
  AlphabetFilter f(3, 1000);
  std::vector<u64> stream(103);
  for (u64 t = 0; t <= 25; ++t) stream[t] = d;
  for (u64 t = 26; t <= 33; ++t) stream[t] = b;
  for (u64 t = 34; t <= 58; ++t) stream[t] = g;
  for (u64 t = 59; t <= 102; ++t) stream[t] = e;
  std::vector<u64> codes;
  for (u64 v : stream) codes.push_back(f.step(v));
  CHECK(f.live() == 4);
  // x is new at time 103: the oldest live symbol d gives up its code.
  const u64 cx = f.step(x);
  CHECK(cx == codes[25]);
  CHECK(f.live() == 4);
  // e arrives again: refreshed, same code.
  CHECK(f.step(e) == codes[102]);

  // A live symbol arriving at 103 moves to the recency tail: after b is
  // refreshed, the next two new symbols displace d and then g, not b.
  AlphabetFilter h(3, 1000);
  for (u64 v : stream) h.step(v);
  CHECK(h.step(b) == codes[33]);
  CHECK(h.step(x) == codes[25]);
  CHECK(h.step('y') == codes[58]);
  CHECK(h.step(b) == codes[33]);
}

TEST_CASE("window expiry frees codes") {
  AlphabetFilter f(1, 3);
  const u64 a = f.step(10);
  f.step(10);
  f.step(10);
  CHECK(f.live() == 1);
  f.step(20);  // 10 last seen at time 2, still inside the window
  CHECK(f.live() == 2);
  f.step(20);
  f.step(20);  // time 5: 10 last seen at 2 <= 5 - 3, expired
  CHECK(f.live() == 1);
  CHECK(a < f.code_count());
}

TEST_CASE("filtered windows keep their predecessor strings") {
  testsupport::Rng rng(31);
  u64 compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const u64 k = testsupport::uniform(rng, 1, 6);
    const u64 m = testsupport::uniform(rng, 1, 40);
    const u64 wide = testsupport::uniform(rng, k, 3 * k + 2);
    std::vector<u64> raw(300);
    for (auto& v : raw) v = (rng() % wide) * 0x9E3779B97F4A7C15ULL;
    AlphabetFilter f(k, m);
    std::vector<u64> out;
    for (u64 i = 0; i < raw.size(); ++i) {
      out.push_back(f.step(raw[i]));
      REQUIRE(out.back() <= k);
      if (i + 1 < m) continue;
      const auto rw = std::span<const u64>(raw).subspan(i + 1 - m, m);
      const auto fw = std::span<const u64>(out).subspan(i + 1 - m, m);
      const u64 distinct = oracle::distinct_count(rw);
      if (distinct <= k) {
        REQUIRE(oracle::naive_pred(fw) == oracle::naive_pred(rw));
        ++compared;
      } else {
        REQUIRE(oracle::distinct_count(fw) == k + 1);
      }
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("pattern densification") {
  const DensePattern d = densify_pattern(std::vector<u64>{500, 7, 7, 500, 9});
  CHECK(d.symbols == std::vector<u64>{0, 1, 1, 0, 2});
  CHECK(d.alphabet == 3);
}
